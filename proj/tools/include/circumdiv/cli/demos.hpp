#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "circumdiv/circumradius.hpp"
#include "circumdiv/geom.hpp"
#include "circumdiv/json_io.hpp"
#include "circumdiv/kernel.hpp"

namespace circumdiv::cli {

/// Two unit segments along different axes under the L1 diversity: no pair
/// of translations brings their union below 2, while each has value 1.
struct L1Demo {
  PointSet a;
  PointSet b;
  double min_union_value = 0.0;
  double max_individual = 0.0;
  Point offset;
  bool violates_condition = false;
};

L1Demo demo_l1_counterexample(std::uint64_t seed);

struct AnchorEval {
  Point offset;
  double radius_k = 0.0;
  double radius_k_prime = 0.0;
  double value = 0.0;  // mean of the two radii
};

/// Average of two polygon circumradii that fails the union-translation
/// condition, so the average is not a circumradius for any kernel.
struct NonconvexDemo {
  PointSet a, b, b_prime;
  Kernel k, k_prime;
  double delta_a = 0.0;
  double delta_b = 0.0;
  double max_individual = 0.0;
  AnchorEval at_zero;
  AnchorEval at_shift;
  UnionSearchResult multistart;
  double grid_min = 0.0;
  Point grid_offset;
  /// Exact minimum over b from one LP in (b, lambda, x, lambda', x').
  double lp_min = 0.0;
  Point lp_offset;
  bool exceeds = false;  // multistart minimum > max_individual + 1e-6
};

NonconvexDemo demo_nonconvex(std::uint64_t seed);

struct FigureGroup {
  std::string name;
  PointSet points;
  Circumsolution solution;
};

/// Three point groups scaled against one triangle kernel.
struct FigureScene {
  Kernel kernel;
  std::vector<FigureGroup> groups;
};

FigureScene demo_figure(std::uint64_t seed);

json::Json to_json(const L1Demo& d);
json::Json to_json(const NonconvexDemo& d);
json::Json to_json(const FigureScene& s);

}  // namespace circumdiv::cli
