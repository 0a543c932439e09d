#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "circumdiv/geom.hpp"
#include "circumdiv/kernel.hpp"

namespace circumdiv {

/// Default seed for every randomized routine (ball shuffles, multistarts).
inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

struct SolveOptions {
  std::uint64_t seed = kDefaultSeed;
};

/// R(A, K) together with a center x such that A lies in radius * K + x.
///
/// When several centers are optimal the one returned is whatever the
/// underlying solver lands on; it is reproducible but not canonical.
struct Circumsolution {
  double radius = 0.0;
  Point center;
};

/// Generalized circumradius: the least lambda >= 0 such that a translate of
/// lambda * K contains A.
///
/// Dispatches on the kernel variant. Polytopes given by halfspaces are
/// solved by LP, the ball by move-to-front enclosing ball, parallelotopes
/// and both standard simplices in closed form, products as the max over
/// their factors, and affine images by pulling A back through the map.
/// Singletons and repeated points short-circuit to radius 0.
Circumsolution circumradius(const PointSet& a, const Kernel& k, const SolveOptions& opt = {});

/// The LP route for a halfspace description, usable for any polytope via
/// to_hpolytope(). Variables are (lambda, x).
Circumsolution circumradius_lp(const PointSet& a, const shape::HPolytope& h);

/// True iff every point of A lies in sol.radius * K + sol.center within tol.
bool covers(const Kernel& k, const Circumsolution& sol, const PointSet& a, double tol = 1e-7);

struct CoreSetResult {
  PointSet subset;
  std::vector<std::size_t> indices;
  double radius_ratio = 1.0;  // R(A,K) / R(A',K), 1 when both vanish
  double epsilon = 0.0;
  double full_radius = 0.0;
  double subset_radius = 0.0;
  std::size_t size_bound = 0;
};

/// ceil(d / (1 + eps)) + 1
std::size_t core_set_bound(std::size_t dim, double epsilon);
/// ceil(1 / (2 eps + eps^2)) + 1, independent of dimension; eps > 0.
std::size_t ball_core_set_bound(double epsilon);

/// Exhaustive search over subsets of size min(|A|, core_set_bound(d, eps))
/// for one maximizing R(A', K). Ties go to the lexicographically smallest
/// index list. Throws Error(budget_exceeded) beyond 10^6 subsets.
CoreSetResult core_set(const PointSet& a, const Kernel& k, double epsilon,
                       const SolveOptions& opt = {});

/// As core_set for the Euclidean ball of A's dimension, using the
/// dimension-free size bound.
CoreSetResult ball_core_set(const PointSet& a, double epsilon, const SolveOptions& opt = {});

struct UnionTranslation {
  Point a;
  Point b;
  double value = 0.0;  // R((A + a) u (B + b), K)
  double bound = 0.0;  // max(R(A,K), R(B,K))
};

/// Translations that move A and B into one copy of max(R(A,K), R(B,K)) * K.
/// Throws Error(internal) if the resulting value exceeds the bound by more
/// than 1e-6, which would indicate a solver defect.
UnionTranslation union_translation_witness(const PointSet& a, const PointSet& b, const Kernel& k,
                                           const SolveOptions& opt = {});

/// A set function on finite point sets, assumed translation invariant.
using DiversityOracle = std::function<double(const PointSet&)>;

DiversityOracle kernel_oracle(Kernel k, SolveOptions opt = {});

struct UnionSearchOptions {
  int starts = 5;
  int iterations = 200;
  std::uint64_t seed = kDefaultSeed;
};

struct UnionSearchResult {
  double value = 0.0;
  Point offset;  // the b achieving `value`
  int sweeps = 0;
};

/// Approximate min over b of delta(A u (B + b)) by coordinate-wise
/// golden-section descent from several starts.
///
/// The value is always attained at the returned offset, so it is a certified
/// upper bound on the minimum. It is exact for coordinate-separable oracles
/// such as the L1 diversity or parallelotope kernels; for other oracles it
/// is only known to be coordinate-wise locally minimal.
UnionSearchResult min_union_translation(const PointSet& a, const PointSet& b,
                                        const DiversityOracle& delta,
                                        const UnionSearchOptions& opt = {});

struct UnionCheck {
  bool holds = true;
  double min_value = 0.0;       // best value found by the search
  double max_individual = 0.0;  // max(delta(A), delta(B))
  UnionSearchResult search;
};

/// Tests the union-translation condition on one pair: whether some b gives
/// delta(A u (B + b)) <= max(delta(A), delta(B)) + tol. A positive answer is
/// certified by the returned offset; a negative one is as strong as the
/// search (exact for coordinate-separable oracles).
UnionCheck check_union_translation(const PointSet& a, const PointSet& b,
                                   const DiversityOracle& delta,
                                   const UnionSearchOptions& opt = {}, double tol = 1e-6);

}  // namespace circumdiv
