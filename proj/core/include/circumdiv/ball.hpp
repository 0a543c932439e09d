#pragma once

#include <cstdint>
#include <span>

#include "circumdiv/geom.hpp"

namespace circumdiv {

struct EnclosingBall {
  Point center;
  double radius = -1.0;  // negative: encloses nothing
};

/// Smallest ball having every support point on its boundary, with center in
/// the affine hull of the support. Empty support gives radius -1.
EnclosingBall circumball(std::span<const Point> support);

/// Minimal enclosing Euclidean ball by the randomized move-to-front
/// algorithm. The input order is shuffled with `seed`, so results are
/// reproducible for a fixed seed.
EnclosingBall min_enclosing_ball(const PointSet& points, std::uint64_t seed);

}  // namespace circumdiv
