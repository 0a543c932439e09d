#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "circumdiv/error.hpp"
#include "circumdiv/geom.hpp"
#include "circumdiv/kernel.hpp"
#include "circumdiv/tolerance.hpp"
#include "support/random.hpp"

namespace circumdiv {
namespace {

bool same_points(const PointSet& a, const PointSet& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].isApprox(b[i], 1e-12) && (a[i] - b[i]).norm() > 1e-12) return false;
  return true;
}

TEST(InHull, CenterOfSquare) {
  EXPECT_TRUE(in_hull(make_point({0.5, 0.5}), PointSet::of({{0, 0}, {1, 0}, {0, 1}, {1, 1}})));
}

TEST(InHull, OutsideSegment) {
  EXPECT_FALSE(in_hull(make_point({2, 0}), PointSet::of({{0, 0}, {1, 0}})));
}

TEST(InHull, TriangleCentroid) {
  EXPECT_TRUE(in_hull(make_point({1.0 / 3, 1.0 / 3}), PointSet::of({{0, 0}, {1, 0}, {0, 1}})));
}

TEST(InHull, EmptySetContainsNothing) {
  EXPECT_FALSE(in_hull(make_point({0, 0}), PointSet::empty(2)));
}

TEST(InHull, DimensionMismatchThrows) {
  try {
    in_hull(make_point({0, 0, 0}), PointSet::of({{0, 0}}));
    FAIL() << "no throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dimension_mismatch);
  }
}

TEST(MinkowskiSum, SingletonTranslates) {
  EXPECT_TRUE(same_points(minkowski_sum(PointSet::of({{0, 0}}), PointSet::of({{1, 2}})),
                          PointSet::of({{1, 2}})));
}

TEST(MinkowskiSum, SquareCorners) {
  const auto s = minkowski_sum(PointSet::of({{0, 0}, {1, 0}}), PointSet::of({{0, 0}, {0, 1}}));
  EXPECT_TRUE(same_points(s, PointSet::of({{0, 0}, {0, 1}, {1, 0}, {1, 1}})));
}

TEST(MinkowskiSum, InverseTranslationCancels) {
  EXPECT_TRUE(same_points(minkowski_sum(PointSet::of({{1, 1}}), PointSet::of({{-1, -1}})),
                          PointSet::of({{0, 0}})));
}

TEST(MinkowskiSum, DeduplicatesExactly) {
  const auto s = minkowski_sum(PointSet::of({{0, 0}, {1, 0}}), PointSet::of({{0, 0}, {-1, 0}, {1, 0}}));
  EXPECT_EQ(s.size(), 4u);  // -1, 0, 1, 2
}

TEST(ApplyMap, Identity) {
  const auto a = PointSet::of({{1, 2}, {3, 4}});
  EXPECT_TRUE(same_points(apply_map(AffineMap::identity(2), a), a));
}

TEST(ApplyMap, Doubling) {
  EXPECT_TRUE(same_points(apply_map(AffineMap::scaling(2, 2.0), PointSet::of({{1, 0}})),
                          PointSet::of({{2, 0}})));
}

TEST(ApplyMap, QuarterTurn) {
  Matrix r(2, 2);
  r << 0, -1, 1, 0;
  EXPECT_TRUE(same_points(apply_map(AffineMap(r, Point::Zero(2)), PointSet::of({{1, 0}})),
                          PointSet::of({{0, 1}})));
}

TEST(ApplyMap, MapThenInverseIsIdentity) {
  cdtest::Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const std::size_t d = cdtest::pick(rng, 1, 4);
    const auto m = cdtest::random_affine(rng, d);
    const auto a = cdtest::random_points(rng, 6, d);
    const auto back = apply_map(m.inverse(), apply_map(m, a));
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LE((back[i] - a[i]).norm(), 1e-9);
  }
}

TEST(Hausdorff, Examples) {
  EXPECT_DOUBLE_EQ(hausdorff(PointSet::of({{0, 0}}), PointSet::of({{0, 0}})), 0.0);
  EXPECT_DOUBLE_EQ(hausdorff(PointSet::of({{0, 0}}), PointSet::of({{3, 4}})), 5.0);
  EXPECT_DOUBLE_EQ(hausdorff(PointSet::of({{0, 0}, {1, 0}}), PointSet::of({{0, 0}})), 1.0);
}

TEST(Hausdorff, EmptyInputThrows) {
  EXPECT_THROW(hausdorff(PointSet::empty(2), PointSet::of({{0, 0}})), Error);
}

TEST(Hausdorff, MetricProperties) {
  cdtest::Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = cdtest::pick(rng, 1, 3);
    const auto a = cdtest::random_points(rng, cdtest::pick(rng, 1, 6), d);
    const auto b = cdtest::random_points(rng, cdtest::pick(rng, 1, 6), d);
    const auto c = cdtest::random_points(rng, cdtest::pick(rng, 1, 6), d);
    EXPECT_DOUBLE_EQ(hausdorff(a, b), hausdorff(b, a));
    EXPECT_GE(hausdorff(a, b), 0.0);
    EXPECT_LE(hausdorff(a, c), hausdorff(a, b) + hausdorff(b, c) + 1e-9);
    EXPECT_EQ(hausdorff(a, a), 0.0);
  }
}

// conv(A + B) = conv(A) + conv(B): sums of hull samples land in the hull of
// the pairwise sums, and vice versa
TEST(MinkowskiSum, HullOfSumIsSumOfHulls) {
  cdtest::Rng rng(13);
  for (int t = 0; t < 30; ++t) {
    const auto a = cdtest::random_points(rng, 4, 2);
    const auto b = cdtest::random_points(rng, 3, 2);
    const auto s = minkowski_sum(a, b);
    for (int k = 0; k < 10; ++k) {
      Eigen::VectorXd wa = Eigen::VectorXd::NullaryExpr(4, [&] { return cdtest::uniform(rng, 0, 1); });
      Eigen::VectorXd wb = Eigen::VectorXd::NullaryExpr(3, [&] { return cdtest::uniform(rng, 0, 1); });
      wa /= wa.sum();
      wb /= wb.sum();
      const Point p = a.as_matrix().transpose() * wa + b.as_matrix().transpose() * wb;
      EXPECT_TRUE(in_hull(p, s));
      EXPECT_FALSE(in_hull(p + make_point({100, 0}), s));
    }
  }
}

TEST(Kernel, RejectsSingleHalfspace) {
  Matrix n(1, 2);
  n << 1, 0;
  try {
    Kernel::hpolytope(n, Eigen::VectorXd::Ones(1));
    FAIL() << "no throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_kernel);
  }
}

TEST(Kernel, RejectsSegmentInPlane) {
  Matrix n(4, 2);
  n << 1, 0, -1, 0, 0, 1, 0, -1;
  Eigen::VectorXd c(4);
  c << 1, 0, 0, 0;  // 0 <= x <= 1, y = 0
  EXPECT_THROW(Kernel::hpolytope(n, c), Error);
}

TEST(Kernel, RejectsEmptyPolytope) {
  Matrix n(2, 1);
  n << 1, -1;
  Eigen::VectorXd c(2);
  c << -1, -1;  // x <= -1 and x >= 1
  EXPECT_THROW(Kernel::hpolytope(n, c), Error);
}

TEST(Kernel, RejectsDegenerateMaps) {
  EXPECT_THROW(Kernel::parallelotope(AffineMap(Matrix::Zero(2, 2), Point::Zero(2))), Error);
  EXPECT_THROW(Kernel::affine_image(AffineMap(Matrix::Ones(2, 2), Point::Zero(2)), Kernel::ball(2)),
               Error);
  EXPECT_THROW(Kernel::scaled(Kernel::ball(2), 0.0), Error);
}

TEST(Kernel, PolygonContainsItsVertices) {
  const auto pts = PointSet::of({{0, 0}, {2, 0}, {1.2, 1.2}, {0, 2}, {0.5, 0.5}});
  const auto k = Kernel::polygon(pts);
  for (const auto& p : pts) EXPECT_TRUE(contains_scaled(k, 1.0, p, 1e-9));
  EXPECT_FALSE(contains_scaled(k, 1.0, make_point({1.5, 1.5}), 1e-9));
  EXPECT_EQ(polytope_vertices(k).size(), 4u);
}

TEST(Kernel, ReferencePointIsInside) {
  cdtest::Rng rng(14);
  for (int t = 0; t < 60; ++t) {
    const std::size_t d = cdtest::pick(rng, 1, 4);
    const auto k = cdtest::random_any_kernel(rng, d);
    EXPECT_TRUE(contains_scaled(k, 1.0, reference_point(k), 1e-9)) << k.type_name();
  }
}

TEST(Kernel, HalfspaceFormAgreesWithMembership) {
  cdtest::Rng rng(15);
  for (int t = 0; t < 40; ++t) {
    const std::size_t d = cdtest::pick(rng, 1, 3);
    auto k = cdtest::random_any_kernel(rng, d);
    if (!k.is_polytope()) continue;
    const auto h = to_hpolytope(k);
    for (int s = 0; s < 20; ++s) {
      const Point y = cdtest::random_point(rng, d, 2.5);
      const bool inside_h = ((h.normals * y - h.offsets).array() <= 1e-9).all();
      const bool inside_k = contains_scaled(k, 1.0, y, 1e-9);
      EXPECT_EQ(inside_h, inside_k) << k.type_name();
    }
  }
}

TEST(PointSet, RejectsBadInput) {
  EXPECT_THROW(PointSet(std::vector<Point>{}), Error);
  EXPECT_THROW(PointSet({make_point({0, 0}), make_point({0})}), Error);
  EXPECT_THROW(PointSet({make_point({0, NAN})}), Error);
  EXPECT_THROW(PointSet({make_point({0}), make_point({1})}, {"a", "a"}), Error);
}

TEST(Tolerance, ScopedOverrideRestores) {
  const auto before = tolerances();
  {
    ScopedTolerances guard({1e-3, 0.0});
    EXPECT_TRUE(approx_equal(1.0, 1.0005));
  }
  EXPECT_FALSE(approx_equal(1.0, 1.0005));
  EXPECT_EQ(tolerances().absolute, before.absolute);
}

}  // namespace
}  // namespace circumdiv
