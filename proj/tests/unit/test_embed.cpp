#include <cmath>

#include <gtest/gtest.h>

#include "circumdiv/embed.hpp"
#include "circumdiv/error.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

namespace circumdiv {
namespace {

using cdtest::Rng;
namespace oracle = cdtest::oracle;

void expect_tables_near(const FiniteDiversity& got, const FiniteDiversity& want, double tol) {
  ASSERT_EQ(got.labels(), want.labels());
  for (Mask m = 0; m <= want.full_mask(); ++m) EXPECT_NEAR(got[m], want[m], tol) << want.name(m);
}

// delta(A) <= k / ((k+1)(k-1)) sum delta(A \ a) for |A| = k+1 >= 3
double drop_one_gap(const FiniteDiversity& d) {
  double worst = -1e300;
  for (Mask m = 1; m <= d.full_mask(); ++m) {
    const int size = popcount(m);
    if (size < 3) continue;
    const double k = size - 1;
    double sum = 0;
    for (Mask q = m; q; q &= q - 1) sum += d[m & ~(q & (~q + 1))];
    worst = std::max(worst, d[m] - k / ((k + 1) * (k - 1)) * sum);
  }
  return worst;
}

TEST(SymmetricCriterion, CountDiversityIsTight) {
  const auto r = symmetric_embeddable(count_diversity(default_labels(5)));
  EXPECT_TRUE(r.embeddable);
}

TEST(SymmetricCriterion, ConstantDiversity) {
  EXPECT_TRUE(symmetric_embeddable(constant_diversity(default_labels(5))).embeddable);
}

TEST(SymmetricCriterion, FourPointCounterexample) {
  const auto r = symmetric_embeddable(symmetric_diversity(default_labels(4), {0, 1, 1, 2}));
  EXPECT_FALSE(r.embeddable);
  EXPECT_EQ(r.k, 4u);
  EXPECT_DOUBLE_EQ(r.ratio, 0.5);
  EXPECT_DOUBLE_EQ(r.bound, 2.0 / 3.0);
  EXPECT_EQ(r.reason, "criterion");
}

TEST(SymmetricCriterion, NonSymmetricThrows) {
  auto v = count_diversity(default_labels(3)).values();
  v[0b011] = 0.5;
  EXPECT_THROW(symmetric_embeddable(FiniteDiversity(default_labels(3), v)), NotSymmetric);
}

TEST(SymmetricEmbed, PairScaledSegment) {
  const auto e = symmetric_embed(symmetric_diversity({"a", "b"}, {0, 3}));
  EXPECT_NEAR(circumradius(e.points, e.kernel).radius, 3.0, 1e-9);
}

TEST(SymmetricEmbed, CountOnFour) {
  const auto d = count_diversity(default_labels(4));
  const auto e = symmetric_embed(d);
  EXPECT_NEAR(circumradius(e.points, e.kernel).radius, 3.0, 1e-9);
  expect_tables_near(e.diversity(), d, 1e-6);
}

TEST(SymmetricEmbed, ConstantOnThree) {
  const auto d = constant_diversity(default_labels(3));
  expect_tables_near(symmetric_embed(d).diversity(), d, 1e-6);
}

TEST(SymmetricEmbed, RandomAdmissibleProfiles) {
  Rng rng(71);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = cdtest::pick(rng, 2, 5);
    // grow f while keeping f(k-1)/f(k) >= (k-1)/k
    std::vector<double> f{0, cdtest::uniform(rng, 0.5, 2)};
    for (std::size_t k = 2; k < n; ++k) {
      const double lo = f[k - 1], hi = f[k - 1] * k / (k - 1.0);
      f.push_back(lo + cdtest::uniform(rng, 0, 1) * (hi - lo));
    }
    const auto d = symmetric_diversity(cdtest::labels(n), f);
    ASSERT_TRUE(symmetric_embeddable(d).embeddable);
    const auto e = symmetric_embed(d);
    expect_tables_near(e.diversity(), d, 1e-6);
    EXPECT_LE(drop_one_gap(e.diversity()), 1e-6);
  }
}

TEST(SymmetricEmbed, RejectsCriterionFailure) {
  try {
    symmetric_embed(symmetric_diversity(default_labels(4), {0, 1, 1, 2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::criterion_failed);
  }
}

TEST(SymmetricEmbed, DimensionBudget) {
  EXPECT_EQ(symmetric_embed_dim(2), 1u);
  EXPECT_EQ(symmetric_embed_dim(5), 64u);
  EXPECT_GT(symmetric_embed_dim(6), 64u);
  try {
    symmetric_embed(count_diversity(default_labels(6)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::budget_exceeded);
  }
  SymmetricEmbedOptions opt;
  opt.max_dim = 4;
  EXPECT_THROW(symmetric_embed(count_diversity(default_labels(4)), opt), Error);
}

TEST(ThreePoint, EndpointsAndMiddle) {
  for (double x : {1.0, 1.5, 2.0}) {
    const auto d = FiniteDiversity::from_function(default_labels(3), [&](Mask m) {
      return popcount(m) < 2 ? 0.0 : popcount(m) == 2 ? 1.0 : x;
    });
    const auto e = three_point_embed(d);
    EXPECT_NEAR(circumradius(e.points, e.kernel).radius, x, 1e-9);
    expect_tables_near(e.diversity(), d, 1e-9);
  }
}

TEST(ThreePoint, ScaledPairs) {
  const auto d = FiniteDiversity::from_function(default_labels(3), [](Mask m) {
    return popcount(m) < 2 ? 0.0 : popcount(m) == 2 ? 2.0 : 3.0;
  });
  expect_tables_near(three_point_embed(d).diversity(), d, 1e-9);
}

TEST(ThreePoint, RejectsUnequalPairs) {
  auto v = count_diversity(default_labels(3)).values();
  v[0b011] = 0.5;
  EXPECT_THROW(three_point_embed(FiniteDiversity(default_labels(3), v)), Error);
  // triple above twice the pair
  EXPECT_THROW(three_point_embed(FiniteDiversity(default_labels(3), {0, 0, 0, 1, 0, 1, 1, 2.5})), Error);
}

TEST(DiameterEmbed, TwoPoints) {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  const auto e = diameter_embed(diameter_diversity(m));
  EXPECT_EQ(e.points[0], make_point({0, 1}));
  EXPECT_EQ(e.points[1], make_point({1, 0}));
  EXPECT_NEAR(circumradius(e.points, e.kernel).radius, 1.0, 1e-12);
}

TEST(DiameterEmbed, PathMetric) {
  Matrix m(3, 3);
  m << 0, 1, 2, 1, 0, 1, 2, 1, 0;
  const auto e = diameter_embed(diameter_diversity(m));
  EXPECT_EQ(e.diversity()[0b111], 2.0);
}

TEST(DiameterEmbed, CountIsNotDiameter) {
  try {
    diameter_embed(count_diversity(default_labels(3)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_diameter);
  }
}

TEST(DiameterEmbed, RangesEqualMaxPairs) {
  Rng rng(72);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = cdtest::pick(rng, 2, 7);
    const Matrix m = cdtest::random_metric(rng, n);
    const auto e = diameter_embed(diameter_diversity(m));
    const auto got = e.diversity();
    for (Mask s = 1; s <= got.full_mask(); ++s) {
      EXPECT_NEAR(got[s], oracle::max_pair(m, s), 1e-12);
      EXPECT_NEAR(oracle::max_range(e.points, s), oracle::max_pair(m, s), 1e-12);
    }
  }
}

TEST(DeltaNeg, Examples) {
  EXPECT_EQ(delta_neg(PointSet::of({{0, 0}, {1, 0}, {0, 1}, {1, 1}})), 2.0);
  EXPECT_EQ(delta_neg(PointSet::of({{5, 5}})), 0.0);
  EXPECT_EQ(delta_neg(PointSet::of({{0, 0}, {-1, 0}, {0, -1}})), 1.0);
}

TEST(DeltaNeg, VerifiedTableMatchesOracle) {
  Rng rng(73);
  for (int t = 0; t < 40; ++t) {
    const auto p = cdtest::random_points(rng, cdtest::pick(rng, 1, 6), cdtest::pick(rng, 1, 4), 2.0, true);
    const auto d = simplex_embed_verify(p);
    for (Mask s = 0; s <= d.full_mask(); ++s) EXPECT_NEAR(d[s], oracle::delta_neg(p, s), 1e-9);
    EXPECT_TRUE(check_axioms(d).is_semidiversity);
  }
}

TEST(NegativeType, ThreeLabelTables) {
  Rng rng(74);
  for (int t = 0; t < 50; ++t) {
    const double ab = cdtest::uniform(rng, 0.1, 2), ac = cdtest::uniform(rng, 0.1, 2),
                 bc = cdtest::uniform(rng, 0.1, 2);
    const double top = std::max({ab, ac, bc}), rest = ab + ac + bc - top;
    if (top > rest) continue;
    // any value in [top, rest] keeps both axioms
    const double abc = top + cdtest::uniform(rng, 0, 1) * (rest - top);
    const auto d = FiniteDiversity(default_labels(3), {0, 0, 0, ab, 0, ac, bc, abc});
    ASSERT_TRUE(check_axioms(d).is_diversity);
    EXPECT_TRUE(negative_type_check(d).is_negative_type);
  }
}

TEST(NegativeType, L1Tables) {
  Rng rng(75);
  for (int t = 0; t < 20; ++t) {
    const auto p = cdtest::random_points(rng, 4, cdtest::pick(rng, 1, 4), 2.0, true);
    EXPECT_TRUE(negative_type_check(l1_diversity(p)).is_negative_type);
  }
}

TEST(NegativeType, SearchFindsFailureWithWitness) {
  Rng rng(76);
  int found = 0;
  for (int t = 0; t < 400 && found < 5; ++t) {
    std::vector<double> v(16, 0.0);
    for (Mask m = 3; m < 16; ++m)
      if (popcount(m) >= 2) v[m] = cdtest::uniform(rng, 0.1, 3);
    const FiniteDiversity d(default_labels(4), v);
    const auto r = negative_type_check(d);
    if (r.is_negative_type) continue;
    ++found;
    ASSERT_EQ(r.witness.size(), 15u);
    double sum = 0, inf = 0;
    for (double x : r.witness) {
      sum += x;
      inf = std::max(inf, std::abs(x));
    }
    EXPECT_NEAR(sum, 0.0, 1e-9);
    EXPECT_NEAR(inf, 1.0, 1e-12);
    const double q = oracle::quadratic_form(d, r.witness);
    EXPECT_GT(q, 0.0);
    EXPECT_NEAR(q, r.witness_value, 1e-9);
    EXPECT_NEAR(negative_type_form(d, r.witness), q, 1e-9);
  }
  EXPECT_EQ(found, 5);
}

TEST(NegativeType, SizeGuard) {
  try {
    negative_type_check(count_diversity(default_labels(7)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_input);
  }
}

TEST(BallDecide, EquilateralTriangle) {
  const auto d = FiniteDiversity(default_labels(3), {0, 0, 0, 0.5, 0, 0.5, 0.5, 1 / std::sqrt(3.0)});
  const auto r = ball_embed_decide(d, 2);
  ASSERT_TRUE(r.embeddable);
  EXPECT_EQ(r.reason, BallReason::ok);
  ASSERT_TRUE(r.embedding.has_value());
  expect_tables_near(r.embedding->diversity(), d, 1e-6);
  EXPECT_EQ(r.rank, 2u);
}

TEST(BallDecide, WrongTripleValue) {
  const auto d = FiniteDiversity(default_labels(3), {0, 0, 0, 0.5, 0, 0.5, 0.5, 0.7});
  const auto r = ball_embed_decide(d, 2);
  EXPECT_FALSE(r.embeddable);
  EXPECT_EQ(r.reason, BallReason::subset_mismatch);
  ASSERT_TRUE(r.mismatch.has_value());
  EXPECT_EQ(r.mismatch->subset, 0b111u);
  EXPECT_NEAR(r.mismatch->expected, 0.7, 1e-12);
  EXPECT_NEAR(r.mismatch->got, 1 / std::sqrt(3.0), 1e-9);
}

TEST(BallDecide, StarIsNotEuclidean) {
  // o=a at distance 1 from three leaves that are pairwise 2 apart
  const auto d = FiniteDiversity::from_function(default_labels(4), [](Mask m) {
    if (popcount(m) < 2) return 0.0;
    return (m & ~1u) != 0 && popcount(m & ~1u) >= 2 ? 1.0 : 0.5;
  });
  const auto r = ball_embed_decide(d, 2);
  EXPECT_FALSE(r.embeddable);
  EXPECT_EQ(r.reason, BallReason::metric_not_euclidean);
  EXPECT_LT(r.eigenvalues.back(), 0.0);
}

TEST(BallDecide, RankTooHigh) {
  // the diametral pair fixes every set containing it, so triples decide the
  // table, but the points span three dimensions
  const auto p = PointSet::of({{-1, 0, 0}, {1, 0, 0}, {0, 0.1, 0.3}, {0, -0.2, 0.1}}, default_labels(4));
  const auto r = ball_embed_decide(kernel_diversity(p, Kernel::ball(3)), 2);
  EXPECT_FALSE(r.embeddable);
  EXPECT_EQ(r.reason, BallReason::rank_exceeds_d);
  EXPECT_EQ(r.rank, 3u);
}

TEST(BallDecide, PreconditionUnmet) {
  // 4 labels, d=1: triples must equal their max pair
  const auto d = count_diversity(default_labels(4));
  try {
    ball_embed_decide(d, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::precondition_unmet);
  }
}

TEST(BallDecide, RoundTripRandomPoints) {
  Rng rng(78);
  for (int t = 0; t < 20; ++t) {
    const std::size_t dim = 2 + t % 2;
    const auto p = cdtest::random_points(rng, cdtest::pick(rng, 2, 6), dim, 2.0, true);
    const auto d = kernel_diversity(p, Kernel::ball(dim));
    const auto r = ball_embed_decide(d, dim);
    ASSERT_TRUE(r.embeddable) << to_string(r.reason);
    expect_tables_near(r.embedding->diversity(), d, 1e-6);
  }
}

TEST(BallDecide, ThinTriangleKeepsSmallDirection) {
  // second Gram eigenvalue sits far below the rank cutoff
  const auto p = PointSet::of({{0, 0}, {2, 0}, {4, 2e-3}}, {"a", "b", "c"});
  const auto d = kernel_diversity(p, Kernel::ball(2));
  const auto r = ball_embed_decide(d, 2);
  ASSERT_TRUE(r.embeddable) << to_string(r.reason);
  EXPECT_EQ(r.rank, 1u);
  expect_tables_near(r.embedding->diversity(), d, 1e-9);
}

TEST(BallDecide, ReasonNames) {
  EXPECT_EQ(to_string(BallReason::ok), "Ok");
  EXPECT_EQ(to_string(BallReason::metric_not_euclidean), "MetricNotEuclidean");
  EXPECT_EQ(to_string(BallReason::rank_exceeds_d), "RankExceedsD");
  EXPECT_EQ(to_string(BallReason::subset_mismatch), "SubsetMismatch");
}

TEST(Embedding, VerifiedRejectsMismatch) {
  const auto p = PointSet::of({{0, 0}, {1, 0}}, {"a", "b"});
  EXPECT_THROW(Embedding::verified(p, Kernel::unit_cube(2), scale(2.0, count_diversity({"a", "b"}))), Error);
  EXPECT_NO_THROW(Embedding::verified(p, Kernel::unit_cube(2), count_diversity({"a", "b"})));
}

TEST(Embedding, AffineInvariance) {
  Rng rng(79);
  for (int t = 0; t < 20; ++t) {
    const std::size_t dim = cdtest::pick(rng, 1, 3);
    const auto k = cdtest::random_any_kernel(rng, dim);
    const auto p = cdtest::random_points(rng, cdtest::pick(rng, 2, 5), dim, 2.0, true);
    const Embedding e{p, k};
    const auto map = cdtest::random_affine(rng, dim);
    const auto moved_pts = apply_map(map, p);
    const Embedding moved{PointSet(moved_pts.points(), p.labels()), Kernel::affine_image(map, k)};
    expect_tables_near(moved.diversity(), e.diversity(), 1e-6);
  }
}

TEST(Embedding, DropOneBoundOnConstructions) {
  EXPECT_LE(drop_one_gap(symmetric_embed(count_diversity(default_labels(5))).diversity()), 1e-6);
  Rng rng(80);
  for (int t = 0; t < 10; ++t) {
    const auto m = cdtest::random_metric(rng, 5);
    EXPECT_LE(drop_one_gap(diameter_embed(diameter_diversity(m)).diversity()), 1e-6);
    const auto p = cdtest::random_points(rng, 5, 3, 2.0, true);
    EXPECT_LE(drop_one_gap(simplex_embed_verify(p)), 1e-6);
  }
}

TEST(SubsetBound, ExcessOfCounterexample) {
  // f = [0,1,1,2]: 2 > 3/8 * 4 * 1
  EXPECT_NEAR(subset_bound_excess(symmetric_diversity(default_labels(4), {0, 1, 1, 2})), 0.5, 1e-12);
  EXPECT_LE(subset_bound_excess(count_diversity(default_labels(4))), 1e-12);
}

}  // namespace
}  // namespace circumdiv
