#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "circumdiv/error.hpp"
#include "circumdiv/linprog.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

namespace circumdiv::lp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LinearProgram one_var(double c) {
  LinearProgram p;
  p.objective = Eigen::VectorXd::Constant(1, c);
  p.constraints = Eigen::MatrixXd(0, 1);
  p.bounds = Eigen::VectorXd(0);
  return p;
}

TEST(Lp, LowerBoundOnly) {
  auto p = one_var(1.0);
  p.constraints = Eigen::MatrixXd::Constant(1, 1, -1.0);  // -x <= -1
  p.bounds = Eigen::VectorXd::Constant(1, -1.0);
  const auto r = solve(p);
  ASSERT_EQ(r.status, Status::optimal);
  EXPECT_NEAR(r.solution(0), 1.0, 1e-12);
  EXPECT_NEAR(r.objective_value, 1.0, 1e-12);
}

TEST(Lp, Infeasible) {
  auto p = one_var(1.0);
  p.constraints = Eigen::MatrixXd(2, 1);
  p.constraints << -1, 1;
  p.bounds = Eigen::VectorXd(2);
  p.bounds << -1, 0;
  const auto r = solve(p);
  EXPECT_EQ(r.status, Status::infeasible);
  EXPECT_EQ(r.solution.size(), 0);
}

TEST(Lp, Unbounded) {
  auto p = one_var(-1.0);
  p.constraints = Eigen::MatrixXd::Constant(1, 1, -1.0);
  p.bounds = Eigen::VectorXd::Constant(1, 0.0);
  EXPECT_EQ(solve(p).status, Status::unbounded);
}

TEST(Lp, TriangleVertex) {
  LinearProgram p;
  p.objective = Eigen::Vector2d(-1, -1);
  p.constraints = Eigen::MatrixXd::Ones(1, 2);
  p.bounds = Eigen::VectorXd::Ones(1);
  p.lower = Eigen::VectorXd::Zero(2);
  const auto r = solve(p);
  ASSERT_TRUE(r.optimal());
  EXPECT_NEAR(r.objective_value, -1.0, 1e-12);
  // one of (1,0), (0,1)
  EXPECT_NEAR(r.solution.sum(), 1.0, 1e-12);
  EXPECT_NEAR(r.solution(0) * r.solution(1), 0.0, 1e-12);
  EXPECT_EQ(*cdtest::oracle::lp_by_vertices(p), -1.0);
}

TEST(Lp, NanInputThrows) {
  auto p = one_var(NAN);
  EXPECT_THROW(solve(p), Error);
  auto q = one_var(1.0);
  q.constraints = Eigen::MatrixXd::Constant(1, 1, 1.0);
  q.bounds = Eigen::VectorXd::Constant(1, NAN);
  EXPECT_THROW(solve(q), Error);
}

TEST(Lp, MismatchedShapesThrow) {
  auto p = one_var(1.0);
  p.constraints = Eigen::MatrixXd::Ones(1, 2);
  p.bounds = Eigen::VectorXd::Ones(1);
  EXPECT_THROW(solve(p), Error);
}

TEST(Lp, FreeVariablesAndEqualityPair) {
  // min x - y, x + y = 2 written as two rows, y <= 3
  LinearProgram p;
  p.objective = Eigen::Vector2d(1, -1);
  p.constraints = Eigen::MatrixXd(3, 2);
  p.constraints << 1, 1, -1, -1, 0, 1;
  p.bounds = Eigen::Vector3d(2, -2, 3);
  const auto r = solve(p);
  ASSERT_TRUE(r.optimal());
  EXPECT_NEAR(r.objective_value, -4.0, 1e-10);
  EXPECT_LE(kkt_residual(p, r), 1e-9);
}

TEST(Lp, DegenerateVertexTerminates) {
  // many constraints through the optimum (0,0)
  LinearProgram p;
  p.objective = Eigen::Vector2d(1, 1);
  const int m = 12;
  p.constraints = Eigen::MatrixXd(m, 2);
  for (int i = 0; i < m; ++i) {
    const double t = 0.1 + 1.3 * i / m;
    p.constraints.row(i) << -std::cos(t), -std::sin(t);
  }
  p.bounds = Eigen::VectorXd::Zero(m);
  const auto r = solve(p);
  ASSERT_TRUE(r.optimal());
  EXPECT_NEAR(r.objective_value, 0.0, 1e-10);
}

TEST(Lp, VerboseDumpsTableaus) {
  auto p = one_var(1.0);
  p.constraints = Eigen::MatrixXd::Constant(1, 1, -1.0);
  p.bounds = Eigen::VectorXd::Constant(1, -1.0);
  std::ostringstream log;
  SolverOptions opt;
  opt.verbosity = 1;
  opt.log = &log;
  ASSERT_TRUE(solve(p, opt).optimal());
  EXPECT_FALSE(log.str().empty());
}

LinearProgram random_bounded(cdtest::Rng& rng, Eigen::Index n, Eigen::Index m) {
  LinearProgram p;
  p.objective = Eigen::VectorXd::NullaryExpr(n, [&] { return cdtest::uniform(rng, -1, 1); });
  p.constraints = Eigen::MatrixXd::NullaryExpr(m, n, [&] { return cdtest::uniform(rng, -1, 1); });
  // feasible at a random interior point
  const Eigen::VectorXd x0 = Eigen::VectorXd::NullaryExpr(n, [&] { return cdtest::uniform(rng, -1, 1); });
  p.bounds = p.constraints * x0 + Eigen::VectorXd::NullaryExpr(m, [&] { return cdtest::uniform(rng, 0.1, 1); });
  p.lower = Eigen::VectorXd::Constant(n, -3.0);
  p.upper = Eigen::VectorXd::Constant(n, 3.0);
  if (n > 1) p.upper(0) = kInf;  // one side open, the box row below closes it
  if (n > 1) {
    p.constraints.conservativeResize(m + 1, n);
    p.constraints.row(m).setZero();
    p.constraints(m, 0) = 1.0;
    p.bounds.conservativeResize(m + 1);
    p.bounds(m) = 3.0;
  }
  return p;
}

TEST(LpProperty, MatchesVertexEnumeration) {
  cdtest::Rng rng(21);
  for (int t = 0; t < 150; ++t) {
    const auto n = static_cast<Eigen::Index>(cdtest::pick(rng, 1, 4));
    const auto m = static_cast<Eigen::Index>(cdtest::pick(rng, 1, 12));
    const auto p = random_bounded(rng, n, m);
    const auto r = solve(p);
    const auto ref = cdtest::oracle::lp_by_vertices(p);
    ASSERT_TRUE(ref.has_value());
    ASSERT_TRUE(r.optimal()) << "trial " << t;
    EXPECT_NEAR(r.objective_value, *ref, 1e-6) << "trial " << t;
    EXPECT_LE(((p.constraints * r.solution - p.bounds).array()).maxCoeff(), 1e-7);
    EXPECT_LE(kkt_residual(p, r), 1e-6);
  }
}

TEST(LpProperty, LargerInstancesMatchEnumeration) {
  cdtest::Rng rng(22);
  for (int t = 0; t < 20; ++t) {
    const auto p = random_bounded(rng, 6, static_cast<Eigen::Index>(cdtest::pick(rng, 8, 14)));
    const auto r = solve(p);
    ASSERT_TRUE(r.optimal());
    EXPECT_NEAR(r.objective_value, *cdtest::oracle::lp_by_vertices(p), 1e-6);
  }
}

TEST(LpProperty, ObjectiveScalingScalesValue) {
  cdtest::Rng rng(23);
  for (int t = 0; t < 50; ++t) {
    auto p = random_bounded(rng, 3, 6);
    const double v = solve(p).objective_value;
    const double s = cdtest::uniform(rng, 0.1, 10.0);
    p.objective *= s;
    EXPECT_NEAR(solve(p).objective_value, s * v, 1e-7 * (1 + std::abs(s * v)));
  }
}

TEST(LpProperty, TranslatingRegionTranslatesArgmin) {
  cdtest::Rng rng(24);
  for (int t = 0; t < 50; ++t) {
    auto p = random_bounded(rng, 3, 6);
    const auto r = solve(p);
    const Eigen::VectorXd shift = Eigen::VectorXd::NullaryExpr(3, [&] { return cdtest::uniform(rng, -2, 2); });
    // x' = x + shift: G x' <= h + G shift, bounds move too
    p.bounds += p.constraints * shift;
    p.lower += shift;
    p.upper += shift;
    const auto q = solve(p);
    ASSERT_TRUE(q.optimal());
    EXPECT_NEAR(q.objective_value, r.objective_value + p.objective.dot(shift), 1e-7);
    // the argmin is unique with probability one
    EXPECT_LE((q.solution - r.solution - shift).norm(), 1e-6);
  }
}

TEST(LpProperty, DualsCertifyOptimality) {
  cdtest::Rng rng(25);
  for (int t = 0; t < 50; ++t) {
    const auto p = random_bounded(rng, 4, 8);
    const auto r = solve(p);
    ASSERT_TRUE(r.optimal());
    ASSERT_EQ(r.duals.size(), p.constraints.rows());
    EXPECT_GE(r.duals.minCoeff(), -1e-9);
    EXPECT_LE(kkt_residual(p, r), 1e-6);
  }
}

}  // namespace
}  // namespace circumdiv::lp
