#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "circumdiv/ball.hpp"
#include "circumdiv/circumradius.hpp"
#include "circumdiv/diversity.hpp"
#include "circumdiv/embed.hpp"
#include "circumdiv/linprog.hpp"

using namespace circumdiv;

namespace {

PointSet cloud(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Point> pts(n, Point(static_cast<Eigen::Index>(d)));
  for (auto& p : pts)
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = g(rng);
  return PointSet(std::move(pts));
}

// a random polytope around the origin: +-e_i plus extra unit normals
Kernel polytope(std::size_t d, std::size_t extra, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> off(0.5, 1.5);
  const auto di = static_cast<Eigen::Index>(d);
  Matrix a(2 * di + static_cast<Eigen::Index>(extra), di);
  Eigen::VectorXd b(a.rows());
  a.topRows(di) = Matrix::Identity(di, di);
  a.middleRows(di, di) = -Matrix::Identity(di, di);
  for (Eigen::Index r = 2 * di; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < di; ++c) a(r, c) = g(rng);
    a.row(r).normalize();
  }
  for (Eigen::Index r = 0; r < b.size(); ++r) b(r) = off(rng);
  return Kernel::hpolytope(a, b);
}

}  // namespace

static void BM_SimplexDense(benchmark::State& state) {
  const auto n = state.range(0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  lp::LinearProgram prog;
  prog.objective = -Eigen::VectorXd::NullaryExpr(n, [&] { return u(rng); });
  prog.constraints = Matrix::NullaryExpr(2 * n, n, [&] { return u(rng); });
  prog.bounds = Eigen::VectorXd::Ones(2 * n);
  prog.lower = Eigen::VectorXd::Zero(n);
  for (auto _ : state) benchmark::DoNotOptimize(lp::solve(prog));
  state.SetComplexityN(n);
}
BENCHMARK(BM_SimplexDense)->RangeMultiplier(2)->Range(4, 64)->Complexity();

static void BM_Welzl(benchmark::State& state) {
  const auto a = cloud(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(min_enclosing_ball(a, kDefaultSeed));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Welzl)->ArgsProduct({{16, 256, 4096}, {2, 3, 5}});

static void BM_RadiusHPolytope(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(1));
  const auto a = cloud(static_cast<std::size_t>(state.range(0)), d, 12);
  const auto k = polytope(d, 4, 13);
  for (auto _ : state) benchmark::DoNotOptimize(circumradius(a, k));
}
BENCHMARK(BM_RadiusHPolytope)->ArgsProduct({{8, 64, 512}, {2, 4}});

static void BM_RadiusClosedForm(benchmark::State& state) {
  const std::size_t d = 4;
  const auto a = cloud(static_cast<std::size_t>(state.range(0)), d, 14);
  const Kernel kernels[] = {Kernel::simplex_pos(d), Kernel::simplex_neg(d), Kernel::unit_cube(d)};
  const auto& k = kernels[state.range(1)];
  state.SetLabel(std::string(k.type_name()));
  for (auto _ : state) benchmark::DoNotOptimize(circumradius(a, k));
}
BENCHMARK(BM_RadiusClosedForm)->ArgsProduct({{64, 4096}, {0, 1, 2}});

static void BM_RadiusProduct(benchmark::State& state) {
  const auto a = cloud(64, 4, 15);
  const auto k = Kernel::product(polytope(2, 3, 16), Kernel::ball(2));
  for (auto _ : state) benchmark::DoNotOptimize(circumradius(a, k));
}
BENCHMARK(BM_RadiusProduct);

static void BM_CheckAxioms(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = l1_diversity(cloud(n, 3, 17));
  for (auto _ : state) benchmark::DoNotOptimize(check_axioms(d));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CheckAxioms)->DenseRange(4, 12, 2);

static void BM_KernelDiversity(benchmark::State& state) {
  const auto p = cloud(static_cast<std::size_t>(state.range(0)), 2, 18);
  const auto k = polytope(2, 3, 19);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_diversity(p, k));
}
BENCHMARK(BM_KernelDiversity)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_CoreSet(benchmark::State& state) {
  const auto a = cloud(static_cast<std::size_t>(state.range(0)), 3, 20);
  const auto k = polytope(3, 3, 21);
  for (auto _ : state) benchmark::DoNotOptimize(core_set(a, k, 0.5));
}
BENCHMARK(BM_CoreSet)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_BallDecide(benchmark::State& state) {
  const auto p = cloud(6, 3, 22);
  const auto d = kernel_diversity(p, Kernel::ball(3));
  for (auto _ : state) benchmark::DoNotOptimize(ball_embed_decide(d, 3));
}
BENCHMARK(BM_BallDecide);

BENCHMARK_MAIN();
