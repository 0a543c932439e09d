#include "circumdiv/circumradius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "circumdiv/ball.hpp"
#include "circumdiv/error.hpp"
#include "circumdiv/linprog.hpp"
#include "circumdiv/parallel.hpp"

namespace circumdiv {

namespace {

constexpr std::size_t kSubsetBudget = 1'000'000;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool all_coincide(const PointSet& a) {
  return std::all_of(a.begin(), a.end(),
                     [&](const Point& p) { return (p.array() == a[0].array()).all(); });
}

Eigen::VectorXd coord_min(const PointSet& a) { return a.as_matrix().colwise().minCoeff(); }
Eigen::VectorXd coord_max(const PointSet& a) { return a.as_matrix().colwise().maxCoeff(); }

// A in lambda * [0,1]^d + z with z = coordinate minima.
Circumsolution solve_cube(const PointSet& a) {
  const Eigen::VectorXd lo = coord_min(a);
  const Eigen::VectorXd hi = coord_max(a);
  return {(hi - lo).maxCoeff(), lo};
}

Circumsolution solve_simplex_pos(const PointSet& a) {
  const Eigen::VectorXd z = coord_min(a);
  const Eigen::VectorXd sums = a.as_matrix().rowwise().sum();
  return {sums.maxCoeff() - z.sum(), z};
}

Circumsolution solve_simplex_neg(const PointSet& a) {
  const Eigen::VectorXd z = coord_max(a);
  const Eigen::VectorXd sums = a.as_matrix().rowwise().sum();
  return {z.sum() - sums.minCoeff(), z};
}

// lambda K + x is contained in mu K + x - (mu - lambda) k0 for any k0 in K
// and mu >= lambda.
Point grow_center(const Kernel& k, const Circumsolution& sol, double target) {
  if (target <= sol.radius) return sol.center;
  return sol.center - (target - sol.radius) * reference_point(k);
}

// A pulled back through an affine map, solved on the base kernel, then
// pushed forward: map(lambda K + z) = lambda map(K) + M z + (1 - lambda) b.
Circumsolution push_forward(const AffineMap& map, const Circumsolution& base) {
  return {base.radius, map.matrix() * base.center + (1.0 - base.radius) * map.offset()};
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  for (;;) {
    out.push_back(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
  return r;
}

CoreSetResult search_core_set(const PointSet& a, const Kernel& k, std::size_t bound,
                              double epsilon, const SolveOptions& opt) {
  require(!a.empty(), ErrorCode::invalid_input, "core set of an empty point set");
  require(a.dim() == k.dim(), ErrorCode::dimension_mismatch,
          "core set: point and kernel dimensions differ");
  CoreSetResult res;
  res.epsilon = epsilon;
  res.size_bound = bound;
  res.full_radius = circumradius(a, k, opt).radius;

  const std::size_t size = std::min(a.size(), bound);
  if (size == a.size()) {
    res.indices.resize(a.size());
    std::iota(res.indices.begin(), res.indices.end(), 0);
    res.subset = a;
    res.subset_radius = res.full_radius;
    res.radius_ratio = 1.0;
    return res;
  }
  require(binomial(a.size(), size) <= double(kSubsetBudget), ErrorCode::budget_exceeded,
          "core set search exceeds 10^6 subsets");

  const auto combos = combinations(a.size(), size);
  const std::size_t chunks = std::min<std::size_t>(combos.size(), 64);
  struct Best {
    double radius = -1.0;
    std::size_t index = 0;
  };
  std::vector<Best> best(chunks);
  parallel_chunks(combos.size(), chunks, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    Best b;
    for (std::size_t i = lo; i < hi; ++i) {
      const double r = circumradius(a.subset(combos[i]), k, opt).radius;
      if (r > b.radius) b = {r, i};
    }
    best[c] = b;
  });
  Best overall;
  for (const auto& b : best)
    if (b.radius > overall.radius) overall = b;

  res.indices = combos[overall.index];
  res.subset = a.subset(res.indices);
  res.subset_radius = overall.radius;
  res.radius_ratio = res.subset_radius > 0.0 ? res.full_radius / res.subset_radius : 1.0;
  return res;
}

}  // namespace

Circumsolution circumradius_lp(const PointSet& a, const shape::HPolytope& h) {
  require(!a.empty(), ErrorCode::invalid_input, "circumradius of an empty point set");
  const auto d = h.normals.cols();
  require(static_cast<Eigen::Index>(a.dim()) == d, ErrorCode::dimension_mismatch,
          "circumradius: point and kernel dimensions differ");
  const auto f = h.normals.rows();

  // Only the support value max_p n_i . p can bind facet i, so one row per
  // facet suffices: -c_i lambda - n_i . x <= -max_p n_i . p.
  const Eigen::VectorXd support = (a.as_matrix() * h.normals.transpose()).colwise().maxCoeff().transpose();
  lp::LinearProgram prog;
  prog.objective = Eigen::VectorXd::Zero(d + 1);
  prog.objective(0) = 1.0;
  prog.constraints.resize(f, d + 1);
  prog.constraints.col(0) = -h.offsets;
  prog.constraints.rightCols(d) = -h.normals;
  prog.bounds = -support;
  prog.lower = Eigen::VectorXd::Constant(d + 1, -std::numeric_limits<double>::infinity());
  prog.lower(0) = 0.0;
  const auto res = lp::solve(prog);
  require(res.optimal(), ErrorCode::internal,
          std::string("circumradius LP ended ") + lp::to_string(res.status));
  return {res.solution(0), res.solution.tail(d)};
}

Circumsolution circumradius(const PointSet& a, const Kernel& k, const SolveOptions& opt) {
  require(!a.empty(), ErrorCode::invalid_input, "circumradius of an empty point set");
  require(a.dim() == k.dim(), ErrorCode::dimension_mismatch,
          "circumradius: point dimension " + std::to_string(a.dim()) +
              " differs from kernel dimension " + std::to_string(k.dim()));
  if (all_coincide(a)) return {0.0, a[0]};

  return std::visit(
      overloaded{
          [&](const shape::HPolytope& h) { return circumradius_lp(a, h); },
          [&](const shape::Ball&) {
            const auto ball = min_enclosing_ball(a, opt.seed);
            return Circumsolution{ball.radius, ball.center};
          },
          [&](const shape::Parallelotope& p) {
            return push_forward(p.map, solve_cube(apply_map(p.inverse, a)));
          },
          [&](const shape::SimplexPos&) { return solve_simplex_pos(a); },
          [&](const shape::SimplexNeg&) { return solve_simplex_neg(a); },
          [&](const shape::Product& p) {
            const auto dl = p.left->dim();
            const auto dr = p.right->dim();
            const auto left = circumradius(a.project(0, dl), *p.left, opt);
            const auto right = circumradius(a.project(dl, dr), *p.right, opt);
            const double radius = std::max(left.radius, right.radius);
            Point center(static_cast<Eigen::Index>(dl + dr));
            center << grow_center(*p.left, left, radius), grow_center(*p.right, right, radius);
            return Circumsolution{radius, std::move(center)};
          },
          [&](const shape::AffineImage& img) {
            return push_forward(img.map, circumradius(apply_map(img.inverse, a), *img.base, opt));
          },
      },
      k.shape());
}

bool covers(const Kernel& k, const Circumsolution& sol, const PointSet& a, double tol) {
  return std::all_of(a.begin(), a.end(), [&](const Point& p) {
    return contains_scaled(k, sol.radius, p - sol.center, tol);
  });
}

std::size_t core_set_bound(std::size_t dim, double epsilon) {
  require(epsilon >= 0.0 && std::isfinite(epsilon), ErrorCode::invalid_input,
          "core set epsilon must be finite and >= 0");
  return static_cast<std::size_t>(std::ceil(double(dim) / (1.0 + epsilon) - 1e-12)) + 1;
}

std::size_t ball_core_set_bound(double epsilon) {
  require(epsilon > 0.0 && std::isfinite(epsilon), ErrorCode::invalid_input,
          "ball core set epsilon must be finite and > 0");
  return static_cast<std::size_t>(std::ceil(1.0 / (2.0 * epsilon + epsilon * epsilon) - 1e-12)) + 1;
}

CoreSetResult core_set(const PointSet& a, const Kernel& k, double epsilon,
                       const SolveOptions& opt) {
  return search_core_set(a, k, core_set_bound(k.dim(), epsilon), epsilon, opt);
}

CoreSetResult ball_core_set(const PointSet& a, double epsilon, const SolveOptions& opt) {
  require(!a.empty(), ErrorCode::invalid_input, "core set of an empty point set");
  return search_core_set(a, Kernel::ball(a.dim()), ball_core_set_bound(epsilon), epsilon, opt);
}

UnionTranslation union_translation_witness(const PointSet& a, const PointSet& b, const Kernel& k,
                                           const SolveOptions& opt) {
  require(!a.empty() && !b.empty(), ErrorCode::invalid_input,
          "union translation needs non-empty sets");
  const auto sa = circumradius(a, k, opt);
  const auto sb = circumradius(b, k, opt);
  UnionTranslation out;
  out.bound = std::max(sa.radius, sb.radius);
  out.a = -grow_center(k, sa, out.bound);
  out.b = -grow_center(k, sb, out.bound);
  out.value = circumradius(a.translated(out.a).united(b.translated(out.b)), k, opt).radius;
  require(out.value <= out.bound + 1e-6, ErrorCode::internal,
          "union translation exceeded max(R(A,K), R(B,K))");
  return out;
}

DiversityOracle kernel_oracle(Kernel k, SolveOptions opt) {
  return [k = std::move(k), opt](const PointSet& s) { return circumradius(s, k, opt).radius; };
}

UnionSearchResult min_union_translation(const PointSet& a, const PointSet& b,
                                        const DiversityOracle& delta,
                                        const UnionSearchOptions& opt) {
  require(!a.empty() && !b.empty(), ErrorCode::invalid_input,
          "union translation search needs non-empty sets");
  require(a.dim() == b.dim(), ErrorCode::dimension_mismatch,
          "union translation search: dimensions differ");
  require(opt.starts >= 1 && opt.iterations >= 1, ErrorCode::invalid_input,
          "union translation search needs at least one start and one iteration");
  const auto d = static_cast<Eigen::Index>(a.dim());

  const auto value_at = [&](const Point& offset) { return delta(a.united(b.translated(offset))); };

  // Per-coordinate bracket wide enough to slide B fully past A either way.
  const Eigen::VectorXd amin = coord_min(a), amax = coord_max(a);
  const Eigen::VectorXd bmin = coord_min(b), bmax = coord_max(b);
  const double width = (amax - amin).sum() + (bmax - bmin).sum() + 1.0;
  const Eigen::VectorXd lo = (amin - bmax).array() - width;
  const Eigen::VectorXd hi = (amax - bmin).array() + width;

  std::vector<Point> starts;
  starts.push_back(Point::Zero(d));
  if (opt.starts >= 2) {
    const Point ca = a.as_matrix().colwise().mean();
    const Point cb = b.as_matrix().colwise().mean();
    starts.push_back(ca - cb);
  }
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (starts.size() < static_cast<std::size_t>(opt.starts)) {
    Point s(d);
    for (Eigen::Index i = 0; i < d; ++i) s(i) = lo(i) + unit(rng) * (hi(i) - lo(i));
    starts.push_back(std::move(s));
  }

  constexpr double kInvPhi = 0.6180339887498949;
  UnionSearchResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& start : starts) {
    Point cur = start;
    double cur_val = value_at(cur);
    int sweeps = 0;
    for (int it = 0; it < opt.iterations; ++it) {
      ++sweeps;
      double gained = 0.0;
      for (Eigen::Index i = 0; i < d; ++i) {
        Point probe = cur;
        const auto along = [&](double t) {
          probe(i) = t;
          return value_at(probe);
        };
        double left = lo(i), right = hi(i);
        const double stop = 1e-10 * (1.0 + right - left);
        double x1 = right - kInvPhi * (right - left);
        double x2 = left + kInvPhi * (right - left);
        double f1 = along(x1), f2 = along(x2);
        double arg = cur(i), arg_val = cur_val;
        while (right - left > stop) {
          if (f1 <= f2) {
            if (f1 < arg_val) { arg = x1; arg_val = f1; }
            right = x2; x2 = x1; f2 = f1;
            x1 = right - kInvPhi * (right - left);
            f1 = along(x1);
          } else {
            if (f2 < arg_val) { arg = x2; arg_val = f2; }
            left = x1; x1 = x2; f1 = f2;
            x2 = left + kInvPhi * (right - left);
            f2 = along(x2);
          }
        }
        if (f1 < arg_val) { arg = x1; arg_val = f1; }
        if (f2 < arg_val) { arg = x2; arg_val = f2; }
        if (arg_val < cur_val) {
          gained += cur_val - arg_val;
          cur(i) = arg;
          cur_val = arg_val;
        }
      }
      if (gained <= 1e-13 * (1.0 + std::abs(cur_val))) break;
    }
    if (cur_val < best.value) best = {cur_val, cur, sweeps};
  }
  return best;
}

UnionCheck check_union_translation(const PointSet& a, const PointSet& b,
                                   const DiversityOracle& delta, const UnionSearchOptions& opt,
                                   double tol) {
  UnionCheck out;
  out.search = min_union_translation(a, b, delta, opt);
  out.min_value = out.search.value;
  out.max_individual = std::max(delta(a), delta(b));
  out.holds = out.min_value <= out.max_individual + tol;
  return out;
}

}  // namespace circumdiv
