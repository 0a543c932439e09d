#include "circumdiv/cli/demos.hpp"

#include <limits>

#include "circumdiv/diversity.hpp"
#include "circumdiv/error.hpp"
#include "circumdiv/linprog.hpp"

namespace circumdiv::cli {

namespace {

using json::Json;

constexpr double kMargin = 1e-6;

double half_sum(const PointSet& s, const Kernel& k, const Kernel& kp, const SolveOptions& opt) {
  return 0.5 * circumradius(s, k, opt).radius + 0.5 * circumradius(s, kp, opt).radius;
}

AnchorEval evaluate(const NonconvexDemo& d, const Point& b, const SolveOptions& opt) {
  const PointSet u = d.a.united(d.b.translated(b));
  AnchorEval e;
  e.offset = b;
  e.radius_k = circumradius(u, d.k, opt).radius;
  e.radius_k_prime = circumradius(u, d.k_prime, opt).radius;
  e.value = 0.5 * e.radius_k + 0.5 * e.radius_k_prime;
  return e;
}

// min over (b, l1, x1, l2, x2) of (l1 + l2) / 2 subject to
// A u (B + b) inside l1 K + x1 and inside l2 K' + x2.
std::pair<double, Point> exact_min(const NonconvexDemo& d) {
  const auto& h1 = *d.k.as<shape::HPolytope>();
  const auto& h2 = *d.k_prime.as<shape::HPolytope>();
  const std::size_t rows = (d.a.size() + d.b.size()) *
                           static_cast<std::size_t>(h1.normals.rows() + h2.normals.rows());
  lp::LinearProgram prog;
  prog.objective = Eigen::VectorXd::Zero(8);
  prog.objective(2) = 0.5;
  prog.objective(5) = 0.5;
  prog.constraints = Matrix::Zero(static_cast<Eigen::Index>(rows), 8);
  prog.bounds = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows));
  prog.lower = Eigen::VectorXd::Constant(8, -std::numeric_limits<double>::infinity());
  prog.lower(2) = 0.0;
  prog.lower(5) = 0.0;
  Eigen::Index r = 0;
  for (const auto& [h, col] : {std::pair{&h1, Eigen::Index{2}}, std::pair{&h2, Eigen::Index{5}}}) {
    for (int shifted = 0; shifted < 2; ++shifted) {
      for (const auto& p : shifted ? d.b : d.a) {
        for (Eigen::Index i = 0; i < h->normals.rows(); ++i, ++r) {
          if (shifted) prog.constraints.row(r).head(2) = h->normals.row(i);
          prog.constraints(r, col) = -h->offsets(i);
          prog.constraints.row(r).segment(col + 1, 2) = -h->normals.row(i);
          prog.bounds(r) = -h->normals.row(i).dot(p);
        }
      }
    }
  }
  const auto res = lp::solve(prog);
  require(res.optimal(), ErrorCode::internal, "translation LP did not reach optimality");
  return {res.objective_value, res.solution.head(2)};
}

}  // namespace

L1Demo demo_l1_counterexample(std::uint64_t seed) {
  L1Demo d{PointSet::of({{0, 0}, {1, 0}}), PointSet::of({{0, 0}, {0, 1}}), 0.0, 0.0, Point(), false};
  const auto oracle = l1_oracle();
  const auto check = check_union_translation(d.a, d.b, oracle, {5, 200, seed});
  d.min_union_value = check.min_value;
  d.max_individual = check.max_individual;
  d.offset = check.search.offset;
  d.violates_condition = d.min_union_value > d.max_individual + kMargin;
  return d;
}

NonconvexDemo demo_nonconvex(std::uint64_t seed) {
  const auto a = PointSet::of({{1, 0}, {0, 1}, {1, 1}});
  const auto b = PointSet::of({{1, 0}, {2, 0}, {1, 1}});
  const auto bp = PointSet::of({{0, 1}, {1, 1}, {0, 2}});
  NonconvexDemo d{a,   b,  bp, Kernel::polygon(a.united(b)), Kernel::polygon(a.united(bp)),
                  0.0, 0.0, 0.0, {}, {}, {}, 0.0, Point(), 0.0, Point(), false};
  const SolveOptions opt{seed};
  d.delta_a = half_sum(d.a, d.k, d.k_prime, opt);
  d.delta_b = half_sum(d.b, d.k, d.k_prime, opt);
  d.max_individual = std::max(d.delta_a, d.delta_b);
  d.at_zero = evaluate(d, make_point({0, 0}), opt);
  d.at_shift = evaluate(d, make_point({-1, 1}), opt);

  const DiversityOracle delta = [&](const PointSet& s) { return half_sum(s, d.k, d.k_prime, opt); };
  d.multistart = min_union_translation(d.a, d.b, delta, {5, 200, seed});

  d.grid_min = std::numeric_limits<double>::infinity();
  for (int i = -30; i <= 30; ++i)
    for (int j = -30; j <= 30; ++j) {
      const Point off = make_point({0.1 * i, 0.1 * j});
      const double v = delta(d.a.united(d.b.translated(off)));
      if (v < d.grid_min) {
        d.grid_min = v;
        d.grid_offset = off;
      }
    }
  std::tie(d.lp_min, d.lp_offset) = exact_min(d);
  d.exceeds = d.multistart.value > d.max_individual + kMargin;
  return d;
}

FigureScene demo_figure(std::uint64_t seed) {
  FigureScene s{Kernel::simplex_pos(2), {}};
  const SolveOptions opt{seed};
  const auto add = [&](std::string name, PointSet pts) {
    auto sol = circumradius(pts, s.kernel, opt);
    s.groups.push_back({std::move(name), std::move(pts), std::move(sol)});
  };
  add("abdgk", PointSet::of({{0, 0}, {2, 0}, {0, 2}, {1, 0.5}, {0.5, 1}}, {"a", "b", "d", "g", "k"}));
  add("cef", PointSet::of({{3, 1}, {3.6, 1}, {3, 1.6}}, {"c", "e", "f"}));
  add("hi", PointSet::of({{1, 3}, {2, 3}}, {"h", "i"}));
  return s;
}

Json to_json(const L1Demo& d) {
  return Json{{"demo", "l1-counterexample"},
              {"A", json::to_json(d.a)},
              {"B", json::to_json(d.b)},
              {"min_union_value", d.min_union_value},
              {"max_individual", d.max_individual},
              {"offset", json::to_json(d.offset)},
              {"violates_condition", d.violates_condition}};
}

namespace {
Json anchor_json(const AnchorEval& e) {
  return Json{{"offset", json::to_json(e.offset)},
              {"radius_K", e.radius_k},
              {"radius_K_prime", e.radius_k_prime},
              {"value", e.value}};
}
}  // namespace

Json to_json(const NonconvexDemo& d) {
  return Json{{"demo", "nonconvex"},
              {"A", json::to_json(d.a)},
              {"B", json::to_json(d.b)},
              {"B_prime", json::to_json(d.b_prime)},
              {"K", json::to_json(d.k)},
              {"K_prime", json::to_json(d.k_prime)},
              {"delta_A", d.delta_a},
              {"delta_B", d.delta_b},
              {"max_individual", d.max_individual},
              {"anchor_zero", anchor_json(d.at_zero)},
              {"anchor_shift", anchor_json(d.at_shift)},
              {"multistart_min", d.multistart.value},
              {"multistart_offset", json::to_json(d.multistart.offset)},
              {"grid_min", d.grid_min},
              {"grid_offset", json::to_json(d.grid_offset)},
              {"lp_min", d.lp_min},
              {"lp_offset", json::to_json(d.lp_offset)},
              {"exceeds_max", d.exceeds}};
}

Json to_json(const FigureScene& s) {
  Json groups = Json::array();
  for (const auto& g : s.groups)
    groups.push_back(Json{{"name", g.name},
                          {"points", json::to_json(g.points)},
                          {"radius", g.solution.radius},
                          {"center", json::to_json(g.solution.center)}});
  return Json{{"demo", "figure"}, {"kernel", json::to_json(s.kernel)}, {"groups", std::move(groups)}};
}

}  // namespace circumdiv::cli
