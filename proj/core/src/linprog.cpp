#include "circumdiv/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

#include "circumdiv/error.hpp"

namespace circumdiv::lp {

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

// How an original variable is expressed through non-negative columns.
enum class VarKind { shifted, reflected, split };

struct VarMap {
  VarKind kind;
  Index column;
  Index negative_column;  // split only
  double anchor;          // lower bound (shifted) or upper bound (reflected)
};

struct Tableau {
  // rows() - 1 constraint rows followed by the reduced-cost row; the last
  // column holds the right-hand side (and -z in the reduced-cost row).
  MatrixXd t;
  std::vector<Index> basis;

  Index rows() const { return t.rows() - 1; }
  Index cols() const { return t.cols() - 1; }
  double& rhs(Index r) { return t(r, cols()); }

  void pivot(Index r, Index c) {
    t.row(r) /= t(r, c);
    for (Index i = 0; i < t.rows(); ++i) {
      if (i == r) continue;
      const double f = t(i, c);
      if (f != 0.0) t.row(i) -= f * t.row(r);
    }
    basis[static_cast<std::size_t>(r)] = c;
  }
};

void dump(const Tableau& tab, const SolverOptions& opt, const char* phase) {
  if (opt.verbosity <= 0 || opt.log == nullptr) return;
  Eigen::IOFormat fmt(6, 0, " ", "\n", "  [", "]");
  *opt.log << "simplex " << phase << " tableau (" << tab.rows() << "x" << tab.cols() << ")\n"
           << tab.t.format(fmt) << "\n";
}

enum class PhaseOutcome { optimal, unbounded };

struct PhaseStats {
  std::size_t iterations = 0;
  bool used_bland = false;
};

PhaseOutcome run_phase(Tableau& tab, Index allowed_columns, const SolverOptions& opt,
                       PhaseStats& stats) {
  const Index m = tab.rows();
  const Index obj = m;
  const std::size_t degenerate_limit =
      opt.degenerate_factor * static_cast<std::size_t>(m + tab.cols());
  std::size_t degenerate_run = 0;
  bool bland = false;

  for (;;) {
    if (stats.iterations >= opt.max_iterations)
      fail(ErrorCode::numerical, "simplex iteration limit reached");

    Index enter = -1;
    double best = -opt.optimality_tolerance;
    for (Index j = 0; j < allowed_columns; ++j) {
      const double r = tab.t(obj, j);
      if (r < best) {
        enter = j;
        if (bland) break;
        best = r;
      }
    }
    if (enter < 0) return PhaseOutcome::optimal;

    Index leave = -1;
    double best_ratio = kInf;
    for (Index i = 0; i < m; ++i) {
      const double a = tab.t(i, enter);
      if (a <= opt.pivot_tolerance) continue;
      const double ratio = std::max(tab.rhs(i), 0.0) / a;
      const bool tie = leave >= 0 && std::abs(ratio - best_ratio) <= 1e-12 * (1.0 + best_ratio);
      if ((!tie && ratio < best_ratio) ||
          (tie && tab.basis[static_cast<std::size_t>(i)] <
                      tab.basis[static_cast<std::size_t>(leave)])) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave < 0) return PhaseOutcome::unbounded;

    if (best_ratio <= 1e-12) {
      if (++degenerate_run > degenerate_limit && !bland) {
        bland = true;
        stats.used_bland = true;
      }
    } else {
      degenerate_run = 0;
    }
    tab.pivot(leave, enter);
    ++stats.iterations;
  }
}

void check_finite(const LinearProgram& lp) {
  const auto finite = [](const auto& m) { return m.array().isFinite().all(); };
  const auto no_nan = [](const auto& m) { return !m.array().isNaN().any(); };
  require(finite(lp.objective) && finite(lp.constraints) && finite(lp.bounds),
          ErrorCode::invalid_input, "linear program contains non-finite coefficients");
  require(no_nan(lp.lower) && no_nan(lp.upper), ErrorCode::invalid_input,
          "linear program bounds contain NaN");
  const Index n = lp.objective.size();
  require(lp.constraints.cols() == n || lp.constraints.rows() == 0, ErrorCode::dimension_mismatch,
          "constraint matrix column count differs from objective length");
  require(lp.constraints.rows() == lp.bounds.size(), ErrorCode::dimension_mismatch,
          "constraint matrix row count differs from bounds length");
  require(lp.lower.size() == 0 || lp.lower.size() == n, ErrorCode::dimension_mismatch,
          "lower bound vector has wrong length");
  require(lp.upper.size() == 0 || lp.upper.size() == n, ErrorCode::dimension_mismatch,
          "upper bound vector has wrong length");
}

}  // namespace

LpResult solve(const LinearProgram& lp, const SolverOptions& opt) {
  check_finite(lp);
  const Index n = lp.objective.size();
  const Index m0 = lp.constraints.rows();
  const auto lower = [&](Index j) { return lp.lower.size() ? lp.lower(j) : -kInf; };
  const auto upper = [&](Index j) { return lp.upper.size() ? lp.upper(j) : kInf; };

  // Map each original variable onto non-negative columns.
  std::vector<VarMap> vars(static_cast<std::size_t>(n));
  Index ny = 0;
  std::vector<std::pair<Index, double>> upper_rows;  // (column, bound on column)
  for (Index j = 0; j < n; ++j) {
    const double lo = lower(j);
    const double hi = upper(j);
    auto& v = vars[static_cast<std::size_t>(j)];
    if (std::isfinite(lo)) {
      v = {VarKind::shifted, ny++, -1, lo};
      if (std::isfinite(hi)) upper_rows.emplace_back(v.column, hi - lo);
    } else if (std::isfinite(hi)) {
      v = {VarKind::reflected, ny++, -1, hi};
    } else {
      v = {VarKind::split, ny, ny + 1, 0.0};
      ny += 2;
    }
  }

  const Index m = m0 + static_cast<Index>(upper_rows.size());
  MatrixXd a = MatrixXd::Zero(m, ny);
  VectorXd b(m);
  VectorXd cost = VectorXd::Zero(ny);

  for (Index j = 0; j < n; ++j) {
    const auto& v = vars[static_cast<std::size_t>(j)];
    const double cj = lp.objective(j);
    switch (v.kind) {
      case VarKind::shifted: cost(v.column) += cj; break;
      case VarKind::reflected: cost(v.column) -= cj; break;
      case VarKind::split: cost(v.column) += cj; cost(v.negative_column) -= cj; break;
    }
  }
  for (Index i = 0; i < m0; ++i) {
    double rhs = lp.bounds(i);
    for (Index j = 0; j < n; ++j) {
      const double g = lp.constraints(i, j);
      if (g == 0.0) continue;
      const auto& v = vars[static_cast<std::size_t>(j)];
      switch (v.kind) {
        case VarKind::shifted: a(i, v.column) += g; rhs -= g * v.anchor; break;
        case VarKind::reflected: a(i, v.column) -= g; rhs -= g * v.anchor; break;
        case VarKind::split: a(i, v.column) += g; a(i, v.negative_column) -= g; break;
      }
    }
    b(i) = rhs;
  }
  for (std::size_t k = 0; k < upper_rows.size(); ++k) {
    const Index i = m0 + static_cast<Index>(k);
    a(i, upper_rows[k].first) = 1.0;
    b(i) = upper_rows[k].second;
  }

  // Columns: [structural ny | slacks m | artificials].
  std::vector<Index> artificial_rows;
  for (Index i = 0; i < m; ++i)
    if (b(i) < 0.0) artificial_rows.push_back(i);
  const Index n_art = static_cast<Index>(artificial_rows.size());
  const Index n_real = ny + m;
  const Index n_cols = n_real + n_art;

  Tableau tab;
  tab.t = MatrixXd::Zero(m + 1, n_cols + 1);
  tab.basis.assign(static_cast<std::size_t>(m), -1);
  for (Index i = 0; i < m; ++i) {
    tab.t.row(i).head(ny) = a.row(i);
    tab.t(i, ny + i) = 1.0;
    tab.rhs(i) = b(i);
    tab.basis[static_cast<std::size_t>(i)] = ny + i;
  }
  for (Index k = 0; k < n_art; ++k) {
    const Index i = artificial_rows[static_cast<std::size_t>(k)];
    tab.t.row(i) *= -1.0;
    tab.t(i, n_real + k) = 1.0;
    tab.basis[static_cast<std::size_t>(i)] = n_real + k;
  }

  LpResult result;
  PhaseStats stats;

  if (n_art > 0) {
    for (Index i : artificial_rows) {
      tab.t.row(m).head(n_real) -= tab.t.row(i).head(n_real);
      tab.t(m, n_cols) -= tab.rhs(i);
    }
    dump(tab, opt, "phase-1 start");
    run_phase(tab, n_real, opt, stats);
    const double infeasibility = -tab.t(m, n_cols);
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    if (infeasibility > opt.infeasibility_tolerance * scale) {
      result.status = Status::infeasible;
      result.iterations = stats.iterations;
      result.used_bland = stats.used_bland;
      return result;
    }
    // Drive zero-level artificials out of the basis where possible; rows
    // where that fails are redundant and stay inert.
    for (Index i = 0; i < m; ++i) {
      if (tab.basis[static_cast<std::size_t>(i)] < n_real) continue;
      Index best = -1;
      double best_abs = opt.pivot_tolerance;
      for (Index j = 0; j < n_real; ++j) {
        if (std::abs(tab.t(i, j)) > best_abs) {
          best_abs = std::abs(tab.t(i, j));
          best = j;
        }
      }
      if (best >= 0) tab.pivot(i, best);
    }
  }

  // Phase 2 reduced costs.
  tab.t.row(m).setZero();
  tab.t.row(m).head(ny) = cost.transpose();
  for (Index i = 0; i < m; ++i) {
    const Index bi = tab.basis[static_cast<std::size_t>(i)];
    const double cb = bi < ny ? cost(bi) : 0.0;
    if (cb != 0.0) tab.t.row(m) -= cb * tab.t.row(i);
  }
  dump(tab, opt, "phase-2 start");
  const PhaseOutcome outcome = run_phase(tab, n_real, opt, stats);
  dump(tab, opt, "final");
  result.iterations = stats.iterations;
  result.used_bland = stats.used_bland;
  if (outcome == PhaseOutcome::unbounded) {
    result.status = Status::unbounded;
    return result;
  }

  VectorXd y = VectorXd::Zero(ny);
  for (Index i = 0; i < m; ++i) {
    const Index bi = tab.basis[static_cast<std::size_t>(i)];
    if (bi < ny) y(bi) = std::max(tab.rhs(i), 0.0);
  }
  result.solution.resize(n);
  for (Index j = 0; j < n; ++j) {
    const auto& v = vars[static_cast<std::size_t>(j)];
    switch (v.kind) {
      case VarKind::shifted: result.solution(j) = v.anchor + y(v.column); break;
      case VarKind::reflected: result.solution(j) = v.anchor - y(v.column); break;
      case VarKind::split: result.solution(j) = y(v.column) - y(v.negative_column); break;
    }
  }
  result.duals.resize(m0);
  for (Index i = 0; i < m0; ++i) result.duals(i) = std::max(tab.t(m, ny + i), 0.0);
  result.objective_value = lp.objective.dot(result.solution);
  result.status = Status::optimal;
  return result;
}

double kkt_residual(const LinearProgram& lp, const LpResult& r) {
  if (!r.optimal()) return std::numeric_limits<double>::infinity();
  const Index n = lp.objective.size();
  const Index m = lp.constraints.rows();
  const VectorXd& x = r.solution;
  double worst = 0.0;
  const VectorXd slack = m ? VectorXd(lp.bounds - lp.constraints * x) : VectorXd();
  for (Index i = 0; i < m; ++i) {
    worst = std::max(worst, -slack(i));
    worst = std::max(worst, -r.duals(i));
    worst = std::max(worst, std::abs(r.duals(i) * slack(i)));
  }
  const VectorXd g = m ? VectorXd(lp.objective + lp.constraints.transpose() * r.duals)
                       : VectorXd(lp.objective);
  const double tol = 1e-9;
  for (Index j = 0; j < n; ++j) {
    const double lo = lp.lower.size() ? lp.lower(j) : -kInf;
    const double hi = lp.upper.size() ? lp.upper(j) : kInf;
    worst = std::max(worst, lo - x(j));
    worst = std::max(worst, x(j) - hi);
    const bool at_lo = std::isfinite(lo) && x(j) - lo <= tol * (1.0 + std::abs(lo));
    const bool at_hi = std::isfinite(hi) && hi - x(j) <= tol * (1.0 + std::abs(hi));
    if (at_lo && at_hi) continue;
    if (at_lo) worst = std::max(worst, -g(j));
    else if (at_hi) worst = std::max(worst, g(j));
    else worst = std::max(worst, std::abs(g(j)));
  }
  return worst;
}

}  // namespace circumdiv::lp
