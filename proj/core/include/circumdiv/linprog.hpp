#pragma once

#include <cstddef>
#include <iosfwd>

#include <Eigen/Dense>

namespace circumdiv::lp {

/// minimize  objective . x
/// subject to constraints * x <= bounds,  lower <= x <= upper.
///
/// `lower` and `upper` may be left empty, meaning -inf / +inf for every
/// variable. Individual entries may be +-infinity.
struct LinearProgram {
  Eigen::VectorXd objective;
  Eigen::MatrixXd constraints;
  Eigen::VectorXd bounds;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  std::size_t variable_count() const { return static_cast<std::size_t>(objective.size()); }
  std::size_t constraint_count() const { return static_cast<std::size_t>(constraints.rows()); }
};

enum class Status { optimal, infeasible, unbounded };

const char* to_string(Status s) noexcept;

struct LpResult {
  Status status = Status::infeasible;
  Eigen::VectorXd solution;       // empty unless optimal
  double objective_value = 0.0;   // meaningful only when optimal
  /// One non-negative multiplier per row of `constraints`, with
  /// objective + constraints^T * duals equal to the bound multipliers.
  Eigen::VectorXd duals;
  std::size_t iterations = 0;
  bool used_bland = false;

  bool optimal() const { return status == Status::optimal; }
};

struct SolverOptions {
  double pivot_tolerance = 1e-10;
  double optimality_tolerance = 1e-9;
  double infeasibility_tolerance = 1e-8;
  std::size_t max_iterations = 200000;
  /// Degenerate pivots tolerated before switching to Bland's rule is
  /// degenerate_factor * (rows + columns).
  std::size_t degenerate_factor = 5;
  int verbosity = 0;
  std::ostream* log = nullptr;  // tableau dumps when verbosity > 0
};

/// Dense two-phase primal simplex. Infeasible and unbounded problems are
/// reported through the status; non-finite input throws
/// Error(invalid_input).
LpResult solve(const LinearProgram& lp, const SolverOptions& options = {});

/// Largest violation among primal feasibility, dual sign, complementary
/// slackness and stationarity (with bound multipliers inferred from the
/// reduced costs) for an optimal result.
double kkt_residual(const LinearProgram& lp, const LpResult& result);

}  // namespace circumdiv::lp
