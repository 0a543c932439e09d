#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "circumdiv/circumradius.hpp"
#include "circumdiv/diversity.hpp"
#include "circumdiv/geom.hpp"
#include "circumdiv/kernel.hpp"

namespace circumdiv {

/// Labeled points together with the kernel realizing a diversity on them.
struct Embedding {
  PointSet points;
  Kernel kernel;

  FiniteDiversity diversity(const SolveOptions& opt = {}) const;

  /// Builds the embedding and checks kernel_diversity against `target` on
  /// every subset with at most `max_size` elements (0 means all), within
  /// tol * max(1, |value|). Throws Error(internal) on disagreement.
  static Embedding verified(PointSet points, Kernel kernel, const FiniteDiversity& target,
                            std::size_t max_size = 0, double tol = 1e-6);
};

struct SymmetricCheck {
  bool embeddable = true;
  /// Set when embeddable is false: the first failing cardinality and the
  /// ratio f(k-2)/f(k-1) against (k-2)/(k-1).
  std::size_t k = 0;
  double ratio = 0.0;
  double bound = 0.0;
  /// "criterion", or "not_monotone" when f decreases at k.
  std::string reason;
};

/// Ratio criterion for symmetric tables. Throws NotSymmetric.
SymmetricCheck symmetric_embeddable(const FiniteDiversity& d);

struct SymmetricEmbedOptions {
  std::size_t max_dim = 64;
  SolveOptions solve;
};

/// Inductive product construction; the kernel is a product tree of standard
/// simplices. Throws Error(criterion_failed) when the ratio criterion fails
/// and Error(budget_exceeded) when the dimension would exceed max_dim.
Embedding symmetric_embed(const FiniteDiversity& d, const SymmetricEmbedOptions& opt = {});

/// Dimension of symmetric_embed's output for n labels.
std::size_t symmetric_embed_dim(std::size_t n);

/// Three labels with equal pair values p > 0 and triple value x * p,
/// 1 <= x <= 2. Throws Error(invalid_input) otherwise.
Embedding three_point_embed(const FiniteDiversity& d);

/// Frechet embedding into the unit cube. Throws Error(not_diameter).
Embedding diameter_embed(const FiniteDiversity& d);

/// Sum over coordinates of the maximum, minus the minimum coordinate sum.
double delta_neg(const PointSet& a);

/// Table of delta_neg, cross-checked against the halfspace LP for the
/// negative simplex on every subset (tolerance 1e-6). Throws Error(internal)
/// on disagreement.
FiniteDiversity simplex_embed_verify(const PointSet& p);

struct NegTypeReport {
  bool is_negative_type = true;
  /// Largest eigenvalue of the form restricted to zero-sum vectors.
  double max_eigenvalue = 0.0;
  double threshold = 0.0;
  /// Indexed by mask - 1 over the non-empty subsets; present only when the
  /// table is not of negative type. Zero sum, max-norm 1.
  std::vector<double> witness;
  /// Direct evaluation of the form on `witness`.
  double witness_value = 0.0;
};

inline constexpr std::size_t kMaxNegTypeLabels = 6;

/// sum over non-empty A, B of x_A x_B delta(A u B); x indexed by mask - 1.
double negative_type_form(const FiniteDiversity& d, const std::vector<double>& x);

/// Throws Error(invalid_input) for more than 6 labels.
NegTypeReport negative_type_check(const FiniteDiversity& d);

/// Largest delta(A) - k / ((k+1)(k-1)) * sum_a delta(A \ {a}) over subsets
/// with k + 1 >= 3 elements; positive values rule out an embedding.
double subset_bound_excess(const FiniteDiversity& d);

enum class BallReason { ok, metric_not_euclidean, rank_exceeds_d, subset_mismatch };

std::string_view to_string(BallReason r) noexcept;

struct SubsetMismatch {
  Mask subset = 0;
  double expected = 0.0;  // the table value
  double got = 0.0;       // enclosing-ball radius of the embedded points
};

struct BallDecision {
  bool embeddable = false;
  BallReason reason = BallReason::ok;
  std::optional<SubsetMismatch> mismatch;
  std::optional<Embedding> embedding;
  /// Gram eigenvalues in descending order.
  std::vector<double> eigenvalues;
  std::size_t rank = 0;
  std::vector<std::string> warnings;
};

/// Decides embeddability into the Euclidean ball diversity of R^d for
/// tables determined by their subsets of size at most d + 1. Pair values
/// are half Euclidean distances, so the metric realized is twice the
/// induced one. Throws Error(precondition_unmet) when some larger subset
/// differs from the max over its (d+1)-subsets by more than 1e-6.
BallDecision ball_embed_decide(const FiniteDiversity& d, std::size_t dim,
                               const SolveOptions& opt = {});

}  // namespace circumdiv
