#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "circumdiv/circumradius.hpp"
#include "circumdiv/error.hpp"
#include "circumdiv/geom.hpp"
#include "circumdiv/kernel.hpp"

namespace circumdiv {

/// Subset of a ground set, bit i standing for label i.
using Mask = std::uint32_t;

inline constexpr std::size_t kMaxGroundSet = 16;

inline int popcount(Mask m) noexcept { return __builtin_popcount(m); }

/// A set function on the subsets of a labeled ground set of at most 16
/// elements, stored as a table indexed by bitmask. The empty set and
/// singletons always map to 0; every value is finite and non-negative.
class FiniteDiversity {
 public:
  /// Throws Error(invalid_input) when the table has the wrong length,
  /// labels repeat, a value is negative or non-finite, or the empty set or
  /// a singleton has a non-zero value.
  FiniteDiversity(std::vector<std::string> labels, std::vector<double> values);

  /// Fills every subset with at least two elements from `fn`.
  static FiniteDiversity from_function(std::vector<std::string> labels,
                                       const std::function<double(Mask)>& fn);

  std::size_t size() const noexcept { return labels_.size(); }
  Mask full_mask() const noexcept { return static_cast<Mask>((std::size_t{1} << size()) - 1); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<double>& values() const noexcept { return values_; }

  double operator[](Mask m) const { return values_[m]; }
  double value(Mask m) const;

  /// Index of a label; throws Error(invalid_input) if absent.
  std::size_t index_of(const std::string& label) const;
  Mask mask_of(const std::vector<std::string>& labels) const;
  /// Labels of `m` in ground-set order.
  std::vector<std::string> members(Mask m) const;
  /// Comma-joined members, e.g. "a,b,c".
  std::string name(Mask m) const;

  friend bool operator==(const FiniteDiversity&, const FiniteDiversity&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> values_;
};

/// "a", "b", ... "p".
std::vector<std::string> default_labels(std::size_t n);

/// |A| - 1
FiniteDiversity count_diversity(std::vector<std::string> labels);
/// c on every subset with at least two elements.
FiniteDiversity constant_diversity(std::vector<std::string> labels, double c = 1.0);
/// f[|A| - 1]; f has one entry per cardinality 1..n and f[0] must be 0.
FiniteDiversity symmetric_diversity(std::vector<std::string> labels, const std::vector<double>& f);

struct Violation {
  std::string axiom;       // "D1", "D2" or "monotone"
  std::vector<Mask> sets;  // D1: {A}; D2: {A, B, C}; monotone: {A, A'} with A subset of A'
  double deficit = 0.0;    // how far the inequality fails
};

struct AxiomReport {
  bool is_semidiversity = true;
  bool is_diversity = true;
  bool is_monotone = true;
  std::vector<Violation> violations;
};

struct AxiomOptions {
  /// Collect every violation (up to max_violations) instead of stopping
  /// each check at its first one.
  bool full_report = false;
  std::size_t max_violations = 64;
  /// Slack allowed in inequalities; negative means the global absolute
  /// tolerance.
  double tolerance = -1.0;
};

/// Exhaustive check of (D1), (D2) and monotonicity.
///
/// (D2) is verified through an equivalent reduced family: a table satisfying
/// (D1') obeys (D2) iff it is monotone and
///   delta(U) <= delta(P) + delta((U \ P) u {b})   for all b in P subset U.
/// Each reduced inequality is itself the (D2) instance A = P, B = {b},
/// C = U \ P, and a monotonicity failure delta(S) > delta(S u {x}) is the
/// instance A = S, B = {x}, C = {}; reported triples are genuine.
AxiomReport check_axioms(const FiniteDiversity& d, const AxiomOptions& opt = {});

/// n x n matrix of pair values.
Matrix induced_metric(const FiniteDiversity& d);

/// delta(A) = max pairwise distance. Throws Error(invalid_input) unless `m`
/// is a semimetric (square, symmetric, zero diagonal, non-negative,
/// triangle inequality within 1e-9 relative).
FiniteDiversity diameter_diversity(const Matrix& m, std::vector<std::string> labels = {});

/// First subset whose value differs from its diameter by more than tol, or
/// 0 when d is a diameter diversity.
Mask diameter_witness(const FiniteDiversity& d, double tol = 1e-9);
bool is_diameter(const FiniteDiversity& d, double tol = 1e-9);

/// Sum over coordinates of the coordinate range.
double l1_value(const PointSet& a);
DiversityOracle l1_oracle();
FiniteDiversity l1_diversity(const PointSet& p);

/// R(., K) on every subset of the labeled points. At most 16 points.
FiniteDiversity kernel_diversity(const PointSet& p, const Kernel& k, const SolveOptions& opt = {});

/// Pointwise max; throws Error(invalid_input) if the label lists differ.
FiniteDiversity max_combine(const FiniteDiversity& a, const FiniteDiversity& b);
/// factor * delta, factor > 0.
FiniteDiversity scale(double factor, const FiniteDiversity& d);

struct SymmetricProfile {
  /// f[k] is the value on subsets with k + 1 elements.
  std::vector<double> f;
};

/// Raised by symmetric_profile with two equal-size subsets whose values
/// differ.
class NotSymmetric : public Error {
 public:
  NotSymmetric(Mask first, Mask second, const std::string& what)
      : Error(ErrorCode::not_symmetric, what), first_(first), second_(second) {}
  Mask first() const noexcept { return first_; }
  Mask second() const noexcept { return second_; }

 private:
  Mask first_;
  Mask second_;
};

/// Values compared with tolerance tol * max(1, |x|, |y|).
SymmetricProfile symmetric_profile(const FiniteDiversity& d, double tol = 1e-9);

}  // namespace circumdiv
