#pragma once

namespace circumdiv {

/// Process-wide comparison tolerances. Equality assertions accept
/// |a - b| <= absolute + relative * max(|a|, |b|).
struct Tolerances {
  double absolute = 1e-7;
  double relative = 1e-9;
};

Tolerances tolerances() noexcept;
void set_tolerances(const Tolerances& t) noexcept;

bool approx_equal(double a, double b, const Tolerances& t) noexcept;
inline bool approx_equal(double a, double b) noexcept {
  return approx_equal(a, b, tolerances());
}

/// Sets tolerances for the lifetime of the guard, then restores the old ones.
class ScopedTolerances {
 public:
  explicit ScopedTolerances(const Tolerances& t) : saved_(tolerances()) { set_tolerances(t); }
  ~ScopedTolerances() { set_tolerances(saved_); }
  ScopedTolerances(const ScopedTolerances&) = delete;
  ScopedTolerances& operator=(const ScopedTolerances&) = delete;

 private:
  Tolerances saved_;
};

}  // namespace circumdiv
