#include "circumdiv/tolerance.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

namespace circumdiv {
namespace {
std::atomic<double> g_absolute{1e-7};
std::atomic<double> g_relative{1e-9};
}  // namespace

Tolerances tolerances() noexcept {
  return {g_absolute.load(std::memory_order_relaxed), g_relative.load(std::memory_order_relaxed)};
}

void set_tolerances(const Tolerances& t) noexcept {
  g_absolute.store(t.absolute, std::memory_order_relaxed);
  g_relative.store(t.relative, std::memory_order_relaxed);
}

bool approx_equal(double a, double b, const Tolerances& t) noexcept {
  return std::abs(a - b) <= t.absolute + t.relative * std::max(std::abs(a), std::abs(b));
}

}  // namespace circumdiv
