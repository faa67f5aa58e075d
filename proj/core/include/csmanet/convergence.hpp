#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace csmanet {

/// Absolute floor used in relative-change denominators so that near-zero
/// values do not stall convergence tests.
inline constexpr double kRelFloor = 1e-12;

/// max_i |a_i - b_i| / max(|a_i|, floor)
inline double max_rel_delta(const std::vector<double>& a,
                            const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double denom = std::max(std::abs(a[i]), kRelFloor);
    worst = std::max(worst, std::abs(a[i] - b[i]) / denom);
  }
  return worst;
}

/// Iterations-to-convergence the way the experiments count them: the
/// smallest n such that max_j |x_j[n] - x_j*| / |x_j*| < rel_tol, where x*
/// is the final value of the recorded history. Returns history.size() when
/// the test is never met (including in the last entry, which can happen for
/// an exactly-zero component).
inline int iterations_within(const std::vector<std::vector<double>>& history,
                             double rel_tol) {
  if (history.empty()) return 0;
  const std::vector<double>& last = history.back();
  for (std::size_t n = 0; n < history.size(); ++n) {
    double worst = 0.0;
    for (std::size_t j = 0; j < last.size(); ++j) {
      const double denom = std::max(std::abs(last[j]), kRelFloor);
      worst = std::max(worst, std::abs(history[n][j] - last[j]) / denom);
    }
    if (worst < rel_tol) return static_cast<int>(n) + 1;
  }
  return static_cast<int>(history.size());
}

} // namespace csmanet
