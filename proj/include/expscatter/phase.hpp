#pragma once

#include <cmath>
#include <numbers>

namespace expscatter {

/// Reduce an angle to (-pi, pi].
inline double wrap_phase(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(angle, two_pi);  // [-pi, pi]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

/// Distance between two angles on the circle, in [0, pi].
inline double phase_distance(double a, double b) {
  return std::abs(wrap_phase(a - b));
}

}  // namespace expscatter
