#pragma once

#include <algorithm>
#include <cmath>

namespace invopt {

// Relative certification tolerance: tau = 1e-9 * (1 + magnitude of the compared quantities).
inline constexpr double kRelTol = 1e-9;

inline double tolerance(double a, double b = 0.0) {
  return kRelTol * (1.0 + std::max(std::fabs(a), std::fabs(b)));
}

// lhs <= rhs up to tau.
inline bool leq_tol(double lhs, double rhs) { return lhs <= rhs + tolerance(lhs, rhs); }

inline bool eq_tol(double a, double b) { return std::fabs(a - b) <= tolerance(a, b); }

}  // namespace invopt
