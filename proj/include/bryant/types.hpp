#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace bryant {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// The point at infinity of the Riemann sphere. Any value with an infinite
/// component is treated as this marker.
inline Complex infinity() {
  return {std::numeric_limits<double>::infinity(), 0.0};
}

inline bool is_infinite(Complex z) {
  return std::isinf(z.real()) || std::isinf(z.imag());
}

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Distance on the Riemann sphere that tolerates the infinity marker.
inline bool same_point(Complex a, Complex b, double tol) {
  if (is_infinite(a) || is_infinite(b)) return is_infinite(a) && is_infinite(b);
  return std::abs(a - b) <= tol * (1.0 + std::abs(a));
}

/// Invalid input: a precondition of an operation does not hold.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed (step underflow, non-convergence).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bryant
