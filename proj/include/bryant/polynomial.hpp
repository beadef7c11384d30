#pragma once

#include <utility>
#include <vector>

#include "bryant/types.hpp"

namespace bryant {

/// Dense complex polynomial, coefficients stored lowest degree first.
/// Trailing (highest-degree) exact zeros are always removed, so the zero
/// polynomial has an empty coefficient list and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs);

  static Polynomial constant(Complex c);
  static Polynomial monomial(Complex c, int power);
  /// The identity polynomial z.
  static Polynomial z();

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int k) const;
  Complex leading() const;

  Complex operator()(Complex z) const;
  /// Sum of |c_k| |z|^k, the natural scale for rounding error in P(z).
  double magnitude_at(Complex z) const;
  double max_abs_coeff() const;

  Polynomial derivative() const;
  /// Coefficients of P(zeta + p) as a polynomial in zeta.
  Polynomial taylor_shift(Complex p) const;
  /// z^n P(1/z) for n >= degree.
  Polynomial reversed(int n) const;
  /// Number of leading low-order coefficients with |c_k| <= rel_tol * max|c|.
  int low_order_zeros(double rel_tol = 0.0) const;
  /// Divide by z^k, dropping the k lowest coefficients.
  Polynomial shift_down(int k) const;
  Polynomial shift_up(int k) const;
  /// Drop high-order coefficients below rel_tol * max|c|.
  Polynomial trimmed(double rel_tol) const;
  /// Synthetic division by (z - r); the remainder is discarded.
  Polynomial deflate(Complex r) const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Complex s, const Polynomial& p);

 private:
  void trim_exact();
  std::vector<Complex> coeffs_;
};

/// All roots of p (with multiplicity) via eigenvalues of the companion
/// matrix followed by one Newton polish step. Unsorted.
std::vector<Complex> companion_roots(const Polynomial& p);

}  // namespace bryant
