#pragma once

#include <array>

#include <vector>

#include "bryant/polynomial.hpp"
#include "bryant/types.hpp"

namespace bryant {

/// Branch cut angle of the default (principal) branch: the negative real axis.
inline constexpr double kPrincipalCut = kPi;

/// A function z^alpha * P(z) / Q(z). Purely rational maps carry alpha = 0;
/// for non-integer alpha, P(0) and Q(0) are nonzero and Q is monic.
/// Common roots of P and Q are cancelled on construction.
class PowerRational {
 public:
  /// The zero function.
  PowerRational();
  PowerRational(double alpha, Polynomial numer, Polynomial denom);
  /// Convenience for purely rational maps.
  PowerRational(Polynomial numer, Polynomial denom) : PowerRational(0.0, std::move(numer), std::move(denom)) {}

  static PowerRational constant(Complex c);
  static PowerRational identity();
  /// c * z^alpha.
  static PowerRational power(double alpha, Complex c = 1.0);
  static PowerRational polynomial(std::vector<Complex> coeffs);

  double alpha() const { return alpha_; }
  const Polynomial& numer() const { return numer_; }
  const Polynomial& denom() const { return denom_; }

  bool is_zero() const { return numer_.is_zero(); }
  bool is_rational() const { return alpha_ == 0.0; }
  bool is_constant() const;
  /// Rational degree max(deg P, deg Q); only meaningful for rational maps.
  int degree() const;

  /// Evaluate on the branch of z^alpha whose cut lies along angle `cut`.
  /// Poles (and 0^alpha with alpha < 0) return the infinity marker.
  Complex operator()(Complex z, double cut = kPrincipalCut) const;
  /// Value at the point at infinity (limit z -> infinity), rational maps only.
  Complex value_at_infinity() const;

  PowerRational operator-() const;
  friend PowerRational operator*(const PowerRational& a, const PowerRational& b);
  friend PowerRational operator/(const PowerRational& a, const PowerRational& b);
  /// Sum requires alpha values differing by an integer.
  friend PowerRational operator+(const PowerRational& a, const PowerRational& b);
  friend PowerRational operator-(const PowerRational& a, const PowerRational& b);
  friend PowerRational operator*(Complex s, const PowerRational& a);

 private:
  void normalize();
  double alpha_ = 0.0;
  Polynomial numer_;
  Polynomial denom_;
};

/// z^alpha on the branch with arg in (cut - 2 pi, cut].
Complex branch_power(Complex z, double alpha, double cut = kPrincipalCut);
bool is_integer(double x);

Complex eval(const PowerRational& m, Complex z, double cut = kPrincipalCut);

/// Closed form: (z^a R)' = z^(a-1) (a R + z R').
PowerRational derivative(const PowerRational& m);

/// Taylor coefficients c0..c3 of m around z (z != 0 when alpha is not an integer).
std::array<Complex, 4> taylor4(const PowerRational& m, Complex z);

/// (m''/m')' - (m''/m')^2 / 2, from local Taylor coefficients of m or of 1/m
/// (whichever is better conditioned), so it stays accurate near poles.
/// Throws DomainError at a critical point.
Complex schwarzian(const PowerRational& m, Complex z);

struct RootSet {
  std::vector<Complex> roots;  // finite solutions with multiplicity, sorted by (re, im)
  bool clustered = false;      // repeated or nearly repeated roots were merged
};

/// Finite solutions of m(z) = w for rational m. An infinite w solves Q(z) = 0.
RootSet roots(const PowerRational& m, Complex w);

/// m expressed in the local coordinate vanishing at p: zeta = z - p, or
/// zeta = 1/z at infinity. Non-integer exponents are supported only at 0 and
/// infinity.
PowerRational local_form(const PowerRational& m, Complex p);
/// Order of vanishing at zeta = 0 of a function already in local form.
double order_at_origin(const PowerRational& m);
double order_at(const PowerRational& m, Complex p);
/// Order at p of the 1-form f dz (accounts for dz = -dzeta / zeta^2 at infinity).
double form_order_at(const PowerRational& f, Complex p);

/// Factorisation g = zeta^(1+beta) g_hat, f = zeta^-(1+I) f_hat near an end.
struct EndExpansion {
  Complex puncture;
  double beta = 0.0;
  double bigI = 0.0;
  Complex g_hat0;
  Complex f_hat0;
  PowerRational g_hat;  // in the local coordinate
  PowerRational f_hat;  // coefficient of the local 1-form
  bool rotated = false; // data was replaced by (-1/g, g^2 f) before expansion
};

EndExpansion end_expansion(const PowerRational& g, const PowerRational& f, Complex puncture);

/// End expansion after the metric-preserving rotation (g, f) -> (-1/g, g^2 f)
/// whenever g has a pole at the puncture, so that g stays bounded on the end.
EndExpansion normalized_end_expansion(const PowerRational& g, const PowerRational& f, Complex puncture);

/// Curvature decay exponent 2 + 2 (1 + beta) / I predicted for an end.
double predicted_decay_exponent(const EndExpansion& e);

/// Mobius transform (a w + b) / (c w + d) on the extended plane.
struct Mobius {
  Complex a = 1.0, b = 0.0, c = 0.0, d = 1.0;
  Complex operator()(Complex w) const;
  Mobius inverse() const;
  friend Mobius operator*(const Mobius& x, const Mobius& y);
};

/// M o m for rational m; for non-rational m only diagonal M is supported.
PowerRational compose(const Mobius& M, const PowerRational& m);

}  // namespace bryant
