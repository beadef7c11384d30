#include "bryant/meromorphic.hpp"

#include <algorithm>
#include <numeric>

namespace bryant {

namespace {

constexpr double kStripTol = 1e-15;
constexpr double kCancelTol = 1e-10;
constexpr double kOrderTol = 1e-12;

// Zero the run of low-order coefficients that are negligible relative to the
// largest one. Used after Taylor shifts, which leave rounding residue where a
// root sits exactly at the shift point.
Polynomial clean_low_order(const Polynomial& p) {
  const int k = p.low_order_zeros(kOrderTol);
  if (k == 0 || p.is_zero()) return p;
  std::vector<Complex> c = p.coeffs();
  for (int i = 0; i < k && i < static_cast<int>(c.size()); ++i) c[i] = 0.0;
  return Polynomial(std::move(c));
}

}  // namespace

bool is_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

Complex branch_power(Complex z, double alpha, double cut) {
  if (z == Complex{}) {
    if (alpha > 0) return 0.0;
    if (alpha == 0) return 1.0;
    return infinity();
  }
  double arg = std::arg(z);
  while (arg > cut) arg -= 2.0 * kPi;
  while (arg <= cut - 2.0 * kPi) arg += 2.0 * kPi;
  return std::exp(alpha * Complex(std::log(std::abs(z)), arg));
}

PowerRational::PowerRational() : alpha_(0.0), numer_(), denom_(Polynomial::constant(1.0)) {}

PowerRational::PowerRational(double alpha, Polynomial numer, Polynomial denom)
    : alpha_(alpha), numer_(std::move(numer)), denom_(std::move(denom)) {
  normalize();
}

PowerRational PowerRational::constant(Complex c) {
  return PowerRational(0.0, Polynomial::constant(c), Polynomial::constant(1.0));
}

PowerRational PowerRational::identity() { return PowerRational(0.0, Polynomial::z(), Polynomial::constant(1.0)); }

PowerRational PowerRational::power(double alpha, Complex c) {
  return PowerRational(alpha, Polynomial::constant(c), Polynomial::constant(1.0));
}

PowerRational PowerRational::polynomial(std::vector<Complex> coeffs) {
  return PowerRational(0.0, Polynomial(std::move(coeffs)), Polynomial::constant(1.0));
}

void PowerRational::normalize() {
  if (denom_.is_zero()) throw DomainError("PowerRational: zero denominator");
  if (numer_.is_zero()) {
    alpha_ = 0.0;
    denom_ = Polynomial::constant(1.0);
    return;
  }

  // Move factors of z into the exponent.
  const int kp = numer_.low_order_zeros(kStripTol);
  const int kq = denom_.low_order_zeros(kStripTol);
  numer_ = numer_.shift_down(kp);
  denom_ = denom_.shift_down(kq);
  alpha_ += kp - kq;

  // Integer exponents fold back into P / Q.
  if (is_integer(alpha_)) {
    const int n = static_cast<int>(std::lround(alpha_));
    alpha_ = 0.0;
    if (n > 0) numer_ = numer_.shift_up(n);
    if (n < 0) denom_ = denom_.shift_up(-n);
  }

  // Cancel common nonzero roots.
  bool changed = true;
  while (changed && numer_.degree() >= 1 && denom_.degree() >= 1) {
    changed = false;
    for (const Complex r : companion_roots(denom_)) {
      if (r == Complex{}) continue;
      const bool root_of_q = std::abs(denom_(r)) <= kCancelTol * denom_.magnitude_at(r);
      const bool root_of_p = std::abs(numer_(r)) <= kCancelTol * numer_.magnitude_at(r);
      if (root_of_q && root_of_p) {
        numer_ = numer_.deflate(r);
        denom_ = denom_.deflate(r);
        changed = true;
        break;
      }
    }
  }

  const Complex s = 1.0 / denom_.leading();
  numer_ = s * numer_;
  denom_ = s * denom_;
}

bool PowerRational::is_constant() const {
  return is_zero() || (alpha_ == 0.0 && numer_.degree() == 0 && denom_.degree() == 0);
}

int PowerRational::degree() const { return std::max(numer_.degree(), denom_.degree()); }

Complex PowerRational::value_at_infinity() const {
  if (is_zero()) return 0.0;
  const double order = alpha_ + numer_.degree() - denom_.degree();
  if (order < 0) return 0.0;
  if (order > 0) return infinity();
  return numer_.leading() / denom_.leading();
}

Complex PowerRational::operator()(Complex z, double cut) const {
  if (is_infinite(z)) return value_at_infinity();
  const Complex p = numer_(z);
  const Complex q = denom_(z);
  if (q == Complex{}) return p == Complex{} ? Complex(std::nan(""), 0.0) : infinity();
  if (alpha_ == 0.0) return p / q;
  const Complex zp = branch_power(z, alpha_, cut);
  if (is_infinite(zp)) return p == Complex{} ? Complex{} : infinity();
  return zp * p / q;
}

PowerRational PowerRational::operator-() const { return PowerRational(alpha_, -numer_, denom_); }

PowerRational operator*(const PowerRational& a, const PowerRational& b) {
  return PowerRational(a.alpha_ + b.alpha_, a.numer_ * b.numer_, a.denom_ * b.denom_);
}

PowerRational operator/(const PowerRational& a, const PowerRational& b) {
  if (b.is_zero()) throw DomainError("PowerRational: division by the zero function");
  return PowerRational(a.alpha_ - b.alpha_, a.numer_ * b.denom_, a.denom_ * b.numer_);
}

PowerRational operator+(const PowerRational& a, const PowerRational& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const double shift = a.alpha_ - b.alpha_;
  if (!is_integer(shift)) throw DomainError("PowerRational: sum of incommensurable exponents");
  const int k = static_cast<int>(std::lround(shift));
  if (k >= 0) {
    return PowerRational(b.alpha_, (a.numer_ * b.denom_).shift_up(k) + b.numer_ * a.denom_, a.denom_ * b.denom_);
  }
  return PowerRational(a.alpha_, a.numer_ * b.denom_ + (b.numer_ * a.denom_).shift_up(-k), a.denom_ * b.denom_);
}

PowerRational operator-(const PowerRational& a, const PowerRational& b) { return a + (-b); }

PowerRational operator*(Complex s, const PowerRational& a) { return PowerRational(a.alpha_, s * a.numer_, a.denom_); }

Complex eval(const PowerRational& m, Complex z, double cut) { return m(z, cut); }

PowerRational derivative(const PowerRational& m) {
  if (m.is_constant()) return {};
  const Polynomial& P = m.numer();
  const Polynomial& Q = m.denom();
  Polynomial numer = m.alpha() * (P * Q) + (P.derivative() * Q - P * Q.derivative()).shift_up(1);
  return PowerRational(m.alpha() - 1.0, std::move(numer), Q * Q);
}

namespace {

using Series = std::array<Complex, 4>;

Series shifted(const Polynomial& P, Complex z) {
  const Polynomial s = P.taylor_shift(z);
  return {s.coeff(0), s.coeff(1), s.coeff(2), s.coeff(3)};
}

Series times(const Series& a, const Series& b) {
  Series c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; i + j < 4; ++j) c[i + j] += a[i] * b[j];
  return c;
}

Series divide(const Series& a, const Series& b) {
  Series c{};
  for (int k = 0; k < 4; ++k) {
    Complex s = a[k];
    for (int j = 1; j <= k; ++j) s -= b[j] * c[k - j];
    c[k] = s / b[0];
  }
  return c;
}

// Numerator and denominator series of m around z, power factor included.
std::pair<Series, Series> local_series(const PowerRational& m, Complex z) {
  Series N = shifted(m.numer(), z);
  const Series D = shifted(m.denom(), z);
  if (m.alpha() != 0.0) {
    if (z == Complex{}) throw DomainError("local series of z^alpha at the origin");
    // z^alpha (1 + h / z)^alpha, binomial series
    Series p{};
    Complex term = branch_power(z, m.alpha());
    for (int k = 0; k < 4; ++k) {
      p[k] = term;
      term *= (m.alpha() - k) / ((k + 1.0) * z);
    }
    N = times(N, p);
  }
  return {N, D};
}

}  // namespace

std::array<Complex, 4> taylor4(const PowerRational& m, Complex z) {
  const auto [N, D] = local_series(m, z);
  if (D[0] == Complex{}) throw DomainError("taylor4: pole");
  return divide(N, D);
}

Complex schwarzian(const PowerRational& m, Complex z) {
  if (m.is_constant()) throw DomainError("schwarzian: constant map");
  const auto [N, D] = local_series(m, z);
  // S(m) = S(1/m), so expand whichever quotient has the larger leading term.
  const Series c = std::abs(N[0]) > std::abs(D[0]) ? divide(D, N) : divide(N, D);
  if (c[1] == Complex{} || !is_finite(c[1])) throw DomainError("schwarzian: undefined at a critical point");
  const Complex r = c[2] / c[1];
  return 6.0 * c[3] / c[1] - 6.0 * r * r;
}

RootSet roots(const PowerRational& m, Complex w) {
  if (!m.is_rational()) throw DomainError("roots: map must be rational");
  Polynomial eq;
  if (is_infinite(w)) {
    eq = m.denom();
  } else {
    const Polynomial diff = m.numer() - w * m.denom();
    const double scale = std::max(m.numer().max_abs_coeff(), std::abs(w) * m.denom().max_abs_coeff());
    std::vector<Complex> c = diff.coeffs();
    while (!c.empty() && std::abs(c.back()) <= 1e-13 * scale) c.pop_back();
    eq = Polynomial(std::move(c));
  }
  if (eq.is_zero()) throw DomainError("roots: map is identically equal to the target value");

  RootSet out;
  if (eq.degree() < 1) return out;
  std::vector<Complex> r = companion_roots(eq);

  // Merge clusters (repeated roots split by rounding) into their mean.
  const std::size_t n = r.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(r[i] - r[j]) <= 1e-5 * (1.0 + std::abs(r[i]))) parent[find(j)] = find(i);
  std::vector<Complex> sum(n, Complex{});
  std::vector<int> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    sum[find(i)] += r[i];
    ++count[find(i)];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (count[root] > 1) out.clustered = true;
    out.roots.push_back(sum[root] / static_cast<double>(count[root]));
  }
  std::sort(out.roots.begin(), out.roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

PowerRational local_form(const PowerRational& m, Complex p) {
  if (m.is_zero()) return m;
  const Polynomial& P = m.numer();
  const Polynomial& Q = m.denom();
  if (is_infinite(p)) {
    return PowerRational(-m.alpha() - P.degree() + Q.degree(), P.reversed(P.degree()), Q.reversed(Q.degree()));
  }
  if (p == Complex{}) return m;
  if (!m.is_rational()) throw DomainError("local_form: non-integer exponent is only supported at 0 and infinity");
  return PowerRational(0.0, clean_low_order(P.taylor_shift(p)), clean_low_order(Q.taylor_shift(p)));
}

double order_at_origin(const PowerRational& m) {
  if (m.is_zero()) throw DomainError("order: function is identically zero");
  return m.alpha() + m.numer().low_order_zeros(kOrderTol) - m.denom().low_order_zeros(kOrderTol);
}

double order_at(const PowerRational& m, Complex p) { return order_at_origin(local_form(m, p)); }

namespace {

// Coefficient of the 1-form f dz in the local coordinate at p.
PowerRational local_form_coefficient(const PowerRational& f, Complex p) {
  if (is_infinite(p)) return PowerRational::power(-2.0, -1.0) * local_form(f, p);
  return local_form(f, p);
}

}  // namespace

double form_order_at(const PowerRational& f, Complex p) { return order_at_origin(local_form_coefficient(f, p)); }

EndExpansion end_expansion(const PowerRational& g, const PowerRational& f, Complex puncture) {
  if (g.is_zero() || f.is_zero()) throw DomainError("end_expansion: g and f must not vanish identically");
  const PowerRational gl = local_form(g, puncture);
  const PowerRational fl = local_form_coefficient(f, puncture);
  const double og = order_at_origin(gl);
  const double of = order_at_origin(fl);

  EndExpansion e;
  e.puncture = puncture;
  e.beta = og - 1.0;
  e.bigI = -of - 1.0;
  e.g_hat = gl * PowerRational::power(-og);
  e.f_hat = fl * PowerRational::power(-of);
  e.g_hat0 = e.g_hat.numer().coeff(0) / e.g_hat.denom().coeff(0);
  e.f_hat0 = e.f_hat.numer().coeff(0) / e.f_hat.denom().coeff(0);
  return e;
}

EndExpansion normalized_end_expansion(const PowerRational& g, const PowerRational& f, Complex puncture) {
  if (!g.is_zero() && order_at(g, puncture) < 0) {
    EndExpansion e = end_expansion(PowerRational::constant(-1.0) / g, g * g * f, puncture);
    e.rotated = true;
    return e;
  }
  return end_expansion(g, f, puncture);
}

double predicted_decay_exponent(const EndExpansion& e) {
  if (e.bigI <= 0) throw DomainError("predicted_decay_exponent: requires I > 0 at the end");
  return 2.0 + 2.0 * (1.0 + e.beta) / e.bigI;
}

Complex Mobius::operator()(Complex w) const {
  if (is_infinite(w)) return c == Complex{} ? infinity() : a / c;
  const Complex den = c * w + d;
  const Complex num = a * w + b;
  if (den == Complex{}) return infinity();
  return num / den;
}

Mobius Mobius::inverse() const { return {d, -b, -c, a}; }

Mobius operator*(const Mobius& x, const Mobius& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

PowerRational compose(const Mobius& M, const PowerRational& m) {
  if (m.is_rational()) {
    return PowerRational(0.0, M.a * m.numer() + M.b * m.denom(), M.c * m.numer() + M.d * m.denom());
  }
  if (M.b == Complex{} && M.c == Complex{}) return (M.a / M.d) * m;
  throw DomainError("compose: general Mobius maps need rational input");
}

}  // namespace bryant
