#include "bryant/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

namespace bryant {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  trim_exact();
}

Polynomial Polynomial::constant(Complex c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(Complex c, int power) {
  std::vector<Complex> v(static_cast<std::size_t>(power) + 1, Complex{});
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::z() { return monomial(1.0, 1); }

void Polynomial::trim_exact() {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Complex Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

Complex Polynomial::leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }

Complex Polynomial::operator()(Complex z) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double Polynomial::magnitude_at(Complex z) const {
  const double r = std::abs(z);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Polynomial Polynomial::derivative() const {
  if (degree() < 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::taylor_shift(Complex p) const {
  // Repeated synthetic division by (z - p).
  std::vector<Complex> c = coeffs_;
  const int n = degree();
  for (int i = 0; i < n; ++i) {
    for (int k = n - 1; k >= i; --k) c[k] += p * c[k + 1];
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::reversed(int n) const {
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1, Complex{});
  for (int k = 0; k <= degree(); ++k) c[n - k] = coeffs_[k];
  return Polynomial(std::move(c));
}

int Polynomial::low_order_zeros(double rel_tol) const {
  const double cut = rel_tol * max_abs_coeff();
  int k = 0;
  while (k <= degree() && std::abs(coeffs_[k]) <= cut) ++k;
  return k;
}

Polynomial Polynomial::shift_down(int k) const {
  if (k <= 0) return *this;
  if (k > degree()) return {};
  return Polynomial(std::vector<Complex>(coeffs_.begin() + k, coeffs_.end()));
}

Polynomial Polynomial::shift_up(int k) const {
  if (k <= 0 || is_zero()) return *this;
  std::vector<Complex> c(static_cast<std::size_t>(k), Complex{});
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  return Polynomial(std::move(c));
}

Polynomial Polynomial::trimmed(double rel_tol) const {
  const double cut = rel_tol * max_abs_coeff();
  std::vector<Complex> c = coeffs_;
  while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
  return Polynomial(std::move(c));
}

Polynomial Polynomial::deflate(Complex r) const {
  if (degree() < 1) return {};
  const int n = degree();
  std::vector<Complex> q(static_cast<std::size_t>(n));
  Complex acc = coeffs_[n];
  for (int k = n - 1; k >= 0; --k) {
    q[k] = acc;
    acc = coeffs_[k] + acc * r;
  }
  return Polynomial(std::move(q));
}

Polynomial Polynomial::operator-() const {
  std::vector<Complex> c = coeffs_;
  for (auto& x : c) x = -x;
  return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Complex{});
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1, Complex{});
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(Complex s, const Polynomial& p) {
  std::vector<Complex> c = p.coeffs_;
  for (auto& x : c) x *= s;
  return Polynomial(std::move(c));
}

std::vector<Complex> companion_roots(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) return {};
  if (n == 1) return {-p.coeff(0) / p.coeff(1)};

  const Complex lead = p.leading();
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeff(i) / lead;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericError("companion eigenvalue solve failed");

  const Polynomial dp = p.derivative();
  std::vector<Complex> roots(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Complex z = solver.eigenvalues()(i);
    const Complex pz = p(z);
    const Complex dpz = dp(z);
    if (std::abs(dpz) > 0.0) {
      const Complex polished = z - pz / dpz;
      if (is_finite(polished) && std::abs(p(polished)) <= std::abs(pz)) z = polished;
    }
    roots[static_cast<std::size_t>(i)] = z;
  }
  return roots;
}

}  // namespace bryant
