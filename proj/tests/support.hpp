#pragma once

// Shared helpers for the unit tests. Oracles here are deliberately written
// against std::complex directly, without touching the library's evaluators.

#include <array>
#include <complex>
#include <functional>
#include <random>
#include <string>

#include "bryant/meromorphic.hpp"
#include "bryant/null_lift.hpp"

namespace testing {

using bryant::Complex;

inline std::string fixture(const std::string& name) { return std::string(BRYANT_FIXTURE_DIR) + "/" + name + ".json"; }

inline bryant::PowerRational poly(std::vector<Complex> c) { return bryant::PowerRational::polynomial(std::move(c)); }

inline bryant::PowerRational zpow(int k, Complex c = 1.0) {
  if (k >= 0) return bryant::PowerRational(bryant::Polynomial::monomial(c, k), bryant::Polynomial::constant(1.0));
  return bryant::PowerRational(bryant::Polynomial::constant(c), bryant::Polynomial::monomial(1.0, -k));
}

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  return {n(rng), n(rng)};
}

inline bryant::Mobius random_mobius(std::mt19937_64& rng) {
  bryant::Mobius m;
  do {
    m = {random_complex(rng), random_complex(rng), random_complex(rng), random_complex(rng)};
  } while (std::abs(m.a * m.d - m.b * m.c) < 0.2);
  return m;
}

inline double entry_distance(const bryant::SL2Matrix& x, const bryant::SL2Matrix& y) { return bryant::max_abs(x - y); }

// Classical RK4 with a fixed step on dF = F f [[g, -g^2], [1, -g]] dz along
// the straight segment a -> b.
inline bryant::SL2Matrix rk4_lift(const std::function<Complex(Complex)>& g, const std::function<Complex(Complex)>& f,
                                  Complex a, Complex b, int steps) {
  using M = std::array<Complex, 4>;
  const Complex dz = (b - a) / static_cast<double>(steps);
  auto rhs = [&](Complex z, const M& F) {
    const Complex gz = g(z), fz = f(z);
    const Complex A11 = fz * gz, A12 = -fz * gz * gz, A21 = fz, A22 = -fz * gz;
    return M{(F[0] * A11 + F[1] * A21) * dz, (F[0] * A12 + F[1] * A22) * dz, (F[2] * A11 + F[3] * A21) * dz,
             (F[2] * A12 + F[3] * A22) * dz};
  };
  auto axpy = [](const M& x, const M& k, Complex s) { return M{x[0] + s * k[0], x[1] + s * k[1], x[2] + s * k[2], x[3] + s * k[3]}; };
  M F{1.0, 0.0, 0.0, 1.0};
  for (int n = 0; n < steps; ++n) {
    const Complex z = a + static_cast<double>(n) * dz;
    const M k1 = rhs(z, F);
    const M k2 = rhs(z + 0.5 * dz, axpy(F, k1, 0.5));
    const M k3 = rhs(z + 0.5 * dz, axpy(F, k2, 0.5));
    const M k4 = rhs(z + dz, axpy(F, k3, 1.0));
    for (int q = 0; q < 4; ++q) F[q] += (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q]) / 6.0;
  }
  return {F[0], F[1], F[2], F[3]};
}

}  // namespace testing
