#pragma once

#include <string>
#include <vector>

#include "bryant/bryant_data.hpp"
#include "bryant/chart.hpp"

namespace bryant {

/// 2x2 complex matrix [[a, b], [c, d]].
struct SL2Matrix {
  Complex a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static SL2Matrix identity() { return {}; }
  Complex det() const { return a * d - b * c; }
  Complex trace() const { return a + d; }
  SL2Matrix inverse() const;  // assumes det = 1
  SL2Matrix adjoint() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
  /// Divide by a square root of the determinant.
  SL2Matrix normalized() const;
  friend SL2Matrix operator*(const SL2Matrix& x, const SL2Matrix& y);
  friend SL2Matrix operator+(const SL2Matrix& x, const SL2Matrix& y);
  friend SL2Matrix operator-(const SL2Matrix& x, const SL2Matrix& y);
  friend SL2Matrix operator*(Complex s, const SL2Matrix& x);
};

/// Largest entrywise modulus.
double max_abs(const SL2Matrix& m);

struct PathSpec {
  std::vector<Complex> vertices;
  bool closed = false;

  static PathSpec segment(Complex from, Complex to) { return {{from, to}, false}; }
  /// Regular polygon with n vertices inscribed in the circle, counterclockwise.
  static PathSpec circle_loop(Complex center, double radius, int n = 256);
};

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double min_step = 1e-13;  // in units of the segment parameter t in [0, 1]
  long max_steps = 2000000;
  double cut = kPrincipalCut;
};

/// The null-lift system dF = F A dz with A = f [[g, -g^2], [1, -g]]. The
/// entries f, g f and g^2 f are precomputed so A stays finite at poles of g.
class LiftSystem {
 public:
  explicit LiftSystem(const BryantData& data, double cut = kPrincipalCut);
  /// Entries (A11, A12, A21) of A(z); A22 = -A11.
  void eval(Complex z, Complex& a11, Complex& a12, Complex& a21) const;
  const BryantData& data() const { return data_; }

 private:
  BryantData data_;
  PowerRational gf_, g2f_;
  double cut_;
};

/// F at the end of the path, starting from F0 at its first vertex. Adaptive
/// DOPRI5 on each straight segment with determinant renormalization after
/// every accepted step. Throws NumericError naming the segment on step underflow.
SL2Matrix integrate_path(const BryantData& data, const PathSpec& path, const SL2Matrix& F0,
                         const IntegratorOptions& opts = {});
SL2Matrix integrate_segment(const LiftSystem& sys, Complex from, Complex to, const SL2Matrix& F0,
                            const IntegratorOptions& opts = {});

/// Lift over a chart grid. Bands are treated as slit annuli: the tree never
/// crosses the v-seam, which acts as the declared cut.
struct SL2Field {
  Chart chart;
  std::vector<SL2Matrix> F;
  double closure_residual = 0.0;  // max relative mismatch over non-tree edges
  double max_det_drift = 0.0;

  const SL2Matrix& at(int i, int j) const { return F[chart.index(i, j)]; }
};

SL2Field lift_on_grid(const BryantData& data, const Chart& chart, Complex base, const SL2Matrix& F0 = {},
                      const IntegratorOptions& opts = {});

/// Mobius action of F on g: (a g + b) / (c g + d), equal to dA/dC.
Complex hyperbolic_gauss(const SL2Matrix& F, Complex g_at_z);

/// Hyperbolic Gauss map evaluated by transporting F along straight segments
/// from a base point. Tight tolerances by default, since derivatives of the
/// result are taken numerically.
class TransportedGauss {
 public:
  static IntegratorOptions tight() {
    IntegratorOptions o;
    o.rtol = 1e-13;
    o.atol = 1e-15;
    return o;
  }

  TransportedGauss(const BryantData& data, Complex base, const SL2Matrix& F0 = {}, IntegratorOptions opts = tight());
  SL2Matrix lift(Complex z) const;
  SL2Matrix lift_from(Complex z0, const SL2Matrix& F_at_z0, Complex z) const;
  Complex gauss(Complex z, const SL2Matrix& F_at_z) const;
  Complex operator()(Complex z) const { return gauss(z, lift(z)); }
  const BryantData& data() const { return sys_.data(); }

 private:
  LiftSystem sys_;
  Complex base_;
  SL2Matrix F0_;
  IntegratorOptions opts_;
};

/// max |(-dB/dA) - g| over interior nodes using finite differences of the field.
double secondary_gauss_check(const SL2Field& field, const BryantData& data);
/// max |(dA/dC) - G| / (1 + |G|) over interior nodes, G from hyperbolic_gauss.
double gauss_map_fd_check(const SL2Field& field, const BryantData& data);

enum class MonodromyKind { Trivial, Elliptic, Hyperbolic, Parabolic };
std::string to_string(MonodromyKind k);

struct MonodromyClass {
  SL2Matrix matrix;
  MonodromyKind kind = MonodromyKind::Trivial;
  Complex trace;
  bool non_real_trace = false;  // data not unitarizable on this loop
};

/// Trace rule with tolerance 1e-6 (1 + |tr|), scaled by tol_scale.
MonodromyClass classify(const SL2Matrix& phi, double tol_scale = 1.0);

/// Phi = F0^{-1} F_end after one traversal of the closed loop.
MonodromyClass monodromy(const BryantData& data, const PathSpec& loop, const SL2Matrix& F0 = {},
                         const IntegratorOptions& opts = {});

}  // namespace bryant
