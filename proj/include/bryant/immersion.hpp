#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <vector>

#include "bryant/null_lift.hpp"

namespace bryant {

/// Hermitian matrix [[h11, h12], [conj h12, h22]].
struct HermPoint {
  double h11 = 1.0;
  double h22 = 1.0;
  Complex h12 = 0.0;

  double det() const { return h11 * h22 - std::norm(h12); }
  friend HermPoint operator-(const HermPoint& x, const HermPoint& y) { return {x.h11 - y.h11, x.h22 - y.h22, x.h12 - y.h12}; }
  friend HermPoint operator+(const HermPoint& x, const HermPoint& y) { return {x.h11 + y.h11, x.h22 + y.h22, x.h12 + y.h12}; }
  friend HermPoint operator*(double s, const HermPoint& x) { return {s * x.h11, s * x.h22, s * x.h12}; }
};

struct LorentzVector {
  double x0 = 0, x1 = 0, x2 = 0, x3 = 0;
};

/// phi = F F^*. Throws DomainError when |det F - 1| > 1e-8.
HermPoint to_hyperbolic(const SL2Matrix& F);
/// F e3 F^* with e3 = diag(1, -1).
HermPoint to_desitter(const SL2Matrix& F);
HermPoint immerse_point(const SL2Matrix& F, TargetSpace target);

LorentzVector herm_to_lorentz(const HermPoint& X);
HermPoint lorentz_to_herm(const LorentzVector& x);

/// -x0 y0 + x1 y1 + x2 y2 + x3 y3.
double lorentz_pairing(const LorentzVector& x, const LorentzVector& y);
/// -tr(X adj(Y)) / 2 with adj the cofactor matrix; equals lorentz_pairing.
double herm_pairing(const HermPoint& X, const HermPoint& Y);

/// (x1, x2, x3) / (1 + x0). Throws DomainError off the upper hyperboloid.
std::array<double, 3> to_poincare_ball(const LorentzVector& x);

/// The isometry X -> Y X Y^*.
HermPoint apply_isometry(const SL2Matrix& Y, const HermPoint& X);

struct ImmersedGrid {
  Chart chart;
  TargetSpace target = TargetSpace::HyperbolicSpace;
  std::vector<HermPoint> points;
  const HermPoint& at(int i, int j) const { return points[chart.index(i, j)]; }
};

ImmersedGrid immerse(const SL2Field& field, TargetSpace target);

struct PullbackResult {
  double max_residual = 0.0;
  int nodes_checked = 0;
  int nodes_excluded = 0;
};

/// Central-difference first fundamental form of the immersed grid against
/// the closed-form density (in chart coordinates, times |dz/dw|^2). Residuals
/// are relative to the companion H^3 density, and for de Sitter data nodes
/// touching the singular locus are excluded.
PullbackResult pullback_metric_check(const ImmersedGrid& grid, const BryantData& data);

struct MeshSurface {
  TargetSpace target = TargetSpace::HyperbolicSpace;
  std::string chart_name;
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<int, 4>> faces;
  std::vector<double> kappa, lambda2, absg, x0;
  std::vector<std::uint8_t> singular;
};

/// Row-major vertex order, quad faces between neighbouring nodes (the seam of
/// a band is left open).
MeshSurface build_mesh(const ImmersedGrid& grid, const BryantData& data);

/// ASCII PLY with fixed formatting.
void write_ply(const MeshSurface& mesh, std::ostream& out);

}  // namespace bryant
