#pragma once

#include <string>

#include "bryant/types.hpp"

namespace bryant {

enum class ChartKind { Rect, Band };

/// A uniform (u, v) grid mapped conformally into the z-plane.
///
/// Rect charts are z = u + i v. Band charts are log-polar annuli around an
/// end, z = center + exp(sigma (u + i v)) with sigma = +1 for the end at
/// infinity and sigma = -1 for a finite puncture, so u always grows toward the
/// end. Bands are periodic in v; the seam sits on the negative real axis of
/// the local coordinate and no node lies on it.
struct Chart {
  std::string name;
  ChartKind kind = ChartKind::Rect;
  double u0 = -1, u1 = 1, v0 = -1, v1 = 1;
  int nu = 2, nv = 2;
  Complex center{};
  int sigma = 1;
  Complex end{};  // puncture served by a band (infinity marker for the end at infinity)
  bool lift = true;

  static Chart rect(std::string name, double re0, double re1, double im0, double im1, int nu, int nv);
  /// Band from radius r_core (core side) to r_end (end side) around `end`.
  static Chart band(std::string name, Complex end, double r_core, double r_end, int nu, int nv);

  bool periodic_v() const { return kind == ChartKind::Band; }
  double du() const { return (u1 - u0) / (nu - 1); }
  double dv() const { return periodic_v() ? (v1 - v0) / nv : (v1 - v0) / (nv - 1); }
  double u_at(int i) const { return u0 + i * du(); }
  double v_at(int j) const { return periodic_v() ? v0 + (j + 0.5) * dv() : v0 + j * dv(); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nu + i; }
  std::size_t size() const { return static_cast<std::size_t>(nu) * nv; }

  Complex z_at(int i, int j) const;
  Complex z_at_uv(double u, double v) const;
  /// |dz / dw| at a node, w = u + i v.
  double jacobian(int i, int j) const;
  /// dz / dw at a node.
  Complex dz_dw(int i, int j) const;
  /// Whether the closed chart region contains z.
  bool contains(Complex z) const;
};

}  // namespace bryant
