#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bryant/bryant_data.hpp"
#include "bryant/null_lift.hpp"
#include "bryant/quadrature.hpp"

namespace bryant {

/// Dual data (g#, f#) = (G, -f g' / G'); omega# = -Q / dG.
struct DualData {
  PowerRational g_sharp;
  PowerRational f_sharp;
  BryantData source;

  /// The dual as Bryant data on the same punctured sphere.
  BryantData as_data() const;
};

/// Throws DomainError for constant G.
DualData dual_data(const BryantData& data, const PowerRational& G);

/// (1 + |G|^2)^2 |q / G'|^2; +inf at critical points of G.
double dual_metric_density(const PowerRational& G, Complex q, Complex z);
/// 4 |G'|^2 / (1 + |G|^2)^2.
double lift_curvature_density(const PowerRational& G, Complex z);

/// max over samples of |S(g) - S(G) - 2 f g'| with closed-form Schwarzians.
double schwarzian_identity_residual(const BryantData& data, const PowerRational& G, const std::vector<Complex>& samples);

/// Schwarzian of an analytic function from Cauchy-integral derivatives on a
/// circle of the given radius. Falls back to 1/G when G has a pole inside
/// the circle, and halves the radius when neither is analytic there.
Complex numerical_schwarzian(const std::function<Complex(Complex)>& G, Complex z0, double radius, int nodes = 48);

/// Residual of the Schwarzian identity for the Gauss map transported by the
/// null lift. Circle radii adapt to the distance from finite punctures.
double schwarzian_identity_residual(const TransportedGauss& G, const std::vector<Complex>& samples);

/// Largest chordal distance between the transported Gauss map and a Mobius
/// image of the supplied one, the Mobius map fitted through three samples.
double gauss_map_consistency(const TransportedGauss& G, const PowerRational& supplied, const std::vector<Complex>& samples);

/// Fubini-Study area swept by G, i.e. the integral of lift_curvature_density.
ExhaustionResult dual_total_curvature(const PowerRational& G, const ExhaustionOptions& opts = {});

enum class InequalityStatus { Satisfied, Violated, NotApplicable };
std::string to_string(InequalityStatus s);

struct InequalityReport {
  std::string name;
  double lhs = 0.0;     // (1 / 2 pi) * (-total absolute curvature)
  double rhs = 0.0;     // chi - n (Osserman) or chi (Cohn-Vossen)
  double margin = 0.0;  // rhs - lhs
  InequalityStatus status = InequalityStatus::NotApplicable;
};

struct InequalityPair {
  InequalityReport osserman;
  InequalityReport cohn_vossen;
};

/// Osserman: lhs <= chi - n (within tol); Cohn-Vossen: lhs < chi. A flat
/// surface (zero total curvature) with chi <= 0 is reported not applicable.
InequalityPair inequality_checks(double total_curvature, const SurfaceTopology& topology, double tol = 1e-3);

}  // namespace bryant
