#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bryant/bryant_data.hpp"
#include "bryant/chart.hpp"
#include "bryant/quadrature.hpp"

namespace bryant {

/// Conformal length density on a chart grid, ds = lambda |dw| in chart
/// coordinates w = u + i v (the z-plane density times |dz/dw|).
struct MetricGrid {
  Chart chart;
  std::vector<double> lambda;
  std::vector<std::uint8_t> mask;  // 1 = valid

  double at(int i, int j) const { return lambda[chart.index(i, j)]; }
  bool valid(std::size_t k) const { return mask[k] != 0; }

  /// Samples sqrt(lambda2(z)) |dz/dw|; non-finite or non-positive values are masked.
  static MetricGrid from_density(const Chart& chart, const std::function<double(Complex)>& lambda2);
};

/// Neighbour stencils for the shortest-path metric: 8 neighbours, plus the
/// knight moves (16), plus all coprime offsets up to 3 (32).
enum class Stencil { N8, N16, N32 };

struct DistanceField {
  std::vector<double> rho;      // +inf where unreachable or masked
  double trusted_radius = 0.0;  // balls of this radius stay 2 cells inside the chart
};

/// Dijkstra from the given source nodes. Edge weight: mean endpoint lambda
/// times the chart length of the edge. Bands wrap periodically in v.
DistanceField geodesic_distance(const MetricGrid& grid, const std::vector<std::size_t>& sources,
                                Stencil stencil = Stencil::N32);
/// Distance from the core-side boundary ring of a band chart.
DistanceField distance_from_core(const MetricGrid& grid, Stencil stencil = Stencil::N32);

struct VolumeGrowth {
  std::vector<double> radii;
  std::vector<double> volume;
  std::vector<double> excluded;  // requested radii beyond the trusted radius
  double exponent = 0.0;         // least-squares slope of log vol vs log r over the top decade
  double coefficient = 0.0;      // geometric mean of vol / r^2 over the top decade
  double bound = 0.0;            // max vol / r^2 over the top decade
  int fit_points = 0;
};

/// Trapezoid-weighted sum of lambda^2 over nodes with rho <= r.
VolumeGrowth volume_growth(const MetricGrid& grid, const DistanceField& dist, const std::vector<double>& radii);
/// n radii spaced geometrically over [trusted / 1000, trusted].
std::vector<double> default_radii(const DistanceField& dist, int n = 61);

/// Total curvature of the H^3 metric, the integral of 4|g'|^2 / (1 + |g|^2)^2.
ExhaustionResult total_curvature(const BryantData& data, const ExhaustionOptions& opts = {});

struct DecayFit {
  double slope = 0.0;          // of log(-kappa) against log rho on the tail
  double predicted_slope = 0.0;
  double c = 0.0;
  double epsilon = 0.0;        // +inf for a flat tail
  double r0 = 0.0;
  double r1 = 0.0;
  double kappa0 = 0.0;         // max |kappa| on rho <= r0
  double residual = 0.0;       // rms of the regression
  int tail_samples = 0;
  bool envelope_holds = false;

  /// Slope <= -2 and within 15% of the prediction (flat tails pass trivially).
  bool matches_prediction() const;
};

/// Fit over samples with rho in [r0, r1]. `predicted_exponent` is 2 + 2(1 + beta)/I.
DecayFit curvature_decay_fit(const std::vector<double>& kappa, const std::vector<double>& rho, double r0, double r1,
                             double predicted_exponent);

/// kappa0 r0^2 / 2 + c / (eps r0^eps); +inf when eps <= 0.
double integrability_check(double c, double epsilon, double r0, double kappa0);

struct ParabolicityResult {
  std::vector<double> R;
  std::vector<double> integral;  // trapezoid of r / vol(B_r) from r0 to R
  double slope = 0.0;            // against ln(R / r0)
  double slope_first = 0.0;      // on the lower half of the log range
  double slope_second = 0.0;     // on the upper half
  bool divergent = false;
  std::string verdict;           // "divergent" or "non-divergent"
};

ParabolicityResult parabolicity_integral(const std::vector<double>& r, const std::vector<double>& vol);

/// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y, double* rms = nullptr);

}  // namespace bryant
