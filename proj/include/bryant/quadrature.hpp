#pragma once

#include <functional>
#include <vector>

#include "bryant/types.hpp"

namespace bryant {

struct ExhaustionOptions {
  double r_min = 1e-8;  // central disk radius
  double r_max = 1e6;   // outermost exhaustion radius
  int theta_nodes = 256;
};

struct ExhaustionResult {
  std::vector<double> radii;    // exhaustion radii R_k (band edges >= 1)
  std::vector<double> partial;  // integral over |z| <= R_k
  double value = 0.0;           // integral over the largest disk
  double extrapolated = 0.0;    // Aitken limit of the last three partial sums
  bool divergent = false;
};

/// Integral of an area density over the plane by tensor Gauss-Legendre
/// (radial) and trapezoid (angular) rules on dyadic annuli around the origin.
/// Annuli are evaluated in parallel and summed in fixed order.
ExhaustionResult integrate_exhaustion(const std::function<double(Complex)>& density,
                                      const ExhaustionOptions& opts = {});

}  // namespace bryant
