#include "bryant/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include "bryant/parallel.hpp"

namespace bryant {

namespace {

constexpr int kGaussPoints = 20;

// Integral of density over r in [r0, r1], theta in [0, 2 pi).
double annulus(const std::function<double(Complex)>& density, double r0, double r1, int n_theta) {
  using Rule = boost::math::quadrature::gauss<double, kGaussPoints>;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  const double mid = 0.5 * (r0 + r1), half = 0.5 * (r1 - r0);
  const double dtheta = 2.0 * kPi / n_theta;
  double total = 0.0;
  auto ring = [&](double r) {
    double s = 0.0;
    for (int k = 0; k < n_theta; ++k) s += density(std::polar(r, (k + 0.5) * dtheta));
    return s * dtheta * r;
  };
  // Boost stores the non-negative half of the symmetric rule.
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] == 0.0) {
      total += w[k] * ring(mid);
    } else {
      total += w[k] * (ring(mid - half * x[k]) + ring(mid + half * x[k]));
    }
  }
  return total * half;
}

}  // namespace

ExhaustionResult integrate_exhaustion(const std::function<double(Complex)>& density, const ExhaustionOptions& opts) {
  if (!(opts.r_min > 0) || !(opts.r_max > 1.0) || opts.theta_nodes < 8)
    throw DomainError("integrate_exhaustion: need 0 < r_min and r_max > 1");
  // Dyadic edges r_min = e_0 < ... < e_m = r_max, with 1 as an edge.
  std::vector<double> edges{0.0};
  const int below = static_cast<int>(std::ceil(std::log2(1.0 / opts.r_min)));
  const int above = static_cast<int>(std::ceil(std::log2(opts.r_max)));
  for (int k = -below; k <= above; ++k) edges.push_back(std::ldexp(1.0, k));

  const std::size_t bands = edges.size() - 1;
  std::vector<double> piece(bands, 0.0);
  parallel_for(bands, [&](std::size_t b) { piece[b] = annulus(density, edges[b], edges[b + 1], opts.theta_nodes); });

  ExhaustionResult out;
  double sum = 0.0;
  for (std::size_t b = 0; b < bands; ++b) {
    sum += piece[b];
    if (edges[b + 1] >= 1.0) {
      out.radii.push_back(edges[b + 1]);
      out.partial.push_back(sum);
    }
  }
  out.value = sum;
  out.extrapolated = sum;
  const std::size_t n = out.partial.size();
  if (!std::isfinite(sum)) {
    out.divergent = true;
    out.extrapolated = std::numeric_limits<double>::infinity();
    return out;
  }
  if (n >= 3) {
    const double s0 = out.partial[n - 3], s1 = out.partial[n - 2], s2 = out.partial[n - 1];
    const double d1 = s1 - s0, d2 = s2 - s1;
    const double scale = std::max(1.0, std::abs(s2));
    if (std::abs(d2) > 1e-9 * scale && std::abs(d2) >= 0.9 * std::abs(d1)) {
      out.divergent = true;
      out.extrapolated = std::numeric_limits<double>::infinity();
    } else if (std::abs(d2 - d1) > 1e-300 && std::abs(d2) > 1e-15 * scale) {
      out.extrapolated = s2 - d2 * d2 / (d2 - d1);
    }
  }
  return out;
}

}  // namespace bryant
