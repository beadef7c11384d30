#include "bryant/duality.hpp"

#include <algorithm>

namespace bryant {

BryantData DualData::as_data() const {
  BryantData d = source;
  d.g = g_sharp;
  d.f = f_sharp;
  return d;
}

DualData dual_data(const BryantData& data, const PowerRational& G) {
  if (G.is_constant()) throw DomainError("dual_data: constant hyperbolic Gauss map has no dual data");
  const PowerRational dG = derivative(G);
  if (dG.is_zero()) throw DomainError("dual_data: G' vanishes identically");
  DualData out;
  out.g_sharp = G;
  out.f_sharp = -(data.f * derivative(data.g)) / dG;
  out.source = data;
  return out;
}

double dual_metric_density(const PowerRational& G, Complex q, Complex z) {
  const Complex dG = derivative(G)(z);
  if (dG == Complex{} || !is_finite(dG)) return std::numeric_limits<double>::infinity();
  const Complex Gz = G(z);
  if (is_infinite(Gz)) {
    // (1 + |G|^2)^2 / |G'|^2 is finite at a simple pole; use the rotation 1/G.
    const PowerRational inv = PowerRational::constant(1.0) / G;
    const Complex dinv = derivative(inv)(z);
    return std::norm(q) / std::norm(dinv) * std::pow(1.0 + std::norm(inv(z)), 2);
  }
  const double s = 1.0 + std::norm(Gz);
  return s * s * std::norm(q / dG);
}

double lift_curvature_density(const PowerRational& G, Complex z) {
  if (G.is_constant()) return 0.0;
  const Complex Gz = G(z);
  if (!is_finite(Gz) || std::norm(Gz) > 1.0) {
    const PowerRational inv = PowerRational::constant(1.0) / G;
    const double s = 1.0 + std::norm(inv(z));
    return 4.0 * std::norm(derivative(inv)(z)) / (s * s);
  }
  const double s = 1.0 + std::norm(Gz);
  return 4.0 * std::norm(derivative(G)(z)) / (s * s);
}

double schwarzian_identity_residual(const BryantData& data, const PowerRational& G, const std::vector<Complex>& samples) {
  const PowerRational dg = derivative(data.g);
  double worst = 0.0;
  for (Complex z : samples) {
    const Complex q = data.f.is_zero() ? Complex{} : data.f(z) * dg(z);
    const Complex r = schwarzian(data.g, z) - schwarzian(G, z) - 2.0 * q;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

Complex numerical_schwarzian(const std::function<Complex(Complex)>& G, Complex z0, double radius, int nodes) {
  if (nodes < 16) throw DomainError("numerical_schwarzian: need at least 16 nodes");
  const Complex center = G(z0);
  std::vector<Complex> vals(nodes);
  for (int attempt = 0; attempt < 6; ++attempt, radius *= 0.5) {
    for (int k = 0; k < nodes; ++k) vals[k] = G(z0 + std::polar(radius, 2.0 * kPi * k / nodes));
    for (bool invert : {false, true}) {
      Complex h0 = center;
      if (invert) h0 = 1.0 / center;
      if (!is_finite(h0)) continue;
      std::vector<Complex> h(nodes);
      bool ok = true;
      double hmax = std::abs(h0);
      for (int k = 0; k < nodes && ok; ++k) {
        h[k] = invert ? 1.0 / vals[k] : vals[k];
        ok = is_finite(h[k]);
        hmax = std::max(hmax, std::abs(h[k]));
      }
      if (!ok) continue;
      auto coeff = [&](int m) {
        Complex s = 0.0;
        for (int k = 0; k < nodes; ++k) s += h[k] * std::polar(1.0, -2.0 * kPi * m * k / nodes);
        return s / static_cast<double>(nodes);
      };
      // An analytic function reproduces its centre value and has decaying
      // high-order coefficients; a pole inside the circle breaks both.
      const double tol = 1e-9 * (1.0 + hmax);
      if (std::abs(coeff(0) - h0) > tol || std::abs(coeff(nodes / 2)) > tol) continue;
      const Complex d1 = coeff(1) / radius;
      const Complex d2 = 2.0 * coeff(2) / (radius * radius);
      const Complex d3 = 6.0 * coeff(3) / (radius * radius * radius);
      if (std::abs(d1) <= 1e-14 * (1.0 + hmax)) throw DomainError("numerical_schwarzian: critical point");
      const Complex ratio = d2 / d1;
      return d3 / d1 - 1.5 * ratio * ratio;
    }
  }
  throw NumericError("numerical_schwarzian: neither G nor 1/G is analytic on the sampling disk");
}

namespace {

double distance_to_singularities(const BryantData& data, Complex z) {
  double d = std::numeric_limits<double>::infinity();
  for (Complex p : data.punctures)
    if (is_finite(p)) d = std::min(d, std::abs(z - p));
  for (Complex r : companion_roots(data.f.denom())) d = std::min(d, std::abs(z - r));
  if (!data.f.is_rational() || !data.g.is_rational()) d = std::min(d, std::abs(z));
  return d;
}

double chordal(Complex a, Complex b) {
  if (is_infinite(a) && is_infinite(b)) return 0.0;
  if (is_infinite(a)) return 2.0 / std::sqrt(1.0 + std::norm(b));
  if (is_infinite(b)) return 2.0 / std::sqrt(1.0 + std::norm(a));
  return 2.0 * std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

// Mobius map sending (w1, w2, w3) to (0, infinity, 1).
Mobius to_standard(Complex w1, Complex w2, Complex w3) {
  return {w3 - w2, -w1 * (w3 - w2), w3 - w1, -w2 * (w3 - w1)};
}

}  // namespace

double schwarzian_identity_residual(const TransportedGauss& G, const std::vector<Complex>& samples) {
  const BryantData& data = G.data();
  const PowerRational dg = derivative(data.g);
  double worst = 0.0;
  for (Complex z0 : samples) {
    const SL2Matrix F0 = G.lift(z0);
    auto local = [&](Complex z) { return G.gauss(z, G.lift_from(z0, F0, z)); };
    const double radius = std::clamp(0.3 * distance_to_singularities(data, z0), 0.02, 0.25);
    const Complex q = data.f.is_zero() ? Complex{} : data.f(z0) * dg(z0);
    const Complex r = schwarzian(data.g, z0) - numerical_schwarzian(local, z0, radius) - 2.0 * q;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double gauss_map_consistency(const TransportedGauss& G, const PowerRational& supplied, const std::vector<Complex>& samples) {
  std::vector<Complex> gs, gt;
  for (Complex z : samples) {
    const Complex a = supplied(z), b = G(z);
    if (is_finite(a) && is_finite(b)) {
      gs.push_back(a);
      gt.push_back(b);
    }
  }
  const std::size_t n = gs.size();
  if (n < 4) throw DomainError("gauss_map_consistency: need at least four finite samples");
  // Three samples whose supplied values are best separated on the sphere.
  std::size_t bi = 0, bj = 1, bk = 2;
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const double sep = std::min({chordal(gs[i], gs[j]), chordal(gs[j], gs[k]), chordal(gs[i], gs[k]),
                                     chordal(gt[i], gt[j]), chordal(gt[j], gt[k]), chordal(gt[i], gt[k])});
        if (sep > best) {
          best = sep;
          bi = i;
          bj = j;
          bk = k;
        }
      }
  if (best < 1e-6) throw DomainError("gauss_map_consistency: samples do not separate three values");
  const Mobius M = to_standard(gt[bi], gt[bj], gt[bk]).inverse() * to_standard(gs[bi], gs[bj], gs[bk]);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, chordal(M(gs[i]), gt[i]));
  return worst;
}

ExhaustionResult dual_total_curvature(const PowerRational& G, const ExhaustionOptions& opts) {
  if (G.is_constant()) {
    ExhaustionResult zero;
    zero.radii = {opts.r_max};
    zero.partial = {0.0};
    return zero;
  }
  const PowerRational dG = derivative(G);
  const PowerRational inv = PowerRational::constant(1.0) / G;
  const PowerRational dinv = derivative(inv);
  auto density = [&](Complex z) {
    const Complex Gz = G(z);
    if (is_finite(Gz) && std::norm(Gz) <= 1.0) {
      const double s = 1.0 + std::norm(Gz);
      return 4.0 * std::norm(dG(z)) / (s * s);
    }
    const double s = 1.0 + std::norm(inv(z));
    return 4.0 * std::norm(dinv(z)) / (s * s);
  };
  return integrate_exhaustion(density, opts);
}

std::string to_string(InequalityStatus s) {
  switch (s) {
    case InequalityStatus::Satisfied: return "satisfied";
    case InequalityStatus::Violated: return "violated";
    case InequalityStatus::NotApplicable: return "not-applicable";
  }
  return "unknown";
}

InequalityPair inequality_checks(double total_curvature, const SurfaceTopology& topology, double tol) {
  InequalityPair out;
  const double lhs = -total_curvature / (2.0 * kPi);

  InequalityReport& o = out.osserman;
  o.name = "osserman";
  o.lhs = lhs;
  o.rhs = topology.euler - topology.n_ends;
  o.margin = o.rhs - o.lhs;
  if (std::isfinite(total_curvature))
    o.status = o.lhs <= o.rhs + tol ? InequalityStatus::Satisfied : InequalityStatus::Violated;

  InequalityReport& c = out.cohn_vossen;
  c.name = "cohn-vossen";
  c.lhs = lhs;
  c.rhs = topology.euler;
  c.margin = c.rhs - c.lhs;
  if (!std::isfinite(total_curvature)) {
    c.status = InequalityStatus::NotApplicable;
  } else if (std::abs(total_curvature) <= 1e-12 && topology.euler <= 0) {
    c.status = InequalityStatus::NotApplicable;
  } else {
    c.status = c.lhs < c.rhs ? InequalityStatus::Satisfied : InequalityStatus::Violated;
  }
  return out;
}

}  // namespace bryant
