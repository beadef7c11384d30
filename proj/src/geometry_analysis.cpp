#include "bryant/geometry_analysis.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "bryant/parallel.hpp"

namespace bryant {

MetricGrid MetricGrid::from_density(const Chart& chart, const std::function<double(Complex)>& lambda2) {
  MetricGrid grid;
  grid.chart = chart;
  grid.lambda.assign(chart.size(), 0.0);
  grid.mask.assign(chart.size(), 0);
  parallel_for(chart.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k % chart.nu), j = static_cast<int>(k / chart.nu);
    const double l2 = lambda2(chart.z_at(i, j));
    if (std::isfinite(l2) && l2 > 0.0) {
      grid.lambda[k] = std::sqrt(l2) * chart.jacobian(i, j);
      grid.mask[k] = 1;
    }
  });
  return grid;
}

namespace {

std::vector<std::pair<int, int>> offsets(Stencil s) {
  std::vector<std::pair<int, int>> base{{1, 0}, {1, 1}};
  if (s != Stencil::N8) base.push_back({1, 2});
  if (s == Stencil::N32) {
    base.push_back({1, 3});
    base.push_back({2, 3});
  }
  std::vector<std::pair<int, int>> out;
  for (auto [a, b] : base) {
    std::vector<std::pair<int, int>> forms{{a, b}, {b, a}};
    if (a == b || b == 0) forms = {{a, b}};
    for (auto [p, q] : forms) {
      out.push_back({p, q});
      out.push_back({-q, p});
      out.push_back({-p, -q});
      out.push_back({q, -p});
    }
  }
  return out;
}

}  // namespace

DistanceField geodesic_distance(const MetricGrid& grid, const std::vector<std::size_t>& sources, Stencil stencil) {
  const Chart& c = grid.chart;
  const double inf = std::numeric_limits<double>::infinity();
  DistanceField out;
  out.rho.assign(c.size(), inf);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  for (std::size_t s : sources) {
    if (s >= c.size() || !grid.valid(s)) throw DomainError("geodesic_distance: invalid source node");
    out.rho[s] = 0.0;
    heap.push({0.0, s});
  }
  const auto steps = offsets(stencil);
  std::vector<double> length(steps.size());
  for (std::size_t e = 0; e < steps.size(); ++e)
    length[e] = std::hypot(steps[e].first * c.du(), steps[e].second * c.dv());

  while (!heap.empty()) {
    const auto [d, k] = heap.top();
    heap.pop();
    if (d > out.rho[k]) continue;
    const int i = static_cast<int>(k % c.nu), j = static_cast<int>(k / c.nu);
    for (std::size_t e = 0; e < steps.size(); ++e) {
      const int ii = i + steps[e].first;
      int jj = j + steps[e].second;
      if (ii < 0 || ii >= c.nu) continue;
      if (c.periodic_v()) {
        jj = (jj % c.nv + c.nv) % c.nv;
      } else if (jj < 0 || jj >= c.nv) {
        continue;
      }
      const std::size_t kk = c.index(ii, jj);
      if (!grid.valid(kk)) continue;
      const double nd = d + 0.5 * (grid.lambda[k] + grid.lambda[kk]) * length[e];
      if (nd < out.rho[kk]) {
        out.rho[kk] = nd;
        heap.push({nd, kk});
      }
    }
  }

  // Trusted radius: smallest distance within two cells of the far boundary.
  const bool band = c.kind == ChartKind::Band;
  double trusted = inf;
  for (int j = 0; j < c.nv; ++j)
    for (int i = 0; i < c.nu; ++i) {
      bool rim = i >= c.nu - 3;
      if (!band) rim = rim || i <= 2 || j <= 2 || j >= c.nv - 3;
      if (rim) trusted = std::min(trusted, out.rho[c.index(i, j)]);
    }
  out.trusted_radius = std::isfinite(trusted) ? trusted : 0.0;
  return out;
}

DistanceField distance_from_core(const MetricGrid& grid, Stencil stencil) {
  if (grid.chart.kind != ChartKind::Band) throw DomainError("distance_from_core: band chart required");
  std::vector<std::size_t> sources;
  for (int j = 0; j < grid.chart.nv; ++j)
    if (grid.valid(grid.chart.index(0, j))) sources.push_back(grid.chart.index(0, j));
  return geodesic_distance(grid, sources, stencil);
}

std::vector<double> default_radii(const DistanceField& dist, int n) {
  std::vector<double> r(n);
  const double hi = dist.trusted_radius;
  for (int k = 0; k < n; ++k) r[k] = hi * std::pow(10.0, -3.0 + 3.0 * k / (n - 1));
  return r;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y, double* rms) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw DomainError("ls_slope: need at least two paired samples");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  if (sxx <= 0.0) throw DomainError("ls_slope: degenerate abscissae");
  const double slope = sxy / sxx;
  if (rms) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double r = y[k] - (my + slope * (x[k] - mx));
      s += r * r;
    }
    *rms = std::sqrt(s / n);
  }
  return slope;
}

VolumeGrowth volume_growth(const MetricGrid& grid, const DistanceField& dist, const std::vector<double>& radii) {
  const Chart& c = grid.chart;
  std::vector<std::pair<double, double>> cells;  // (rho, weighted area)
  cells.reserve(c.size());
  for (int j = 0; j < c.nv; ++j)
    for (int i = 0; i < c.nu; ++i) {
      const std::size_t k = c.index(i, j);
      if (!grid.valid(k) || !std::isfinite(dist.rho[k])) continue;
      double w = c.du() * c.dv();
      if (i == 0 || i == c.nu - 1) w *= 0.5;
      if (!c.periodic_v() && (j == 0 || j == c.nv - 1)) w *= 0.5;
      cells.push_back({dist.rho[k], grid.lambda[k] * grid.lambda[k] * w});
    }
  std::sort(cells.begin(), cells.end());
  std::vector<double> cumulative(cells.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < cells.size(); ++k) cumulative[k] = acc += cells[k].second;

  VolumeGrowth out;
  for (double r : radii) {
    if (r > dist.trusted_radius) {
      out.excluded.push_back(r);
      continue;
    }
    const auto it = std::upper_bound(cells.begin(), cells.end(), std::make_pair(r, std::numeric_limits<double>::infinity()));
    const std::size_t n = static_cast<std::size_t>(it - cells.begin());
    out.radii.push_back(r);
    out.volume.push_back(n == 0 ? 0.0 : cumulative[n - 1]);
  }

  std::vector<double> lx, ly;
  double log_c = 0.0;
  const double top = out.radii.empty() ? 0.0 : out.radii.back();
  for (std::size_t k = 0; k < out.radii.size(); ++k) {
    const double r = out.radii[k], v = out.volume[k];
    if (r < top / 10.0 || !(v > 0.0)) continue;
    lx.push_back(std::log(r));
    ly.push_back(std::log(v));
    log_c += std::log(v / (r * r));
    out.bound = std::max(out.bound, v / (r * r));
  }
  out.fit_points = static_cast<int>(lx.size());
  if (lx.size() >= 2) {
    out.exponent = ls_slope(lx, ly);
    out.coefficient = std::exp(log_c / lx.size());
  }
  return out;
}

ExhaustionResult total_curvature(const BryantData& data, const ExhaustionOptions& opts) {
  const DataEvaluator ev(data);
  return integrate_exhaustion([&](Complex z) { return ev.curvature_form(z); }, opts);
}

bool DecayFit::matches_prediction() const {
  if (c == 0.0) return true;
  const double pred = -predicted_slope;
  return slope <= -2.0 && std::abs(slope - predicted_slope) <= 0.15 * pred;
}

DecayFit curvature_decay_fit(const std::vector<double>& kappa, const std::vector<double>& rho, double r0, double r1,
                             double predicted_exponent) {
  if (kappa.size() != rho.size()) throw DomainError("curvature_decay_fit: sample size mismatch");
  if (!(r1 > r0) || !(r0 > 0.0)) throw DomainError("curvature_decay_fit: need 0 < r0 < r1");
  DecayFit fit;
  fit.r0 = r0;
  fit.r1 = r1;
  fit.predicted_slope = -predicted_exponent;
  std::vector<double> lx, ly;
  std::vector<std::size_t> tail;
  for (std::size_t k = 0; k < rho.size(); ++k) {
    if (!std::isfinite(rho[k]) || !std::isfinite(kappa[k])) continue;
    if (rho[k] <= r0) fit.kappa0 = std::max(fit.kappa0, std::abs(kappa[k]));
    if (rho[k] < r0 || rho[k] > r1) continue;
    tail.push_back(k);
    if (-kappa[k] > 0.0) {
      lx.push_back(std::log(rho[k]));
      ly.push_back(std::log(-kappa[k]));
    }
  }
  fit.tail_samples = static_cast<int>(tail.size());
  if (lx.size() < 2) {
    // Flat tail: kappa vanishes identically beyond r0.
    fit.c = 0.0;
    fit.epsilon = std::numeric_limits<double>::infinity();
    fit.slope = -std::numeric_limits<double>::infinity();
    fit.envelope_holds = std::all_of(tail.begin(), tail.end(), [&](std::size_t k) { return kappa[k] <= 0.0; });
    return fit;
  }
  fit.slope = ls_slope(lx, ly, &fit.residual);
  fit.epsilon = -fit.slope - 2.0;
  const double p = 2.0 + fit.epsilon;
  for (std::size_t k : tail) fit.c = std::max(fit.c, -kappa[k] * std::pow(rho[k], p));
  fit.envelope_holds = std::all_of(tail.begin(), tail.end(), [&](std::size_t k) {
    return kappa[k] <= 0.0 && kappa[k] >= -fit.c / std::pow(rho[k], p) * (1.0 + 1e-12);
  });
  return fit;
}

double integrability_check(double c, double epsilon, double r0, double kappa0) {
  const double core = 0.5 * kappa0 * r0 * r0;
  if (c == 0.0) return core;
  if (!(epsilon > 0.0)) return std::numeric_limits<double>::infinity();
  if (std::isinf(epsilon)) return core;
  return core + c / (epsilon * std::pow(r0, epsilon));
}

ParabolicityResult parabolicity_integral(const std::vector<double>& r, const std::vector<double>& vol) {
  std::vector<double> rr, vv;
  for (std::size_t k = 0; k < r.size() && k < vol.size(); ++k)
    if (vol[k] > 0.0 && r[k] > 0.0) {
      if (!rr.empty() && !(r[k] > rr.back())) throw DomainError("parabolicity_integral: radii must increase");
      rr.push_back(r[k]);
      vv.push_back(vol[k]);
    }
  if (rr.size() < 4) throw DomainError("parabolicity_integral: need at least four positive samples");
  ParabolicityResult out;
  const double r0 = rr.front();
  double acc = 0.0;
  std::vector<double> logs;
  for (std::size_t k = 0; k < rr.size(); ++k) {
    if (k > 0) acc += 0.5 * (rr[k] / vv[k] + rr[k - 1] / vv[k - 1]) * (rr[k] - rr[k - 1]);
    out.R.push_back(rr[k]);
    out.integral.push_back(acc);
    logs.push_back(std::log(rr[k] / r0));
  }
  out.slope = ls_slope(logs, out.integral);
  const double mid = 0.5 * logs.back();
  std::vector<double> x1, y1, x2, y2;
  for (std::size_t k = 0; k < logs.size(); ++k) {
    if (logs[k] <= mid) {
      x1.push_back(logs[k]);
      y1.push_back(out.integral[k]);
    }
    if (logs[k] >= mid) {
      x2.push_back(logs[k]);
      y2.push_back(out.integral[k]);
    }
  }
  out.slope_first = ls_slope(x1, y1);
  out.slope_second = ls_slope(x2, y2);
  out.divergent = out.slope_second > 0.0 && out.slope_second >= 0.5 * out.slope_first;
  out.verdict = out.divergent ? "divergent" : "non-divergent";
  return out;
}

}  // namespace bryant
