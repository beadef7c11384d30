#include "bryant/bryant_data.hpp"

#include <algorithm>
#include <sstream>

#include "bryant/parallel.hpp"

namespace bryant {

SU11Element SU11Element::make(Complex p, Complex q) {
  if (std::abs(std::norm(p) - std::norm(q) - 1.0) > 1e-12) throw DomainError("SU11Element: |p|^2 - |q|^2 must equal 1");
  return {p, q};
}

SurfaceTopology SurfaceTopology::of(const BryantData& data) {
  SurfaceTopology t;
  t.n_ends = static_cast<int>(data.punctures.size());
  t.euler = 2 - 2 * data.genus - t.n_ends;
  return t;
}

namespace {

bool contains_point(const std::vector<Complex>& pts, Complex z) {
  return std::any_of(pts.begin(), pts.end(), [&](Complex p) { return same_point(p, z, 1e-9); });
}

std::string describe(Complex z) {
  std::ostringstream os;
  if (is_infinite(z)) {
    os << "infinity";
  } else {
    os << "(" << z.real() << ", " << z.imag() << ")";
  }
  return os.str();
}

// Order at p, ignoring a z^alpha factor where it is analytic and nonzero.
double safe_order(const PowerRational& m, Complex p) {
  if (!m.is_rational() && !is_infinite(p) && p != Complex{}) return order_at(PowerRational(m.numer(), m.denom()), p);
  return order_at(m, p);
}

double safe_form_order(const PowerRational& f, Complex p) {
  if (!f.is_rational() && !is_infinite(p) && p != Complex{}) return form_order_at(PowerRational(f.numer(), f.denom()), p);
  return form_order_at(f, p);
}

void add_roots(std::vector<Complex>& out, const Polynomial& p) {
  for (Complex r : companion_roots(p))
    if (!contains_point(out, r)) out.push_back(r);
}

}  // namespace

ValidationReport validate(const BryantData& data) {
  ValidationReport report;
  auto issue = [&](std::string kind, Complex at, std::string msg) {
    report.issues.push_back({std::move(kind), at, std::move(msg)});
  };

  if (data.genus != 0) issue("topology", 0.0, "only genus 0 domains are supported");

  for (std::size_t i = 0; i < data.punctures.size(); ++i)
    for (std::size_t j = i + 1; j < data.punctures.size(); ++j)
      if (same_point(data.punctures[i], data.punctures[j], 1e-12))
        issue("puncture_duplicate", data.punctures[i], "puncture listed twice at " + describe(data.punctures[i]));

  const bool branched = !data.g.is_rational() || !data.f.is_rational();
  if (branched) {
    for (Complex p : {Complex{0.0}, infinity()})
      if (!contains_point(data.punctures, p))
        issue("branch_point", p, "non-integer exponent needs a puncture at " + describe(p));
  }

  if (data.f.is_zero()) {
    issue("zero_form", 0.0, "omega = f dz vanishes identically");
    return report;
  }

  std::vector<Complex> candidates;
  add_roots(candidates, data.g.denom());
  add_roots(candidates, data.f.numer());
  add_roots(candidates, data.f.denom());
  if (!contains_point(candidates, 0.0)) candidates.push_back(0.0);
  candidates.push_back(infinity());

  for (Complex z : candidates) {
    if (contains_point(data.punctures, z)) continue;
    const double og = data.g.is_zero() ? 0.0 : safe_order(data.g, z);
    const double of = safe_form_order(data.f, z);
    const double k = og < 0 ? -og : 0.0;
    if (std::abs(of - 2.0 * k) < 1e-9) continue;
    std::ostringstream msg;
    if (og < 0) {
      msg << "pole of order " << k << " of g at " << describe(z) << " needs a zero of order " << 2 * k
          << " of omega, found order " << of;
      issue("pole_order_mismatch", z, msg.str());
    } else if (of < 0) {
      msg << "omega has a pole of order " << -of << " at " << describe(z) << " (not a puncture)";
      issue("form_pole", z, msg.str());
    } else {
      msg << "omega has a zero of order " << of << " at " << describe(z) << " without a matching pole of g";
      issue("metric_degenerate", z, msg.str());
    }
  }
  return report;
}

DataEvaluator::DataEvaluator(const BryantData& data) : data_(data), dg_(derivative(data.g)) {
  if (!data_.g.is_zero()) {
    g2f_ = data_.g * data_.g * data_.f;
    rot_dg_ = derivative(PowerRational::constant(-1.0) / data_.g);
  }
}

DataEvaluator::Local DataEvaluator::local(Complex z) const {
  const Complex gz = data_.g(z);
  if (is_finite(gz) && std::norm(gz) <= 1.0) return {gz, data_.f(z), dg_(z)};
  const Complex gr = is_infinite(gz) ? Complex{} : -1.0 / gz;
  return {gr, g2f_(z), rot_dg_(z)};
}

double DataEvaluator::metric_density(Complex z) const {
  const Local l = local(z);
  if (!is_finite(l.f)) return std::numeric_limits<double>::infinity();
  const double s = data_.target == TargetSpace::HyperbolicSpace ? 1.0 + std::norm(l.g) : 1.0 - std::norm(l.g);
  return s * s * std::norm(l.f);
}

double DataEvaluator::hyperbolic_density(Complex z) const {
  const Local l = local(z);
  if (!is_finite(l.f)) return std::numeric_limits<double>::infinity();
  const double s = 1.0 + std::norm(l.g);
  return s * s * std::norm(l.f);
}

double DataEvaluator::hyperbolic_curvature(Complex z) const {
  const Local l = local(z);
  const double s = 1.0 + std::norm(l.g);
  const double den = std::norm(l.f) * s * s * s * s;
  if (!(den > 0.0)) throw DomainError("gauss_curvature: metric degenerates at " + describe(z));
  if (std::isinf(den)) return 0.0;
  return -4.0 * std::norm(l.dg) / den;
}

double DataEvaluator::curvature_form(Complex z) const {
  const Local l = local(z);
  const double s = 1.0 + std::norm(l.g);
  return 4.0 * std::norm(l.dg) / (s * s);
}

Complex DataEvaluator::hopf_density(Complex z) const {
  const Local l = local(z);
  return l.f * l.dg;
}

double metric_density(const BryantData& data, Complex z) { return DataEvaluator(data).metric_density(z); }

double gauss_curvature(const BryantData& data, Complex z) {
  if (data.target != TargetSpace::HyperbolicSpace)
    throw DomainError("gauss_curvature: de Sitter curvature is exposed through the lift metric");
  return DataEvaluator(data).hyperbolic_curvature(z);
}

Complex hopf_density(const BryantData& data, Complex z) { return DataEvaluator(data).hopf_density(z); }

BryantData su11_action(const BryantData& data, const SU11Element& B) {
  if (data.target != TargetSpace::DeSitterSpace) throw DomainError("su11_action: requires de Sitter data");
  const Mobius M{B.p, B.q, std::conj(B.q), std::conj(B.p)};
  BryantData out = data;
  out.g = compose(M, data.g);
  PowerRational factor = std::conj(B.q) * data.g + PowerRational::constant(std::conj(B.p));
  out.f = factor * factor * data.f;
  return out;
}

BryantData hyperbolic_companion(const BryantData& data) {
  BryantData out = data;
  out.target = TargetSpace::HyperbolicSpace;
  return out;
}

std::vector<GridCell> singular_locus(const BryantData& data, const Chart& chart) {
  std::vector<double> s(chart.size());
  parallel_for(static_cast<std::size_t>(chart.nv), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    for (int i = 0; i < chart.nu; ++i) {
      const Complex gz = data.g(chart.z_at(i, j));
      const double v = is_finite(gz) ? std::norm(gz) - 1.0 : 1.0;
      s[chart.index(i, j)] = std::abs(v) <= 1e-12 ? 0.0 : v;  // nodes on |g| = 1 up to rounding
    }
  });
  std::vector<GridCell> cells;
  const int jmax = chart.periodic_v() ? chart.nv : chart.nv - 1;
  for (int j = 0; j < jmax; ++j) {
    const int j1 = (j + 1) % chart.nv;
    for (int i = 0; i + 1 < chart.nu; ++i) {
      const double c[4] = {s[chart.index(i, j)], s[chart.index(i + 1, j)], s[chart.index(i, j1)],
                           s[chart.index(i + 1, j1)]};
      const double lo = *std::min_element(c, c + 4);
      const double hi = *std::max_element(c, c + 4);
      if (lo <= 0.0 && hi >= 0.0) cells.push_back({i, j});
    }
  }
  return cells;
}

}  // namespace bryant
