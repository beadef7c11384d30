#include "bryant/pipeline.hpp"

#include <algorithm>

#include "bryant/coverage.hpp"
#include "bryant/duality.hpp"
#include "bryant/geometry_analysis.hpp"
#include "bryant/parallel.hpp"

namespace bryant {

using nlohmann::ordered_json;

namespace {

AnalysisReport start(const SurfaceSpec& spec, const char* command) {
  AnalysisReport r;
  r.command = command;
  r.fixture = spec.name;
  r.config_hash = fnv1a_hex(spec.source_text);
  return r;
}

std::string target_name(TargetSpace t) { return t == TargetSpace::HyperbolicSpace ? "h3" : "desitter"; }

bool nonconstant(const PowerRational& m) { return !m.is_constant(); }

int rational_degree(const PowerRational& m) { return m.is_constant() ? 0 : m.degree(); }

struct Lifted {
  const ChartConfig* config;
  SL2Field field;
};

std::vector<Lifted> lift_charts(const SurfaceSpec& spec, const std::string& filter) {
  std::vector<Lifted> out;
  for (const ChartConfig& c : spec.charts) {
    if (!c.chart.lift) continue;
    if (!filter.empty() && c.chart.name != filter) continue;
    try {
      out.push_back({&c, lift_on_grid(spec.data, c.chart, spec.base_point)});
    } catch (const NumericError& e) {
      throw NumericError("chart '" + c.chart.name + "': " + e.what());
    }
  }
  if (!filter.empty() && out.empty()) throw DomainError("no lift chart named '" + filter + "'");
  return out;
}

double finite_puncture_distance(const BryantData& data, Complex z) {
  double d = std::numeric_limits<double>::infinity();
  for (Complex p : data.punctures)
    if (is_finite(p)) d = std::min(d, std::abs(z - p));
  return d;
}

void add_immersion_checks(AnalysisReport& r, const SurfaceSpec& spec, const Lifted& l, MeshSurface* mesh_out) {
  const double s = spec.tolerance_scale;
  const std::string& name = l.config->chart.name;
  const ImmersedGrid grid = immerse(l.field, spec.data.target);
  const PullbackResult pb = pullback_metric_check(grid, spec.data);
  r.check_max("immersion", name + ": pullback metric residual", pb.max_residual, 1e-3 * s);
  if (pb.nodes_excluded > 0) r.info("immersion", name + ": nodes excluded near singular locus", pb.nodes_excluded);
  const double sign = spec.data.target == TargetSpace::HyperbolicSpace ? -1.0 : 1.0;
  double worst = 0.0;
  for (const HermPoint& X : grid.points) {
    const LorentzVector x = herm_to_lorentz(X);
    worst = std::max(worst, std::abs(lorentz_pairing(x, x) - sign));
  }
  r.check_max("immersion", name + ": quadric constraint |<x,x> " + (sign < 0 ? "+ 1" : "- 1") + "|", worst, 1e-7 * s);
  if (mesh_out) *mesh_out = build_mesh(grid, spec.data);
}

void add_data_checks(AnalysisReport& r, const SurfaceSpec& spec) {
  const ValidationReport v = validate(spec.data);
  r.check("bryant_data", "validation issues", static_cast<double>(v.issues.size()), "== 0", v.clean());
  for (const Diagnostic& d : v.issues) r.info("bryant_data", "diagnostic: " + d.kind, d.message);

  const SurfaceTopology topo = SurfaceTopology::of(spec.data);
  r.info("bryant_data", "ends", topo.n_ends);
  r.info("bryant_data", "euler characteristic", topo.euler);

  const DataEvaluator ev(spec.data);
  double kmax = -std::numeric_limits<double>::infinity();
  for (const ChartConfig& c : spec.charts)
    for (int j = 0; j < c.chart.nv; j += std::max(1, c.chart.nv / 32))
      for (int i = 0; i < c.chart.nu; i += std::max(1, c.chart.nu / 32)) kmax = std::max(kmax, ev.hyperbolic_curvature(c.chart.z_at(i, j)));
  if (!spec.charts.empty()) r.check("bryant_data", "max gauss curvature (H3 metric) on charts", kmax, "<= 0", kmax <= 0.0);

  if (spec.data.target == TargetSpace::DeSitterSpace) {
    const SU11Element B = SU11Element::make(Complex(std::cosh(0.4), 0.0) * std::polar(1.0, 0.3), std::sinh(0.4));
    const BryantData moved = su11_action(spec.data, B);
    const DataEvaluator em(moved);
    double dm = 0.0, dq = 0.0;
    for (const ChartConfig& c : spec.charts) {
      for (Complex z : interior_samples(c.chart)) {
        const double a = ev.metric_density(z), b = em.metric_density(z);
        dm = std::max(dm, std::abs(a - b) / (1.0 + ev.hyperbolic_density(z)));
        const Complex qa = ev.hopf_density(z), qb = em.hopf_density(z);
        dq = std::max(dq, std::abs(qa - qb) / (1.0 + std::abs(qa)));
      }
      std::size_t cells = singular_locus(spec.data, c.chart).size();
      const bool same = singular_locus(moved, c.chart) == singular_locus(spec.data, c.chart);
      r.info("bryant_data", c.chart.name + ": singular cells", static_cast<double>(cells));
      r.check("bryant_data", c.chart.name + ": singular locus invariant under SU(1,1)", same ? 0.0 : 1.0, "identical", same);
    }
    r.check_max("bryant_data", "SU(1,1) metric density invariance", dm, 1e-10);
    r.check_max("bryant_data", "SU(1,1) Hopf density invariance", dq, 1e-10);
  }
}

void add_lift_checks(AnalysisReport& r, const SurfaceSpec& spec, const std::vector<Lifted>& lifts) {
  const double s = spec.tolerance_scale;
  for (const Lifted& l : lifts) {
    const std::string& name = l.config->chart.name;
    r.check_max("null_lift", name + ": max |det F - 1|", l.field.max_det_drift, 1e-9 * s);
    r.check_max("null_lift", name + ": loop closure residual", l.field.closure_residual, 1e-6 * s);
    r.check_max("null_lift", name + ": secondary Gauss map residual", secondary_gauss_check(l.field, spec.data), 1e-4 * s);
    r.check_max("null_lift", name + ": dA/dC versus Mobius action", gauss_map_fd_check(l.field, spec.data), 1e-4 * s);
    const Chart& c = l.field.chart;
    const Eigen::Vector3d p0 = to_sphere(hyperbolic_gauss(l.field.F[0], spec.data.g(c.z_at(0, 0))));
    double spread = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Complex z = c.z_at(static_cast<int>(k % c.nu), static_cast<int>(k / c.nu));
      spread = std::max(spread, (to_sphere(hyperbolic_gauss(l.field.F[k], spec.data.g(z))) - p0).norm());
    }
    r.info("null_lift", name + ": hyperbolic Gauss map spread on sphere", number_json(spread));
    if (spread < 1e-9) r.info("null_lift", name + ": hyperbolic Gauss map", "constant");
  }
}

void add_monodromy(AnalysisReport& r, const SurfaceSpec& spec) {
  const BryantData& data = spec.data;
  if (!data.g.is_rational() || !data.f.is_rational()) {
    r.add("null_lift", "monodromy", "branched data", "", verdict::kNotApplicable);
    return;
  }
  const double d = finite_puncture_distance(data, spec.base_point);
  const double radius = 0.25 * std::min(1.0, d);
  const MonodromyClass trivial = monodromy(data, PathSpec::circle_loop(spec.base_point, radius));
  const double dev = max_abs(trivial.matrix - SL2Matrix::identity());
  r.check("null_lift", "monodromy of a loop enclosing no puncture: |Phi - I|", dev, "<= 1e-08",
          trivial.kind == MonodromyKind::Trivial && dev <= 1e-8 * spec.tolerance_scale);

  std::vector<Complex> finite;
  for (Complex p : data.punctures)
    if (is_finite(p)) finite.push_back(p);
  for (Complex p : data.punctures) {
    PathSpec loop;
    std::string label;
    if (is_infinite(p)) {
      double reach = 0.5;
      for (Complex q : finite) reach = std::max(reach, std::abs(q));
      loop = PathSpec::circle_loop(0.0, 2.0 * reach);
      label = "inf";
    } else {
      double sep = 1.0;
      for (Complex q : finite)
        if (q != p) sep = std::min(sep, 0.5 * std::abs(q - p));
      loop = PathSpec::circle_loop(p, sep);
      label = format_number(p.real()) + (p.imag() < 0 ? "-" : "+") + format_number(std::abs(p.imag())) + "i";
    }
    const MonodromyClass m = monodromy(data, loop);
    ordered_json v;
    v["class"] = to_string(m.kind);
    v["trace"] = {number_json(m.trace.real()), number_json(m.trace.imag())};
    v["non_real_trace"] = m.non_real_trace;
    r.info("null_lift", "monodromy around end " + label, v);
  }
}

void add_duality(AnalysisReport& r, const SurfaceSpec& spec, const std::vector<Lifted>& lifts) {
  const double s = spec.tolerance_scale;
  const BryantData& data = spec.data;
  const SurfaceTopology topo = SurfaceTopology::of(data);
  std::vector<Complex> samples;
  if (!lifts.empty()) samples = interior_samples(lifts.front().field.chart);

  if (nonconstant(data.g) && !samples.empty()) {
    const TransportedGauss G(data, spec.base_point);
    r.check_max("duality", "Schwarzian identity residual (transported G)", schwarzian_identity_residual(G, samples), 1e-5 * s);
    if (spec.gauss_map && nonconstant(*spec.gauss_map))
      r.check_max("duality", "transported G versus supplied G (chordal, after Mobius fit)",
                  gauss_map_consistency(G, *spec.gauss_map, samples), 1e-6 * s);
  }

  if (!spec.gauss_map) {
    r.add("duality", "dual total curvature", "no rational Gauss map supplied", "", verdict::kNotApplicable);
    r.add("duality", "osserman inequality", "no rational Gauss map supplied", "", verdict::kNotApplicable);
  } else if (!nonconstant(*spec.gauss_map)) {
    r.info("duality", "dual total curvature", 0.0);
    r.add("duality", "osserman inequality", "constant G (no dual data)", "", verdict::kNotApplicable);
  } else {
    const PowerRational& Gm = *spec.gauss_map;
    std::vector<Complex> pts = samples;
    if (pts.empty())
      for (int k = 0; k < 8; ++k) pts.push_back(std::polar(0.7 + 0.1 * k, 0.4 + 0.7 * k));
    if (nonconstant(data.g))
      r.check_max("duality", "Schwarzian identity residual (supplied G)", schwarzian_identity_residual(data, Gm, pts), 1e-6 * s);

    const DualData dual = dual_data(data, Gm);
    const DataEvaluator ev(data), evd(dual.as_data());
    double dq = 0.0;
    for (Complex z : pts) dq = std::max(dq, std::abs(evd.hopf_density(z) + ev.hopf_density(z)) / (1.0 + std::abs(ev.hopf_density(z))));
    r.check_max("duality", "Hopf density of dual plus original", dq, 1e-10 * s);
    if (nonconstant(data.g)) {
      const DualData back = dual_data(dual.as_data(), data.g);
      double dr = 0.0;
      for (Complex z : pts) {
        dr = std::max(dr, std::abs(back.g_sharp(z) - data.g(z)) / (1.0 + std::abs(data.g(z))));
        dr = std::max(dr, std::abs(back.f_sharp(z) - data.f(z)) / (1.0 + std::abs(data.f(z))));
      }
      r.check_max("duality", "dual of the dual reproduces (g, f)", dr, 1e-8 * s);
    }

    const ExhaustionResult kt = dual_total_curvature(Gm);
    if (Gm.is_rational()) {
      const double expected = 4.0 * kPi * rational_degree(Gm);
      const double rel = std::abs(kt.extrapolated - expected) / expected;
      r.check("duality", "dual total curvature", kt.extrapolated, "4 pi deg G = " + format_number(expected) + " +- 1%",
              rel <= 0.01 * s && !kt.divergent);
      const InequalityPair ineq = inequality_checks(kt.extrapolated, topo);
      ordered_json v;
      v["lhs"] = number_json(ineq.osserman.lhs);
      v["rhs"] = number_json(ineq.osserman.rhs);
      v["margin"] = number_json(ineq.osserman.margin);
      r.add("duality", "osserman inequality", v, "lhs <= chi - n", ineq.osserman.status == InequalityStatus::Satisfied ? verdict::kPass : verdict::kFail);
    } else {
      r.info("duality", "dual total curvature", number_json(kt.divergent ? std::numeric_limits<double>::infinity() : kt.extrapolated));
      r.add("duality", "osserman inequality", "non-rational G", "", verdict::kNotApplicable);
    }
    if (data.target == TargetSpace::DeSitterSpace) {
      const InequalityPair ineq = inequality_checks(kt.divergent ? std::numeric_limits<double>::infinity() : kt.extrapolated, topo);
      ordered_json v;
      v["lhs"] = number_json(ineq.cohn_vossen.lhs);
      v["rhs"] = number_json(ineq.cohn_vossen.rhs);
      r.add("duality", "cohn-vossen inequality (lift metric)", v, "lhs < chi",
            ineq.cohn_vossen.status == InequalityStatus::Satisfied   ? verdict::kPass
            : ineq.cohn_vossen.status == InequalityStatus::Violated ? verdict::kFail
                                                                     : verdict::kNotApplicable);
    }
  }
}

std::function<double(Complex)> analysis_density(const SurfaceSpec& spec, const DataEvaluator& ev) {
  if (spec.data.target == TargetSpace::HyperbolicSpace) return [&ev](Complex z) { return ev.metric_density(z); };
  if (!spec.gauss_map || !nonconstant(*spec.gauss_map)) return {};
  const PowerRational G = *spec.gauss_map;
  return [&ev, G](Complex z) { return dual_metric_density(G, ev.hopf_density(z), z); };
}

// Curvature decay along one end band: log-log fit of -kappa against the
// intrinsic distance from the core ring, compared with the exponent read off
// the end expansion of (g, f).
void add_decay(AnalysisReport& r, const std::string& name, const Chart& chart, const BryantData& data,
               const DataEvaluator& ev, const DistanceField& dist) {
  std::vector<double> kappa(chart.size());
  parallel_for(chart.size(), [&](std::size_t k) {
    kappa[k] = ev.hyperbolic_curvature(chart.z_at(static_cast<int>(k % chart.nu), static_cast<int>(k / chart.nu)));
  });
  double predicted = std::numeric_limits<double>::quiet_NaN();
  if (nonconstant(data.g)) {
    const EndExpansion e = normalized_end_expansion(data.g, data.f, chart.end);
    if (e.bigI > 0) predicted = predicted_decay_exponent(e);
    ordered_json ev_json;
    ev_json["beta"] = number_json(e.beta);
    ev_json["I"] = number_json(e.bigI);
    ev_json["rotated"] = e.rotated;
    r.info("geometry", name + ": end expansion", ev_json);
  }
  const double hi = dist.trusted_radius, lo = hi / 10.0;
  const DecayFit fit = curvature_decay_fit(kappa, dist.rho, lo, hi, std::isnan(predicted) ? 0.0 : predicted);
  if (fit.c == 0.0) {
    r.check("geometry", name + ": curvature decay envelope constant c", 0.0, "flat tail", fit.envelope_holds);
  } else if (std::isnan(predicted)) {
    r.add("geometry", name + ": curvature decay slope", number_json(fit.slope), "no prediction (I <= 0)", verdict::kNotApplicable);
  } else {
    r.check("geometry", name + ": curvature decay slope", fit.slope,
            "<= -2 and within 15% of " + format_number(-predicted), fit.matches_prediction());
    r.check("geometry", name + ": curvature envelope holds on tail", fit.c, "0 >= kappa >= -c/rho^(2+eps)", fit.envelope_holds);
    r.info("geometry", name + ": decay epsilon", number_json(fit.epsilon));
  }
  const double integ = integrability_check(fit.c, fit.epsilon, fit.r0, fit.kappa0);
  r.check("geometry", name + ": integrability of s k(s)", integ, "finite", std::isfinite(integ));
}

void add_geometry(AnalysisReport& r, const SurfaceSpec& spec) {
  const double s = spec.tolerance_scale;
  const BryantData& data = spec.data;
  const DataEvaluator ev(data);
  const SurfaceTopology topo = SurfaceTopology::of(data);

  if (data.target == TargetSpace::HyperbolicSpace) {
    const ExhaustionResult tc = total_curvature(data);
    const double value = tc.divergent ? std::numeric_limits<double>::infinity() : tc.extrapolated;
    if (data.g.is_rational()) {
      const double expected = 4.0 * kPi * rational_degree(data.g);
      const bool ok = expected == 0.0 ? std::abs(value) <= 1e-12 : std::abs(value - expected) <= 0.02 * s * expected;
      r.check("geometry", "total curvature", value, "4 pi deg g = " + format_number(expected) + " +- 2%", ok);
    } else {
      r.info("geometry", "total curvature", number_json(value));
    }
    const InequalityPair ineq = inequality_checks(value, topo);
    ordered_json v;
    v["lhs"] = number_json(ineq.cohn_vossen.lhs);
    v["rhs"] = number_json(ineq.cohn_vossen.rhs);
    r.add("geometry", "cohn-vossen inequality", v, "lhs < chi",
          ineq.cohn_vossen.status == InequalityStatus::Satisfied   ? verdict::kPass
          : ineq.cohn_vossen.status == InequalityStatus::Violated ? verdict::kFail
                                                                   : verdict::kNotApplicable);
  }

  const auto density = analysis_density(spec, ev);
  for (const ChartConfig& c : spec.charts) {
    if (!c.geometry) continue;
    const std::string& name = c.chart.name;
    if (!density) {
      r.add("geometry", name + ": intrinsic analysis", "needs a rational Gauss map for the lift metric", "", verdict::kNotApplicable);
      continue;
    }
    const MetricGrid grid = MetricGrid::from_density(c.chart, density);
    const DistanceField dist = distance_from_core(grid);
    r.info("geometry", name + ": trusted radius", number_json(dist.trusted_radius));
    const VolumeGrowth vg = volume_growth(grid, dist, default_radii(dist));
    r.check("geometry", name + ": volume growth exponent (top decade)", vg.exponent, "[1.8, 2.2]",
            vg.exponent >= 2.0 - 0.2 * s && vg.exponent <= 2.0 + 0.2 * s);
    r.info("geometry", name + ": vol/r^2 coefficient", number_json(vg.coefficient));
    r.info("geometry", name + ": vol/r^2 bound", number_json(vg.bound));

    const ParabolicityResult par = parabolicity_integral(vg.radii, vg.volume);
    ordered_json pv;
    pv["slope"] = number_json(par.slope);
    pv["expected_slope"] = number_json(vg.coefficient > 0 ? 1.0 / vg.coefficient : 0.0);
    pv["verdict"] = par.verdict;
    r.add("geometry", name + ": parabolicity integral", pv, "slope > 0, divergent",
          par.slope > 0.0 && par.divergent ? verdict::kPass : verdict::kFail);

    if (data.target == TargetSpace::HyperbolicSpace) {
      add_decay(r, name, c.chart, data, ev, dist);
    } else {
      // The face metric degenerates on |g| = 1, so decay is measured on the
      // Bryant surface in H^3 carrying the same data.
      const BryantData companion = hyperbolic_companion(data);
      const DataEvaluator cev(companion);
      const MetricGrid cgrid = MetricGrid::from_density(c.chart, [&cev](Complex z) { return cev.metric_density(z); });
      add_decay(r, "companion " + name, c.chart, companion, cev, distance_from_core(cgrid));
    }
  }
}

CoverageReport compute_coverage(const SurfaceSpec& spec, const std::vector<Lifted>& lifts) {
  if (spec.gauss_map && spec.gauss_map->is_rational()) return omitted_values_exact(*spec.gauss_map, spec.data.punctures);
  if (spec.gauss_map && spec.gauss_map->is_constant()) return omitted_values_exact(*spec.gauss_map, spec.data.punctures);
  std::vector<GaussSamples> samples;
  for (const Lifted& l : lifts) {
    GaussSamples gs{l.field.chart, {}};
    const Chart& c = l.field.chart;
    gs.values.resize(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Complex z = c.z_at(static_cast<int>(k % c.nu), static_cast<int>(k / c.nu));
      gs.values[k] = hyperbolic_gauss(l.field.F[k], spec.data.g(z));
    }
    samples.push_back(std::move(gs));
  }
  if (samples.empty()) throw DomainError("coverage: needs a rational Gauss map or a lift chart");
  SampledOptions opts;
  opts.level = spec.analysis.coverage_level;
  return coverage_sampled(samples, opts);
}

void add_coverage(AnalysisReport& r, const SurfaceSpec& spec, const std::vector<Lifted>& lifts) {
  CoverageReport cov = compute_coverage(spec, lifts);
  if (spec.analysis.inject_omitted_count) {
    cov.mode = CoverageMode::ExactRational;
    cov.omitted_count = *spec.analysis.inject_omitted_count;
    r.info("coverage", "injected omitted count", cov.omitted_count);
  }
  r.info("coverage", "mode", to_string(cov.mode));
  if (cov.mode == CoverageMode::ConstantMap) {
    r.info("coverage", "omitted count", "constant");
  } else {
    r.info("coverage", "omitted count", cov.omitted_count);
    ordered_json list = ordered_json::array();
    for (Complex w : cov.omitted) {
      if (is_infinite(w)) {
        list.push_back("inf");
      } else {
        list.push_back({number_json(w.real()), number_json(w.imag())});
      }
    }
    r.info("coverage", cov.mode == CoverageMode::Sampled ? "uncovered cluster centres" : "omitted values", list);
  }
  if (cov.mode == CoverageMode::Sampled) {
    r.info("coverage", "cells total", cov.cells_total);
    r.info("coverage", "cells uncovered", cov.cells_uncovered);
  }
  const VerdictReport v = picard_verdict(cov);
  const char* tag = v.verdict == PicardVerdict::Pass   ? verdict::kPass
                    : v.verdict == PicardVerdict::Fail ? verdict::kFail
                                                        : verdict::kResolutionBounded;
  r.add("coverage", "picard verdict", v.annotation, "omitted <= 2 or constant", tag);
}

}  // namespace

std::vector<Complex> interior_samples(const Chart& chart, int per_axis) {
  std::vector<Complex> out;
  for (int a = 1; a <= per_axis; ++a)
    for (int b = 1; b <= per_axis; ++b) {
      const int i = static_cast<int>(std::lround(static_cast<double>(a) / (per_axis + 1) * (chart.nu - 1)));
      const int j = static_cast<int>(std::lround(static_cast<double>(b) / (per_axis + 1) * (chart.nv - 1)));
      out.push_back(chart.z_at(i, j));
    }
  return out;
}

AnalysisReport run_validate(const SurfaceSpec& spec) {
  AnalysisReport r = start(spec, "validate");
  const ValidationReport v = validate(spec.data);
  r.check("bryant_data", "validation issues", static_cast<double>(v.issues.size()), "== 0", v.clean());
  for (const Diagnostic& d : v.issues) {
    ordered_json j;
    j["location"] = complex_to_json(d.location);
    j["message"] = d.message;
    r.add("bryant_data", "diagnostic: " + d.kind, j, "", verdict::kFail);
  }
  return r;
}

SynthResult run_synth(const SurfaceSpec& spec, const std::string& chart_filter) {
  SynthResult out;
  out.report = start(spec, "synth");
  out.report.info("immersion", "target", target_name(spec.data.target));
  for (const Lifted& l : lift_charts(spec, chart_filter)) {
    MeshOutput m{l.config->chart.name, {}};
    add_immersion_checks(out.report, spec, l, &m.mesh);
    out.meshes.push_back(std::move(m));
  }
  return out;
}

AnalysisReport run_analyze(const SurfaceSpec& spec) {
  AnalysisReport r = start(spec, "analyze");
  r.info("cli", "target", target_name(spec.data.target));
  add_data_checks(r, spec);
  std::vector<Lifted> lifts;
  if (spec.analysis.lift) {
    lifts = lift_charts(spec, "");
    add_lift_checks(r, spec, lifts);
    if (spec.analysis.immersion)
      for (const Lifted& l : lifts) add_immersion_checks(r, spec, l, nullptr);
  }
  if (spec.analysis.monodromy) add_monodromy(r, spec);
  if (spec.analysis.duality) add_duality(r, spec, lifts);
  if (spec.analysis.geometry) add_geometry(r, spec);
  if (spec.analysis.coverage) add_coverage(r, spec, lifts);
  return r;
}

AnalysisReport run_coverage(const SurfaceSpec& spec) {
  AnalysisReport r = start(spec, "coverage");
  std::vector<Lifted> lifts;
  if (!(spec.gauss_map && (spec.gauss_map->is_rational() || spec.gauss_map->is_constant()))) lifts = lift_charts(spec, "");
  add_coverage(r, spec, lifts);
  return r;
}

}  // namespace bryant
