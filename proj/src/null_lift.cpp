#include "bryant/null_lift.hpp"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <sstream>

#include "bryant/parallel.hpp"

namespace bryant {

namespace odeint = boost::numeric::odeint;

SL2Matrix SL2Matrix::inverse() const { return {d, -b, -c, a}; }

SL2Matrix SL2Matrix::normalized() const {
  const Complex s = std::sqrt(det());
  return {a / s, b / s, c / s, d / s};
}

SL2Matrix operator*(const SL2Matrix& x, const SL2Matrix& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
SL2Matrix operator+(const SL2Matrix& x, const SL2Matrix& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
SL2Matrix operator-(const SL2Matrix& x, const SL2Matrix& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
SL2Matrix operator*(Complex s, const SL2Matrix& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }

double max_abs(const SL2Matrix& m) {
  return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
}

PathSpec PathSpec::circle_loop(Complex center, double radius, int n) {
  if (n < 3 || !(radius > 0)) throw DomainError("circle_loop: need radius > 0 and at least 3 vertices");
  PathSpec p;
  p.closed = true;
  for (int k = 0; k < n; ++k) p.vertices.push_back(center + std::polar(radius, 2.0 * kPi * k / n));
  return p;
}

LiftSystem::LiftSystem(const BryantData& data, double cut)
    : data_(data), gf_(data.g * data.f), g2f_(data.g * data.g * data.f), cut_(cut) {}

void LiftSystem::eval(Complex z, Complex& a11, Complex& a12, Complex& a21) const {
  a21 = data_.f(z, cut_);
  a11 = gf_(z, cut_);
  a12 = -g2f_(z, cut_);
}

namespace {

using State = std::array<double, 8>;

State pack(const SL2Matrix& m) {
  return {m.a.real(), m.a.imag(), m.b.real(), m.b.imag(), m.c.real(), m.c.imag(), m.d.real(), m.d.imag()};
}

SL2Matrix unpack(const State& s) { return {{s[0], s[1]}, {s[2], s[3]}, {s[4], s[5]}, {s[6], s[7]}}; }

std::string segment_name(Complex a, Complex b) {
  std::ostringstream os;
  os << "(" << a.real() << "," << a.imag() << ") -> (" << b.real() << "," << b.imag() << ")";
  return os.str();
}

}  // namespace

SL2Matrix integrate_segment(const LiftSystem& sys, Complex from, Complex to, const SL2Matrix& F0,
                            const IntegratorOptions& opts) {
  if (from == to) return F0;
  const Complex dz = to - from;
  auto rhs = [&](const State& x, State& dxdt, double t) {
    Complex a11, a12, a21;
    sys.eval(from + t * dz, a11, a12, a21);
    if (!is_finite(a11) || !is_finite(a12) || !is_finite(a21))
      throw NumericError("null lift: singular coefficient on segment " + segment_name(from, to));
    const SL2Matrix F = unpack(x);
    // F A with A22 = -A11, scaled by dz/dt.
    const SL2Matrix d{(F.a * a11 + F.b * a21) * dz, (F.a * a12 - F.b * a11) * dz, (F.c * a11 + F.d * a21) * dz,
                      (F.c * a12 - F.d * a11) * dz};
    dxdt = pack(d);
  };

  auto stepper = odeint::make_controlled(opts.atol, opts.rtol, odeint::runge_kutta_dopri5<State>());
  State x = pack(F0);
  double t = 0.0;
  double dt = 1.0;
  long steps = 0;
  while (t < 1.0) {
    if (t + dt > 1.0) dt = 1.0 - t;
    if (stepper.try_step(rhs, x, t, dt) == odeint::success) {
      x = pack(unpack(x).normalized());
      stepper.reset();
      if (++steps > opts.max_steps)
        throw NumericError("null lift: step budget exhausted on segment " + segment_name(from, to));
    } else if (dt < opts.min_step) {
      throw NumericError("null lift: step underflow on segment " + segment_name(from, to));
    }
  }
  return unpack(x);
}

SL2Matrix integrate_path(const BryantData& data, const PathSpec& path, const SL2Matrix& F0,
                         const IntegratorOptions& opts) {
  if (path.vertices.empty()) throw DomainError("integrate_path: empty path");
  for (Complex v : path.vertices)
    for (Complex p : data.punctures)
      if (same_point(v, p, 1e-14)) throw DomainError("integrate_path: vertex lies on a puncture");
  const LiftSystem sys(data, opts.cut);
  SL2Matrix F = F0;
  const std::size_t n = path.vertices.size();
  const std::size_t segments = path.closed ? n : n - 1;
  for (std::size_t k = 0; k < segments; ++k) {
    const Complex a = path.vertices[k];
    const Complex b = path.vertices[(k + 1) % n];
    try {
      F = integrate_segment(sys, a, b, F, opts);
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " [segment " + std::to_string(k) + "]");
    }
  }
  return F;
}

namespace {

void check_chart(const BryantData& data, const LiftSystem& sys, const Chart& chart) {
  (void)sys;
  for (Complex p : data.punctures) {
    if (chart.kind == ChartKind::Band && same_point(p, chart.end, 1e-12)) continue;
    if (chart.contains(p))
      throw DomainError("lift_on_grid: chart '" + chart.name + "' contains a puncture and has no declared cut");
  }
  const PowerRational gf = data.g * data.f;
  const PowerRational g2f = gf * data.g;
  for (const PowerRational* m : {&data.f, &gf, &g2f})
    for (Complex r : companion_roots(m->denom()))
      if (chart.contains(r)) throw DomainError("lift_on_grid: chart '" + chart.name + "' contains a pole of the lift system");
  const bool branched = !data.g.is_rational() || !data.f.is_rational();
  if (branched) {
    if (chart.kind == ChartKind::Rect && chart.u0 <= 0.0 && chart.v0 <= 0.0 && chart.v1 >= 0.0)
      throw DomainError("lift_on_grid: chart '" + chart.name + "' crosses the branch cut");
    if (chart.kind == ChartKind::Band && chart.center != Complex{})
      throw DomainError("lift_on_grid: branched data needs bands centred at the origin");
  }
}

}  // namespace

SL2Field lift_on_grid(const BryantData& data, const Chart& chart, Complex base, const SL2Matrix& F0,
                      const IntegratorOptions& opts) {
  const LiftSystem sys(data, opts.cut);
  check_chart(data, sys, chart);

  SL2Field field;
  field.chart = chart;
  field.F.assign(chart.size(), SL2Matrix{});

  int ib = 0, jb = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < chart.nv; ++j)
    for (int i = 0; i < chart.nu; ++i) {
      const double dist = std::abs(chart.z_at(i, j) - base);
      if (dist < best) {
        best = dist;
        ib = i;
        jb = j;
      }
    }

  auto edge = [&](int i0, int j0, int i1, int j1) {
    return integrate_segment(sys, chart.z_at(i0, j0), chart.z_at(i1, j1), field.F[chart.index(i0, j0)], opts);
  };

  field.F[chart.index(ib, jb)] = integrate_segment(sys, base, chart.z_at(ib, jb), F0, opts);
  for (int i = ib + 1; i < chart.nu; ++i) field.F[chart.index(i, jb)] = edge(i - 1, jb, i, jb);
  for (int i = ib - 1; i >= 0; --i) field.F[chart.index(i, jb)] = edge(i + 1, jb, i, jb);

  parallel_for(static_cast<std::size_t>(chart.nu), [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    for (int j = jb + 1; j < chart.nv; ++j) field.F[chart.index(i, j)] = edge(i, j - 1, i, j);
    for (int j = jb - 1; j >= 0; --j) field.F[chart.index(i, j)] = edge(i, j + 1, i, j);
  });

  std::vector<double> row_residual(chart.nv, 0.0);
  parallel_for(static_cast<std::size_t>(chart.nv), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    if (j == jb) return;
    for (int i = 0; i + 1 < chart.nu; ++i) {
      const SL2Matrix& target = field.F[chart.index(i + 1, j)];
      const SL2Matrix diff = edge(i, j, i + 1, j) - target;
      row_residual[j] = std::max(row_residual[j], max_abs(diff) / std::max(1.0, max_abs(target)));
    }
  });
  for (double r : row_residual) field.closure_residual = std::max(field.closure_residual, r);
  for (const SL2Matrix& F : field.F) field.max_det_drift = std::max(field.max_det_drift, std::abs(F.det() - 1.0));
  return field;
}

Complex hyperbolic_gauss(const SL2Matrix& F, Complex g) {
  if (is_infinite(g)) {
    if (F.c == Complex{}) return infinity();
    return F.a / F.c;
  }
  const Complex den = F.c * g + F.d;
  if (den == Complex{}) return infinity();
  return (F.a * g + F.b) / den;
}

namespace {

// Fourth-order central difference along u at an interior node.
SL2Matrix du_field(const SL2Field& field, int i, int j) {
  const Chart& c = field.chart;
  const SL2Matrix s = (-1.0 * field.at(i + 2, j)) + 8.0 * field.at(i + 1, j) - 8.0 * field.at(i - 1, j) +
                      field.at(i - 2, j);
  return (1.0 / (12.0 * c.du())) * s;
}

template <class Fn>
double max_over_interior(const SL2Field& field, Fn&& fn) {
  const Chart& c = field.chart;
  std::vector<double> row(c.nv, 0.0);
  parallel_for(static_cast<std::size_t>(c.nv), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    if (j < 2 || j > c.nv - 3) return;
    for (int i = 2; i <= c.nu - 3; ++i) row[j] = std::max(row[j], fn(i, j));
  });
  double m = 0.0;
  for (double r : row) m = std::max(m, r);
  return m;
}

}  // namespace

double secondary_gauss_check(const SL2Field& field, const BryantData& data) {
  return max_over_interior(field, [&](int i, int j) {
    const SL2Matrix dF = du_field(field, i, j);
    const Complex g = data.g(field.chart.z_at(i, j));
    if (!is_finite(g)) return 0.0;
    // Both rows of dF are proportional to (1, -g); use the better conditioned one.
    const bool top = std::abs(dF.a) >= std::abs(dF.c);
    const Complex lead = top ? dF.a : dF.c, tail = top ? dF.b : dF.d;
    if (std::abs(lead) <= 1e-13 * std::max(1.0, max_abs(field.at(i, j)))) return 0.0;
    return std::abs(-tail / lead - g) / (1.0 + std::abs(g));
  });
}

double gauss_map_fd_check(const SL2Field& field, const BryantData& data) {
  return max_over_interior(field, [&](int i, int j) {
    const SL2Matrix dF = du_field(field, i, j);
    const Complex G = hyperbolic_gauss(field.at(i, j), data.g(field.chart.z_at(i, j)));
    const double scale = std::max(1.0, max_abs(field.at(i, j))) * 1e-13;
    if (!is_finite(G) || std::abs(dF.c) <= scale) return 0.0;
    return std::abs(dF.a / dF.c - G) / (1.0 + std::abs(G));
  });
}

std::string to_string(MonodromyKind k) {
  switch (k) {
    case MonodromyKind::Trivial: return "trivial";
    case MonodromyKind::Elliptic: return "elliptic";
    case MonodromyKind::Hyperbolic: return "hyperbolic";
    case MonodromyKind::Parabolic: return "parabolic";
  }
  return "unknown";
}

MonodromyClass classify(const SL2Matrix& phi, double tol_scale) {
  MonodromyClass out;
  out.matrix = phi;
  out.trace = phi.trace();
  const double tol = tol_scale * 1e-6 * (1.0 + std::abs(out.trace));
  const SL2Matrix I = SL2Matrix::identity();
  out.non_real_trace = std::abs(out.trace.imag()) > tol;
  const double tr = out.trace.real();
  if (max_abs(phi - I) <= tol || max_abs(phi + I) <= tol) {
    out.kind = MonodromyKind::Trivial;
  } else if (std::abs(std::abs(tr) - 2.0) <= tol) {
    out.kind = MonodromyKind::Parabolic;
  } else if (std::abs(tr) < 2.0) {
    out.kind = MonodromyKind::Elliptic;
  } else {
    out.kind = MonodromyKind::Hyperbolic;
  }
  return out;
}

MonodromyClass monodromy(const BryantData& data, const PathSpec& loop, const SL2Matrix& F0,
                         const IntegratorOptions& opts) {
  if (!loop.closed) throw DomainError("monodromy: loop must be closed");
  if (!data.g.is_rational() || !data.f.is_rational())
    throw DomainError("monodromy: branched data is not single valued along loops");
  const SL2Matrix Fend = integrate_path(data, loop, F0, opts);
  return classify(F0.inverse() * Fend);
}

}  // namespace bryant

namespace bryant {

TransportedGauss::TransportedGauss(const BryantData& data, Complex base, const SL2Matrix& F0, IntegratorOptions opts)
    : sys_(data, opts.cut), base_(base), F0_(F0), opts_(opts) {}

SL2Matrix TransportedGauss::lift(Complex z) const { return integrate_segment(sys_, base_, z, F0_, opts_); }

SL2Matrix TransportedGauss::lift_from(Complex z0, const SL2Matrix& F_at_z0, Complex z) const {
  return integrate_segment(sys_, z0, z, F_at_z0, opts_);
}

Complex TransportedGauss::gauss(Complex z, const SL2Matrix& F_at_z) const {
  return hyperbolic_gauss(F_at_z, sys_.data().g(z, opts_.cut));
}

}  // namespace bryant
