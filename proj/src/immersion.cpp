#include "bryant/immersion.hpp"

#include <cstdio>

#include "bryant/parallel.hpp"

namespace bryant {

namespace {

void check_det(const SL2Matrix& F) {
  if (std::abs(F.det() - 1.0) > 1e-8) throw DomainError("immersion: det F drifted from 1");
}

}  // namespace

HermPoint to_hyperbolic(const SL2Matrix& F) {
  check_det(F);
  return {std::norm(F.a) + std::norm(F.b), std::norm(F.c) + std::norm(F.d), F.a * std::conj(F.c) + F.b * std::conj(F.d)};
}

HermPoint to_desitter(const SL2Matrix& F) {
  check_det(F);
  return {std::norm(F.a) - std::norm(F.b), std::norm(F.c) - std::norm(F.d), F.a * std::conj(F.c) - F.b * std::conj(F.d)};
}

HermPoint immerse_point(const SL2Matrix& F, TargetSpace target) {
  return target == TargetSpace::HyperbolicSpace ? to_hyperbolic(F) : to_desitter(F);
}

LorentzVector herm_to_lorentz(const HermPoint& X) {
  return {0.5 * (X.h11 + X.h22), X.h12.real(), X.h12.imag(), 0.5 * (X.h11 - X.h22)};
}

HermPoint lorentz_to_herm(const LorentzVector& x) { return {x.x0 + x.x3, x.x0 - x.x3, {x.x1, x.x2}}; }

double lorentz_pairing(const LorentzVector& x, const LorentzVector& y) {
  return -x.x0 * y.x0 + x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3;
}

double herm_pairing(const HermPoint& X, const HermPoint& Y) {
  // adj(Y) = [[h22, -h12], [-conj h12, h11]]
  const double tr = X.h11 * Y.h22 - (X.h12 * std::conj(Y.h12)).real() - (std::conj(X.h12) * Y.h12).real() + X.h22 * Y.h11;
  return -0.5 * tr;
}

std::array<double, 3> to_poincare_ball(const LorentzVector& x) {
  if (!(x.x0 > 0.0) || std::abs(lorentz_pairing(x, x) + 1.0) > 1e-6 * (1.0 + x.x0 * x.x0))
    throw DomainError("to_poincare_ball: point is not on the hyperboloid model of H^3");
  const double s = 1.0 + x.x0;
  return {x.x1 / s, x.x2 / s, x.x3 / s};
}

HermPoint apply_isometry(const SL2Matrix& Y, const HermPoint& X) {
  const SL2Matrix M{X.h11, X.h12, std::conj(X.h12), X.h22};
  const SL2Matrix R = Y * M * Y.adjoint();
  return {R.a.real(), R.d.real(), R.b};
}

ImmersedGrid immerse(const SL2Field& field, TargetSpace target) {
  ImmersedGrid grid;
  grid.chart = field.chart;
  grid.target = target;
  grid.points.resize(field.F.size());
  parallel_for(field.F.size(), [&](std::size_t k) { grid.points[k] = immerse_point(field.F[k], target); });
  return grid;
}

namespace {

std::vector<std::uint8_t> singular_nodes(const BryantData& data, const Chart& chart) {
  std::vector<std::uint8_t> flag(chart.size(), 0);
  if (data.target != TargetSpace::DeSitterSpace) return flag;
  for (const GridCell& c : singular_locus(data, chart)) {
    const int j1 = (c.j + 1) % chart.nv;
    flag[chart.index(c.i, c.j)] = flag[chart.index(c.i + 1, c.j)] = 1;
    flag[chart.index(c.i, j1)] = flag[chart.index(c.i + 1, j1)] = 1;
  }
  return flag;
}

}  // namespace

PullbackResult pullback_metric_check(const ImmersedGrid& grid, const BryantData& data) {
  const Chart& c = grid.chart;
  const DataEvaluator ev(data);
  const std::vector<std::uint8_t> singular = singular_nodes(data, c);
  auto near_singular = [&](int i, int j) {
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        const int ii = i + di, jj = j + dj;
        if (ii < 0 || ii >= c.nu || jj < 0 || jj >= c.nv) continue;
        if (singular[c.index(ii, jj)]) return true;
      }
    return false;
  };

  struct Row {
    double residual = 0.0;
    int checked = 0, excluded = 0;
  };
  std::vector<Row> rows(c.nv);
  parallel_for(static_cast<std::size_t>(c.nv), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    if (j < 1 || j > c.nv - 2) return;
    Row& row = rows[j];
    for (int i = 1; i <= c.nu - 2; ++i) {
      if (near_singular(i, j)) {
        ++row.excluded;
        continue;
      }
      const HermPoint pu = (0.5 / c.du()) * (grid.at(i + 1, j) - grid.at(i - 1, j));
      const HermPoint pv = (0.5 / c.dv()) * (grid.at(i, j + 1) - grid.at(i, j - 1));
      const double E = herm_pairing(pu, pu);
      const double G = herm_pairing(pv, pv);
      const double F = herm_pairing(pu, pv);
      const Complex z = c.z_at(i, j);
      const double J2 = std::norm(c.dz_dw(i, j));
      const double expected = ev.metric_density(z) * J2;
      const double ref = ev.hyperbolic_density(z) * J2;
      const double r = std::max({std::abs(E - expected), std::abs(G - expected), std::abs(F)}) / ref;
      row.residual = std::max(row.residual, r);
      ++row.checked;
    }
  });
  PullbackResult out;
  for (const Row& r : rows) {
    out.max_residual = std::max(out.max_residual, r.residual);
    out.nodes_checked += r.checked;
    out.nodes_excluded += r.excluded;
  }
  return out;
}

MeshSurface build_mesh(const ImmersedGrid& grid, const BryantData& data) {
  const Chart& c = grid.chart;
  const DataEvaluator ev(data);
  MeshSurface mesh;
  mesh.target = grid.target;
  mesh.chart_name = c.name;
  const std::size_t n = c.size();
  mesh.vertices.resize(n);
  mesh.kappa.resize(n);
  mesh.lambda2.resize(n);
  mesh.absg.resize(n);
  mesh.x0.resize(n);
  mesh.singular = singular_nodes(data, c);
  parallel_for(n, [&](std::size_t k) {
    const int i = static_cast<int>(k % c.nu), j = static_cast<int>(k / c.nu);
    const Complex z = c.z_at(i, j);
    const LorentzVector x = herm_to_lorentz(grid.points[k]);
    mesh.x0[k] = x.x0;
    if (grid.target == TargetSpace::HyperbolicSpace) {
      mesh.vertices[k] = to_poincare_ball(x);
    } else {
      mesh.vertices[k] = {x.x1, x.x2, x.x3};
    }
    try {
      mesh.kappa[k] = ev.hyperbolic_curvature(z);
    } catch (const DomainError&) {
      mesh.kappa[k] = std::numeric_limits<double>::quiet_NaN();
    }
    mesh.lambda2[k] = ev.metric_density(z);
    const Complex g = ev.g(z);
    mesh.absg[k] = is_finite(g) ? std::abs(g) : std::numeric_limits<double>::max();
  });
  for (int j = 0; j + 1 < c.nv; ++j)
    for (int i = 0; i + 1 < c.nu; ++i) {
      mesh.faces.push_back({static_cast<int>(c.index(i, j)), static_cast<int>(c.index(i + 1, j)),
                            static_cast<int>(c.index(i + 1, j + 1)), static_cast<int>(c.index(i, j + 1))});
    }
  return mesh;
}

void write_ply(const MeshSurface& mesh, std::ostream& out) {
  const bool ds = mesh.target == TargetSpace::DeSitterSpace;
  out << "ply\nformat ascii 1.0\n";
  out << "comment chart " << mesh.chart_name << "\n";
  out << "comment model " << (ds ? "lorentz-x1x2x3" : "poincare-ball") << "\n";
  out << "element vertex " << mesh.vertices.size() << "\n";
  out << "property double x\nproperty double y\nproperty double z\n";
  out << "property double kappa\nproperty double lambda2\nproperty double absg\nproperty uchar singular\n";
  if (ds) out << "property double x0\n";
  out << "element face " << mesh.faces.size() << "\n";
  out << "property list uchar int vertex_indices\nend_header\n";
  char buf[256];
  for (std::size_t k = 0; k < mesh.vertices.size(); ++k) {
    const auto& v = mesh.vertices[k];
    std::snprintf(buf, sizeof buf, "%.10g %.10g %.10g %.10g %.10g %.10g %d", v[0], v[1], v[2], mesh.kappa[k],
                  mesh.lambda2[k], mesh.absg[k], static_cast<int>(mesh.singular[k]));
    out << buf;
    if (ds) {
      std::snprintf(buf, sizeof buf, " %.10g", mesh.x0[k]);
      out << buf;
    }
    out << "\n";
  }
  for (const auto& f : mesh.faces) out << "4 " << f[0] << " " << f[1] << " " << f[2] << " " << f[3] << "\n";
}

}  // namespace bryant
