#include "bryant/coverage.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace bryant {

std::string to_string(CoverageMode m) {
  switch (m) {
    case CoverageMode::ConstantMap: return "constant-map";
    case CoverageMode::ExactRational: return "exact-rational";
    case CoverageMode::Sampled: return "sampled";
  }
  return "unknown";
}

std::string to_string(PicardVerdict v) {
  switch (v) {
    case PicardVerdict::Pass: return "PASS";
    case PicardVerdict::Fail: return "FAIL";
    case PicardVerdict::ResolutionBounded: return "resolution-bounded";
  }
  return "unknown";
}

namespace {

bool in_set(const std::vector<Complex>& set, Complex z, double tol) {
  return std::any_of(set.begin(), set.end(), [&](Complex p) { return same_point(p, z, tol); });
}

}  // namespace

CoverageReport omitted_values_exact(const PowerRational& G, const std::vector<Complex>& punctures) {
  CoverageReport out;
  if (G.is_constant()) {
    out.mode = CoverageMode::ConstantMap;
    out.omitted_count = -1;
    return out;
  }
  if (!G.is_rational()) throw DomainError("omitted_values_exact: G must be rational");
  out.mode = CoverageMode::ExactRational;
  const Complex G_inf = G.value_at_infinity();

  std::vector<Complex> candidates;
  for (Complex p : punctures) {
    const Complex w = is_infinite(p) ? G_inf : G(p);
    if (!in_set(candidates, w, 1e-9)) candidates.push_back(w);
  }
  for (Complex w : candidates) {
    const RootSet pre = roots(G, w);
    bool omitted = std::all_of(pre.roots.begin(), pre.roots.end(),
                               [&](Complex r) { return in_set(punctures, r, 1e-6); });
    // Infinity is a preimage of w when G(infinity) = w.
    if (omitted && same_point(G_inf, w, 1e-9)) omitted = in_set(punctures, infinity(), 0.0);
    if (omitted) out.omitted.push_back(w);
  }
  out.omitted_count = static_cast<int>(out.omitted.size());
  return out;
}

Eigen::Vector3d to_sphere(Complex w) {
  if (is_infinite(w)) return {0.0, 0.0, 1.0};
  const double n = std::norm(w);
  return Eigen::Vector3d(2.0 * w.real(), 2.0 * w.imag(), n - 1.0) / (1.0 + n);
}

Complex from_sphere(const Eigen::Vector3d& p) {
  const Eigen::Vector3d q = p.normalized();
  if (q.z() >= 1.0 - 1e-15) return infinity();
  return Complex(q.x(), q.y()) / (1.0 - q.z());
}

Eigen::Matrix3d sphere_rotation(Complex a, Complex c) {
  const Mobius M{a, -std::conj(c), c, std::conj(a)};
  Eigen::Matrix3d R;
  for (int k = 0; k < 3; ++k) R.col(k) = to_sphere(M(from_sphere(Eigen::Vector3d::Unit(k))));
  return R;
}

Icosphere::Icosphere(int level) {
  if (level < 1 || level > 9) throw DomainError("Icosphere: level must be in [1, 9]");
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double raw[12][3] = {{-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0}, {0, -1, phi}, {0, 1, phi},
                             {0, -1, -phi}, {0, 1, -phi}, {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  for (const auto& v : raw) vertices_.push_back(Eigen::Vector3d(v[0], v[1], v[2]).normalized());
  std::vector<std::array<int, 3>> faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                           {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                           {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                           {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (auto& f : faces) {
    const Eigen::Vector3d& a = vertices_[f[0]];
    const Eigen::Vector3d& b = vertices_[f[1]];
    const Eigen::Vector3d& c = vertices_[f[2]];
    if ((b - a).cross(c - a).dot(a + b + c) < 0) std::swap(f[1], f[2]);
  }
  levels_.push_back(faces);

  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int i, int j) {
    const auto key = std::minmax(i, j);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    vertices_.push_back((vertices_[i] + vertices_[j]).normalized());
    const int id = static_cast<int>(vertices_.size()) - 1;
    midpoint.emplace(key, id);
    return id;
  };
  for (int l = 1; l < level; ++l) {
    std::vector<std::array<int, 3>> next;
    next.reserve(levels_.back().size() * 4);
    for (const auto& f : levels_.back()) {
      const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    levels_.push_back(std::move(next));
  }

  const auto& cells = levels_.back();
  std::vector<std::vector<int>> by_vertex(vertices_.size());
  for (int k = 0; k < static_cast<int>(cells.size()); ++k)
    for (int v : cells[k]) by_vertex[v].push_back(k);
  adjacency_.resize(cells.size());
  for (int k = 0; k < static_cast<int>(cells.size()); ++k) {
    std::vector<int>& adj = adjacency_[k];
    for (int v : cells[k])
      for (int other : by_vertex[v])
        if (other != k) adj.push_back(other);
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    for (int e = 0; e < 3; ++e)
      cell_size_ = std::max(cell_size_, std::acos(std::clamp(vertices_[cells[k][e]].dot(vertices_[cells[k][(e + 1) % 3]]), -1.0, 1.0)));
  }
}

int Icosphere::locate(const Eigen::Vector3d& p) const {
  auto score = [&](const std::array<int, 3>& f) {
    const Eigen::Vector3d& a = vertices_[f[0]];
    const Eigen::Vector3d& b = vertices_[f[1]];
    const Eigen::Vector3d& c = vertices_[f[2]];
    return std::min({p.dot(a.cross(b)), p.dot(b.cross(c)), p.dot(c.cross(a))});
  };
  int best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < static_cast<int>(levels_[0].size()); ++k) {
    const double s = score(levels_[0][k]);
    if (s > best_score) {
      best_score = s;
      best = k;
    }
  }
  for (std::size_t l = 1; l < levels_.size(); ++l) {
    int next = 4 * best;
    best_score = -std::numeric_limits<double>::infinity();
    for (int k = 4 * best; k < 4 * best + 4; ++k) {
      const double s = score(levels_[l][k]);
      if (s > best_score) {
        best_score = s;
        next = k;
      }
    }
    best = next;
  }
  return best;
}

Eigen::Vector3d Icosphere::centroid(int cell) const {
  const auto& f = levels_.back()[cell];
  return (vertices_[f[0]] + vertices_[f[1]] + vertices_[f[2]]).normalized();
}

double Icosphere::area(int cell) const {
  // Spherical excess via the Van Oosterom-Strackee formula.
  const auto& f = levels_.back()[cell];
  const Eigen::Vector3d& a = vertices_[f[0]];
  const Eigen::Vector3d& b = vertices_[f[1]];
  const Eigen::Vector3d& c = vertices_[f[2]];
  const double num = std::abs(a.dot(b.cross(c)));
  const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(num, den);
}

namespace {

double angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b) { return std::acos(std::clamp(a.dot(b), -1.0, 1.0)); }

bool nearly_constant(const std::vector<Complex>& values) {
  const Eigen::Vector3d p0 = to_sphere(values.front());
  return std::all_of(values.begin(), values.end(), [&](Complex w) { return (to_sphere(w) - p0).norm() < 1e-12; });
}

CoverageReport summarize(const Icosphere& sphere, const std::vector<char>& covered, int level) {
  CoverageReport out;
  out.mode = CoverageMode::Sampled;
  out.level = level;
  out.cells_total = sphere.cell_count();
  std::vector<int> cluster(out.cells_total, -1);
  int count = 0;
  for (int k = 0; k < out.cells_total; ++k) {
    if (covered[k] || cluster[k] >= 0) continue;
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    std::vector<int> stack{k};
    cluster[k] = count;
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      ++out.cells_uncovered;
      sum += sphere.centroid(c);
      for (int n : sphere.neighbours(c))
        if (!covered[n] && cluster[n] < 0) {
          cluster[n] = count;
          stack.push_back(n);
        }
    }
    out.omitted.push_back(from_sphere(sum));
    ++count;
  }
  out.omitted_count = count;
  return out;
}

}  // namespace

CoverageReport coverage_sampled(const std::vector<Complex>& values, const SampledOptions& opts) {
  if (values.empty()) throw DomainError("coverage_sampled: empty sample set");
  if (nearly_constant(values)) {
    CoverageReport out;
    out.mode = CoverageMode::ConstantMap;
    out.omitted_count = -1;
    return out;
  }
  const Icosphere sphere(opts.level);
  std::vector<char> covered(sphere.cell_count(), 0);
  for (Complex w : values) covered[sphere.locate(opts.frame * to_sphere(w))] = 1;
  return summarize(sphere, covered, opts.level);
}

CoverageReport coverage_sampled(const std::vector<GaussSamples>& samples, const SampledOptions& opts) {
  std::vector<Complex> all;
  for (const GaussSamples& s : samples) {
    if (s.values.size() != s.chart.size()) throw DomainError("coverage_sampled: sample/grid mismatch");
    all.insert(all.end(), s.values.begin(), s.values.end());
  }
  if (all.empty()) throw DomainError("coverage_sampled: empty sample set");
  if (nearly_constant(all)) {
    CoverageReport out;
    out.mode = CoverageMode::ConstantMap;
    out.omitted_count = -1;
    return out;
  }
  const Icosphere sphere(opts.level);
  std::vector<char> covered(sphere.cell_count(), 0);
  const double target = 0.5 * sphere.cell_size();
  // Quads spanning more than this are assumed to straddle a pole of G and
  // are not interpolated.
  const double max_span = kPi / 3.0;

  std::function<void(const Eigen::Vector3d&, const Eigen::Vector3d&, const Eigen::Vector3d&, const Eigen::Vector3d&, int)>
      refine = [&](const Eigen::Vector3d& p00, const Eigen::Vector3d& p10, const Eigen::Vector3d& p11,
                   const Eigen::Vector3d& p01, int depth) {
        const double span = std::max({angle(p00, p11), angle(p10, p01), angle(p00, p10), angle(p00, p01)});
        if (span <= target || depth >= opts.max_refine || span > max_span) return;
        const Eigen::Vector3d m0 = (p00 + p10).normalized(), m1 = (p10 + p11).normalized();
        const Eigen::Vector3d m2 = (p11 + p01).normalized(), m3 = (p01 + p00).normalized();
        const Eigen::Vector3d mc = (p00 + p10 + p11 + p01).normalized();
        for (const Eigen::Vector3d* q : {&m0, &m1, &m2, &m3, &mc}) covered[sphere.locate(*q)] = 1;
        refine(p00, m0, mc, m3, depth + 1);
        refine(m0, p10, m1, mc, depth + 1);
        refine(mc, m1, p11, m2, depth + 1);
        refine(m3, mc, m2, p01, depth + 1);
      };

  for (const GaussSamples& s : samples) {
    const Chart& c = s.chart;
    std::vector<Eigen::Vector3d> pts(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      pts[k] = opts.frame * to_sphere(s.values[k]);
      covered[sphere.locate(pts[k])] = 1;
    }
    const int jmax = c.periodic_v() ? c.nv : c.nv - 1;
    for (int j = 0; j < jmax; ++j) {
      const int j1 = (j + 1) % c.nv;
      for (int i = 0; i + 1 < c.nu; ++i)
        refine(pts[c.index(i, j)], pts[c.index(i + 1, j)], pts[c.index(i + 1, j1)], pts[c.index(i, j1)], 0);
    }
  }
  return summarize(sphere, covered, opts.level);
}

VerdictReport picard_verdict(const CoverageReport& report) {
  VerdictReport v;
  switch (report.mode) {
    case CoverageMode::ConstantMap:
      v.verdict = PicardVerdict::Pass;
      v.annotation = "G is constant: M is a horosphere";
      break;
    case CoverageMode::ExactRational:
      v.verdict = report.omitted_count <= 2 ? PicardVerdict::Pass : PicardVerdict::Fail;
      v.annotation = "G omits " + std::to_string(report.omitted_count) + " point(s); at most 2 allowed";
      break;
    case CoverageMode::Sampled:
      v.verdict = PicardVerdict::ResolutionBounded;
      v.annotation = std::to_string(report.omitted_count) + " uncovered cluster(s) at icosphere level " +
                     std::to_string(report.level) + " (upper bound on omitted points at this resolution)";
      break;
  }
  return v;
}

}  // namespace bryant
