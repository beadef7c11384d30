#include <random>

#include "bryant/config.hpp"
#include "bryant/coverage.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bryant;
using testing::poly;
using testing::zpow;

namespace {

double chordal(Complex a, Complex b) { return (to_sphere(a) - to_sphere(b)).norm(); }

bool contains_point(const std::vector<Complex>& set, Complex w, double tol) {
  for (Complex s : set)
    if (chordal(s, w) <= tol) return true;
  return false;
}

GaussSamples sample(const Chart& c, const PowerRational& G) {
  GaussSamples s{c, {}};
  for (std::size_t k = 0; k < c.size(); ++k) s.values.push_back(G(c.z_at(static_cast<int>(k % c.nu), static_cast<int>(k / c.nu))));
  return s;
}

}  // namespace

TEST_CASE("exact omitted values") {
  const CoverageReport a = omitted_values_exact(PowerRational::identity(), {0.0, infinity()});
  CHECK(a.mode == CoverageMode::ExactRational);
  CHECK(a.omitted_count == 2);
  CHECK(contains_point(a.omitted, 0.0, 1e-12));
  CHECK(contains_point(a.omitted, infinity(), 1e-12));

  const CoverageReport b = omitted_values_exact(zpow(2), {1.0});
  CHECK(b.omitted_count == 0);
  CHECK(b.omitted.empty());

  const CoverageReport c = omitted_values_exact(zpow(2), {0.0, infinity()});
  CHECK(c.omitted_count == 2);

  const CoverageReport d = omitted_values_exact(PowerRational::constant(Complex(1, 2)), {infinity()});
  CHECK(d.mode == CoverageMode::ConstantMap);
  CHECK(d.omitted_count == -1);
}

TEST_CASE("omitted sets move with Mobius maps") {
  std::mt19937_64 rng(31);
  const std::vector<Complex> E = {0.0, infinity(), Complex(1, 1)};
  const PowerRational G = zpow(2) * poly({-Complex(1, 1), 1.0}) / poly({2.0, 1.0});
  const CoverageReport base = omitted_values_exact(G, E);
  for (int trial = 0; trial < 20; ++trial) {
    const Mobius M = testing::random_mobius(rng);
    const CoverageReport moved = omitted_values_exact(compose(M, G), E);
    REQUIRE(moved.omitted_count == base.omitted_count);
    for (Complex w : base.omitted) CHECK(contains_point(moved.omitted, M(w), 1e-7));
  }
}

TEST_CASE("icosphere cells") {
  const Icosphere ico(4);
  CHECK(ico.cell_count() == 20 * 64);
  double area = 0.0;
  for (int c = 0; c < ico.cell_count(); ++c) area += ico.area(c);
  CHECK(area == doctest::Approx(4.0 * kPi).epsilon(1e-9));
  std::mt19937_64 rng(37);
  for (int k = 0; k < 100; ++k) {
    const Eigen::Vector3d p = to_sphere(testing::random_complex(rng, 2.0));
    const int cell = ico.locate(p);
    CHECK((ico.centroid(cell) - p).norm() <= ico.cell_size());
  }
  for (Complex w : {Complex(0.3, -2), Complex(0, 0), Complex(-5, 1)}) CHECK(std::abs(from_sphere(to_sphere(w)) - w) < 1e-12);
  CHECK(is_infinite(from_sphere(to_sphere(infinity()))));
}

TEST_CASE("sampled coverage of G = z") {
  const PowerRational G = PowerRational::identity();
  const CoverageReport disk = coverage_sampled({sample(Chart::rect("disk", -10, 10, -10, 10, 201, 201), G)});
  CHECK(disk.mode == CoverageMode::Sampled);
  CHECK(disk.omitted_count == 1);
  CHECK(contains_point(disk.omitted, infinity(), 0.5));

  const CoverageReport ann = coverage_sampled({sample(Chart::band("ann", 0.0, 10.0, 0.5, 128, 128), G)});
  CHECK(ann.omitted_count == 2);
  CHECK(contains_point(ann.omitted, infinity(), 0.5));
  CHECK(contains_point(ann.omitted, 0.0, 0.8));
  CHECK(picard_verdict(ann).verdict == PicardVerdict::ResolutionBounded);

  const CoverageReport flat = coverage_sampled(std::vector<Complex>(50, Complex(0.4, 0.1)));
  CHECK(flat.mode == CoverageMode::ConstantMap);
  CHECK_THROWS(coverage_sampled(std::vector<Complex>{}));
}

TEST_CASE("exactly omitted values sit in uncovered clusters") {
  const SurfaceSpec spec = load_config(testing::fixture("catenoid-cousin-dual"));
  const CoverageReport exact = omitted_values_exact(*spec.gauss_map, spec.data.punctures);
  std::vector<GaussSamples> samples;
  // sampled mode rasterizes the lift charts, which stay clear of the ends
  for (const ChartConfig& c : spec.charts)
    if (c.chart.lift) samples.push_back(sample(c.chart, *spec.gauss_map));
  REQUIRE(!samples.empty());
  for (int level : {4, 5}) {
    SampledOptions opts;
    opts.level = level;
    const CoverageReport s = coverage_sampled(samples, opts);
    const double tol = 2.0 * Icosphere(level).cell_size();
    for (Complex w : exact.omitted) CHECK(contains_point(s.omitted, w, tol));
  }
}

TEST_CASE("rasterization does not depend on the sphere frame") {
  const std::vector<GaussSamples> s = {sample(Chart::band("ann", 0.0, 10.0, 0.5, 128, 128), PowerRational::identity())};
  SampledOptions opts;
  opts.frame = sphere_rotation(Complex(0.6, 0.0), Complex(0.0, 0.8));
  CHECK(coverage_sampled(s, opts).omitted_count == 2);
}

TEST_CASE("picard verdicts") {
  CoverageReport r;
  r.omitted_count = 2;
  CHECK(picard_verdict(r).verdict == PicardVerdict::Pass);
  r.omitted_count = 3;
  CHECK(picard_verdict(r).verdict == PicardVerdict::Fail);
  CHECK(to_string(picard_verdict(r).verdict) == "FAIL");
  r.mode = CoverageMode::ConstantMap;
  r.omitted_count = -1;
  const VerdictReport v = picard_verdict(r);
  CHECK(v.verdict == PicardVerdict::Pass);
  CHECK(v.annotation.find("horosphere") != std::string::npos);
  r.mode = CoverageMode::Sampled;
  r.omitted_count = 5;
  CHECK(picard_verdict(r).verdict == PicardVerdict::ResolutionBounded);
}

TEST_CASE("every fixture with a rational gauss map omits at most two values") {
  for (const char* name : {"catenoid-cousin-dual", "elliptic-catenoid-face", "horosphere"}) {
    const SurfaceSpec spec = load_config(testing::fixture(name));
    REQUIRE(spec.gauss_map.has_value());
    const CoverageReport r = omitted_values_exact(*spec.gauss_map, spec.data.punctures);
    CHECK(r.omitted_count <= 2);
    CHECK(picard_verdict(r).verdict == PicardVerdict::Pass);
  }
}
