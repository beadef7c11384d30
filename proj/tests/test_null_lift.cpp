#include <random>

#include "bryant/null_lift.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bryant;
using testing::entry_distance;
using testing::poly;
using testing::zpow;

namespace {

BryantData make(PowerRational g, PowerRational f, std::vector<Complex> E = {infinity()}) {
  BryantData d;
  d.g = std::move(g);
  d.f = std::move(f);
  d.punctures = std::move(E);
  return d;
}

const PowerRational zero = PowerRational::constant(0.0);
const PowerRational one = PowerRational::constant(1.0);

}  // namespace

TEST_CASE("flat data integrates to a unipotent matrix") {
  const BryantData horo = make(zero, one);
  for (Complex z : {Complex(1, 0), Complex(0.3, -0.8), Complex(-2, 1.5)}) {
    const SL2Matrix F = integrate_path(horo, PathSpec::segment(0.0, z), {});
    CHECK(entry_distance(F, {1.0, 0.0, z, 1.0}) < 1e-12);
  }
  const SL2Matrix F2 = integrate_path(make(zero, PowerRational::constant(2.0)), PathSpec::segment(0.0, 1.0), {});
  CHECK(entry_distance(F2, {1.0, 0.0, 2.0, 1.0}) < 1e-12);
}

TEST_CASE("adaptive integration agrees with a fine fixed-step RK4 run") {
  const BryantData d = make(PowerRational::identity(), one);
  const SL2Matrix F = integrate_path(d, PathSpec::segment(0.0, 1.0), {});
  const SL2Matrix oracle = testing::rk4_lift([](Complex z) { return z; }, [](Complex) { return Complex(1.0); }, 0.0, 1.0, 100000);
  CHECK(entry_distance(F, oracle) < 1e-8);
  CHECK(std::abs(F.det() - 1.0) < 1e-9);

  // intermediate points along the way
  for (double t : {0.25, 0.5, 0.75}) {
    const SL2Matrix Ft = integrate_path(d, PathSpec::segment(0.0, t), {});
    CHECK(std::abs(Ft.det() - 1.0) < 1e-9);
  }
}

TEST_CASE("homotopic paths give the same lift") {
  const BryantData d = make(zpow(2), poly({1.0, 0.5}));
  const SL2Matrix direct = integrate_path(d, PathSpec::segment(0.0, Complex(1, 1)), {});
  const SL2Matrix detour = integrate_path(d, {{0.0, Complex(0, 1.5), Complex(-0.5, 1.0), Complex(1, 1)}, false}, {});
  CHECK(entry_distance(direct, detour) < 1e-8);
  CHECK(std::abs(direct.det() - 1.0) < 1e-9);
}

TEST_CASE("grid lift of the horosphere is exact") {
  const Chart chart = Chart::rect("core", -1, 1, -1, 1, 33, 33);
  const SL2Field field = lift_on_grid(make(zero, one), chart, 0.0);
  double worst = 0.0;
  for (int j = 0; j < chart.nv; ++j)
    for (int i = 0; i < chart.nu; ++i) worst = std::max(worst, entry_distance(field.at(i, j), {1.0, 0.0, chart.z_at(i, j), 1.0}));
  CHECK(worst < 1e-9);
  CHECK(field.max_det_drift < 1e-9);
  CHECK(secondary_gauss_check(field, make(zero, one)) == 0.0);
}

TEST_CASE("grid lift refuses charts containing punctures or poles") {
  const BryantData d = make(zpow(2), zpow(-3), {0.0, infinity()});
  CHECK_THROWS_AS(lift_on_grid(d, Chart::rect("bad", -1, 1, -1, 1, 9, 9), 0.5), DomainError);
  CHECK_NOTHROW(lift_on_grid(d, Chart::band("neck", 0.0, 2.0, 0.5, 17, 16), 1.0));
}

TEST_CASE("hyperbolic gauss map from the lift") {
  for (Complex z : {Complex(0.5, 1), Complex(-3, 0)}) CHECK(std::abs(hyperbolic_gauss({1.0, 0.0, z, 1.0}, 0.0)) == 0.0);
  CHECK(std::abs(hyperbolic_gauss(SL2Matrix::identity(), Complex(2, -1)) - Complex(2, -1)) == 0.0);
  CHECK(is_infinite(hyperbolic_gauss({1.0, 0.0, 1.0, 1.0}, -1.0)));
  CHECK(std::abs(hyperbolic_gauss({2.0, 1.0, 1.0, 1.0}, infinity()) - 2.0) < 1e-15);
}

TEST_CASE("secondary gauss map recovered from finite differences") {
  {
    const Chart chart = Chart::rect("c", -1, 1, -1, 1, 256, 256);
    const BryantData d = make(PowerRational::identity(), one);
    CHECK(secondary_gauss_check(lift_on_grid(d, chart, 0.0), d) <= 1e-5);
  }
  {
    const Chart chart = Chart::rect("c", -1, 1, -1, 1, 129, 129);
    const BryantData d = make(zpow(2), one);
    CHECK(secondary_gauss_check(lift_on_grid(d, chart, 0.0), d) <= 1e-4);
  }
}

TEST_CASE("changing the initial condition moves G by a fixed Mobius map") {
  const BryantData d = make(PowerRational::identity(), one);
  const SL2Matrix C{Complex(1, 0.5), 0.3, Complex(0.2, -0.1), 0.0};
  const SL2Matrix Cn = C.normalized();
  const TransportedGauss G0(d, 0.0), G1(d, 0.0, Cn);
  const Mobius M{Cn.a, Cn.b, Cn.c, Cn.d};
  for (Complex z : {Complex(0.3, 0.2), Complex(-0.7, 0.5), Complex(1.2, -0.9)}) {
    const Complex expected = M(G0(z)), got = G1(z);
    CHECK(std::abs(expected - got) <= 1e-9 * (1.0 + std::abs(got)));
  }
}

TEST_CASE("monodromy around a loop enclosing no puncture is trivial") {
  const BryantData d = make(zpow(2), zpow(-3, -0.375), {0.0, infinity()});
  const MonodromyClass m = monodromy(d, PathSpec::circle_loop(1.0, 0.25));
  CHECK(m.kind == MonodromyKind::Trivial);
  CHECK(entry_distance(m.matrix, SL2Matrix::identity()) < 1e-8);
}

TEST_CASE("logarithmic pole gives parabolic monodromy") {
  const BryantData d = make(zero, zpow(-1), {0.0, infinity()});
  const MonodromyClass m = monodromy(d, PathSpec::circle_loop(0.0, 1.0, 512));
  CHECK(entry_distance(m.matrix, {1.0, 0.0, Complex(0, 2 * kPi), 1.0}) < 1e-6);
  CHECK(m.kind == MonodromyKind::Parabolic);
  CHECK(std::abs(m.trace - 2.0) < 1e-9);

  const BryantData scaled = make(zero, zpow(-1, Complex(0, 1.0 / (2 * kPi))), {0.0, infinity()});
  const MonodromyClass s = monodromy(scaled, PathSpec::circle_loop(0.0, 1.0, 512));
  CHECK(entry_distance(s.matrix, {1.0, 0.0, -1.0, 1.0}) < 1e-6);
  CHECK(s.kind == MonodromyKind::Parabolic);
}

TEST_CASE("classification is invariant under conjugation") {
  std::mt19937_64 rng(23);
  const std::vector<SL2Matrix> samples = {
      {1.0, 0.0, Complex(0, 2 * kPi), 1.0},                            // parabolic
      {std::polar(1.0, 0.9), 0.0, 0.0, std::polar(1.0, -0.9)},          // elliptic
      {std::exp(0.7), 0.0, 0.0, std::exp(-0.7)},                        // hyperbolic
      {-1.0, 0.0, 0.0, -1.0},                                           // trivial
  };
  for (const SL2Matrix& phi : samples) {
    const MonodromyKind k = classify(phi).kind;
    for (int trial = 0; trial < 50; ++trial) {
      SL2Matrix C{testing::random_complex(rng), testing::random_complex(rng), testing::random_complex(rng),
                  testing::random_complex(rng)};
      if (std::abs(C.det()) < 0.3) continue;
      C = C.normalized();
      CHECK(classify(C * phi * C.inverse()).kind == k);
    }
  }
  CHECK(classify({std::polar(1.0, 0.9), 0.0, 0.0, std::polar(1.0, -0.9)}).kind == MonodromyKind::Elliptic);
  CHECK(classify({std::exp(0.7), 0.0, 0.0, std::exp(-0.7)}).kind == MonodromyKind::Hyperbolic);
}

TEST_CASE("integration failures name the segment") {
  const BryantData d = make(zero, zpow(-2), {0.0, infinity()});
  try {
    integrate_path(d, {{Complex(-1, 0.5), Complex(-1, 0), Complex(1, 0)}, false}, {});
    FAIL("expected a numeric failure");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("segment 1") != std::string::npos);
  }
  CHECK_THROWS_AS(integrate_path(d, PathSpec::segment(0.0, 1.0), {}), DomainError);
  CHECK_THROWS_AS(monodromy(d, PathSpec::segment(0.5, 1.0)), DomainError);
}
