#include "support.hpp"
#include "wigner/error.hpp"
#include "wigner/manufactured.hpp"
#include "wigner/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace wigner;

namespace {

std::complex<double> direct_transform(const ManufacturedSolution& m, double x, double y, double W,
                                      int panels) {
  const auto rule = composite_rule(-W, W, panels, 16);
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i)
    s += rule.weights[i] * m.value(x, rule.nodes[i]) *
         std::exp(std::complex<double>(0.0, -rule.nodes[i] * y));
  return s;
}

}  // namespace

TEST_SUITE("manufactured") {

TEST_CASE("cardinal B-spline basics") {
  test::Gen gen(51);
  for (int p : {2, 3, 4, 8, 16}) {
    const auto rule = composite_rule(-0.5 * p, 0.5 * p, p, 16);
    double mass = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) mass += rule.weights[i] * cardinal_bspline(p, rule.nodes[i]);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(cardinal_bspline(p, 0.5 * p + 1e-9) == 0.0);
    for (int trial = 0; trial < 10; ++trial) {
      const double t = gen.uniform(-1.0, 1.0);
      CHECK(cardinal_bspline(p, t) == doctest::Approx(cardinal_bspline(p, -t)).epsilon(1e-12));
      double unity = 0.0;
      for (int k = -p; k <= p; ++k) unity += cardinal_bspline(p, t + k);
      CHECK(unity == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK(cardinal_bspline(2, 0.0) == doctest::Approx(1.0));
  CHECK(cardinal_bspline(2, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("gaussian transform matches direct quadrature") {
  const GaussianProfile g(1.0);
  test::Gen gen(52);
  for (int trial = 0; trial < 10; ++trial) {
    const double x = gen.uniform(0.0, 1.0), y = gen.uniform(-10.0, 10.0);
    const auto d = direct_transform(g, x, y, 12.0, 96);
    CHECK(std::abs(d - g.transform(x, y)) <= 1e-12);
  }
}

TEST_CASE("band-limited transform matches direct quadrature") {
  const BandLimitedProfile b(1.0, 2.0, 16);
  CHECK(b.transform_support() == 2.0);
  test::Gen gen(53);
  for (int trial = 0; trial < 6; ++trial) {
    const double x = gen.uniform(0.0, 1.0), y = gen.uniform(-2.5, 2.5);
    const auto d = direct_transform(b, x, y, 2000.0, 4000);
    CHECK(std::abs(d - b.transform(x, y)) <= 1e-9);
  }
  CHECK(b.transform(0.3, 2.01) == 0.0);
}

TEST_CASE("x derivative of the transform matches finite differences") {
  const GaussianProfile g(1.3);
  const BandLimitedProfile b(1.3, 1.5, 8);
  test::Gen gen(54);
  for (const ManufacturedSolution* m : {static_cast<const ManufacturedSolution*>(&g),
                                        static_cast<const ManufacturedSolution*>(&b)}) {
    for (int trial = 0; trial < 10; ++trial) {
      const double x = gen.uniform(0.1, 1.2), y = gen.uniform(-1.4, 1.4), d = 1e-5;
      const auto fd = (m->transform(x + d, y) - m->transform(x - d, y)) / (2 * d);
      CHECK(std::abs(fd - m->transform_dx(x, y)) <= 1e-8);
    }
  }
}

TEST_CASE("gaussian profile values") {
  const GaussianProfile g(1.0);
  CHECK(g.value(0.0, 0.0) == 1.0);
  CHECK(g.value(1.0, 0.0) == 1.0);
  CHECK(g.value(0.5, 0.0) == doctest::Approx(1.25));
}

TEST_CASE("invalid band-limited parameters") {
  CHECK_THROWS_AS(BandLimitedProfile(1.0, 0.0), Error);
  CHECK_THROWS_AS(BandLimitedProfile(1.0, 1.0, 1), Error);
}

}
