#include "support.hpp"
#include "wigner/error.hpp"
#include "wigner/sampling.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace wigner;
using test::kPi;

TEST_SUITE("sampling") {

TEST_CASE("grid is symmetric and avoids zero") {
  test::Gen gen(21);
  for (int trial = 0; trial < 50; ++trial) {
    const double h = gen.uniform(0.01, 1.0);
    const int N = gen.integer(1, 200);
    const VelocityGrid g(h, N);
    double smallest = INFINITY;
    for (int n = g.min_index(); n <= g.max_index(); ++n) {
      smallest = std::min(smallest, std::abs(g.point(n)));
      CHECK(g.point(-1 - n) == -g.point(n));
    }
    CHECK(smallest == kPi * h);
    CHECK(g.band_radius() * g.spacing() == doctest::Approx(kPi));
  }
}

TEST_CASE("invalid grids are rejected") {
  CHECK_THROWS_AS(VelocityGrid(0.0, 4), Error);
  CHECK_THROWS_AS(VelocityGrid(-0.1, 4), Error);
  CHECK_THROWS_AS(VelocityGrid(0.1, 0), Error);
}

TEST_CASE("whittaker series interpolates its samples") {
  test::Gen gen(22);
  const VelocityGrid g(0.125, 12);
  const auto c = gen.vector(g.size());
  for (int n = g.min_index(); n <= g.max_index(); ++n)
    CHECK(whittaker_eval(c, g, g.point(n)) == doctest::Approx(c[g.storage(n)]).epsilon(1e-13));
  CHECK(sinc(0.0) == 1.0);
  CHECK(std::abs(sinc(kPi)) < 1e-15);
  CHECK_THROWS_AS(whittaker_eval(std::vector<double>(3), g, 0.0), Error);
}

TEST_CASE("cutoff profile") {
  for (double s : {0.0, 0.2, 0.5, -0.5}) CHECK(cutoff_profile(s) == 1.0);
  for (double s : {0.75, 0.9, -3.0}) CHECK(cutoff_profile(s) == 0.0);
  double prev = 1.0;
  for (int i = 0; i <= 200; ++i) {
    const double s = 0.5 + 0.25 * i / 200.0;
    const double z = cutoff_profile(s);
    CHECK(z <= prev + 1e-15);
    prev = z;
  }
  CHECK(cutoff_profile(0.625) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("cutoff derivative matches finite differences") {
  test::Gen gen(23);
  for (int trial = 0; trial < 30; ++trial) {
    const double s = gen.uniform(0.5, 0.75);
    const double d = 1e-6;
    const double fd = (cutoff_profile(s + d) - cutoff_profile(s - d)) / (2 * d);
    CHECK(cutoff_profile_derivative(s) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("derivative constant is the sup of |zeta_h'| / h") {
  for (double h : {0.25, 0.125, 0.0625}) {
    const VelocityGrid g(h, 8);
    double sup = 0.0;
    for (int i = 0; i <= 20000; ++i) {
      const double y = g.band_radius() * (0.5 + 0.25 * i / 20000.0);
      sup = std::max(sup, std::abs(cutoff_derivative(y, g)));
    }
    CHECK(sup / h == doctest::Approx(cutoff_derivative_constant()).epsilon(1e-6));
  }
}

// t^h(v_n) = (1/2pi) int F(y) zeta_h(y) e^{i v_n y} dy by a fine trapezoid, which is
// spectrally accurate here since the integrand is smooth and vanishes with all derivatives.
static double dense_projection(const VelocityGrid& g, double v, double shift) {
  const double R = 0.75 * g.band_radius();
  auto integrand = [&](double y) {
    const std::complex<double> F = std::sqrt(kPi) * std::exp(-y * y / 4.0) *
                                   std::exp(std::complex<double>(0.0, -shift * y));
    return (F * std::exp(std::complex<double>(0.0, v * y))).real() * cutoff(y, g);
  };
  return test::trapezoid_rule(integrand, -R, R, 4000) / (2.0 * kPi);
}

TEST_CASE("band-limited projection matches a dense transform") {
  for (double h : {0.25, 0.125, 0.0625}) {
    const VelocityGrid g(h, 16);
    const auto t = bandlimit_boundary([](double v) { return std::exp(-(v - 1.0) * (v - 1.0)); }, g, {});
    for (int n = g.min_index(); n <= g.max_index(); ++n)
      CHECK(std::abs(t[g.storage(n)] - dense_projection(g, g.point(n), 1.0)) <= 1e-8);
  }
}

TEST_CASE("project_transform agrees with bandlimit_boundary") {
  const VelocityGrid g(0.125, 16);
  const auto a = bandlimit_boundary([](double v) { return std::exp(-v * v); }, g, {});
  const auto b = project_transform([](double y) { return std::complex<double>(std::sqrt(kPi) * std::exp(-y * y / 4)); }, g, {});
  for (int k = 0; k < g.size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-10).scale(1.0));
}

TEST_CASE("boundary profiles failing the transform checks are rejected") {
  const VelocityGrid g(0.125, 8);
  try {
    bandlimit_boundary([](double) { return 1.0; }, g, {});
    FAIL("expected NonIntegrableBoundary");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonIntegrableBoundary);
  }
  CHECK_THROWS_AS(bandlimit_boundary([](double v) { return v > 0 ? NAN : 0.0; }, g, {}), Error);
}

TEST_CASE("discrete convolution matches the Fourier product") {
  // f = band-limited projection of e^{-v^2}; g = e^{-v^2/25}, whose transform is negligible
  // beyond the aliasing limit, so sampled convolution is exact up to roundoff and truncation.
  for (double h : {0.25, 0.125}) {
    const VelocityGrid grid(h, 48);
    const auto f = bandlimit_boundary([](double v) { return std::exp(-v * v); }, grid, {});
    DualSequence g;
    g.first_index = -(grid.size() - 1);
    for (int n = g.first_index; n <= grid.size() - 1; ++n) {
      const double v = grid.dual_point(n);
      g.values.push_back(std::exp(-v * v / 25.0));
    }
    const auto c = convolve_bandlimited(f, g, grid);
    const double R = 0.75 * grid.band_radius();
    for (int n = -6; n < 6; ++n) {
      const double v = grid.point(n);
      auto integrand = [&](double y) {
        const double F = std::sqrt(kPi) * std::exp(-y * y / 4.0) * cutoff(y, grid);
        const double G = 5.0 * std::sqrt(kPi) * std::exp(-25.0 * y * y / 4.0);
        return F * G * std::cos(v * y);
      };
      const double oracle = test::trapezoid_rule(integrand, -R, R, 4000) / (2.0 * kPi);
      CHECK(std::abs(c[grid.storage(n)] - oracle) <= 1e-10);
    }
  }
}

TEST_CASE("convolution sequence must cover all index differences") {
  const VelocityGrid grid(0.25, 4);
  DualSequence g;
  g.first_index = -2;
  g.values.assign(5, 1.0);
  CHECK_THROWS_AS(convolve_bandlimited(std::vector<double>(grid.size(), 1.0), g, grid), Error);
  CHECK_THROWS_AS(convolve_bandlimited(std::vector<double>(3, 1.0), g, grid), Error);
}

}
