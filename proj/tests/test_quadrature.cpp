#include "support.hpp"
#include "wigner/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace wigner;

TEST_SUITE("quadrature") {

TEST_CASE("gauss rule is exact up to degree 2n-1") {
  test::Gen gen(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = gen.integer(1, 30);
    const int degree = gen.integer(0, 2 * n - 1);
    const auto& rule = gauss_legendre(n);
    double q = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) q += rule.weights[i] * std::pow(rule.nodes[i], degree);
    const double exact = degree % 2 ? 0.0 : 2.0 / (degree + 1);
    CHECK(q == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("weights are positive and sum to two") {
  for (int n : {1, 2, 5, 16, 24, 64}) {
    const auto& rule = gauss_legendre(n);
    double s = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      s += w;
    }
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("composite rule splits at breakpoints") {
  test::Gen gen(12);
  for (int trial = 0; trial < 20; ++trial) {
    const double c = gen.uniform(-0.9, 0.9);
    const std::vector<double> breaks{c};
    const auto rule = composite_rule(-1.0, 1.0, gen.integer(1, 5), 8, breaks);
    double q = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) q += rule.weights[i] * std::abs(rule.nodes[i] - c);
    const double exact = 0.5 * ((1 + c) * (1 + c) + (1 - c) * (1 - c));
    CHECK(q == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("breakpoints outside the interval are ignored") {
  const std::vector<double> breaks{-5.0, 3.0};
  const auto a = composite_rule(0.0, 1.0, 2, 6, breaks);
  const auto b = composite_rule(0.0, 1.0, 2, 6);
  CHECK(a.size() == b.size());
}

TEST_CASE("trapezoid is exact for linear data") {
  const std::vector<double> v{1.0, 3.0, 5.0, 7.0};
  CHECK(trapezoid(v, 0.5) == doctest::Approx(6.0));
  CHECK(trapezoid(std::vector<double>{2.0}, 1.0) == 0.0);
}

}
