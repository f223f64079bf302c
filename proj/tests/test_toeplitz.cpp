#include "support.hpp"
#include "wigner/error.hpp"
#include "wigner/toeplitz.hpp"

#include <doctest.h>

using namespace wigner;

TEST_SUITE("toeplitz") {

TEST_CASE("fast product equals dense matvec") {
  test::Gen gen(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = gen.integer(1, 150);
    const ToeplitzOperator T(gen.vector(2 * n - 1));
    const Eigen::VectorXd u = gen.eigen(n);
    const Eigen::VectorXd fast = T.apply(u);
    const Eigen::VectorXd dense = T.dense() * u;
    CHECK((fast - dense).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + dense.cwiseAbs().maxCoeff()));
    const auto ref = T.apply_dense(std::vector<double>(u.data(), u.data() + n));
    for (int i = 0; i < n; ++i) CHECK(ref[i] == doctest::Approx(dense(i)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("entries follow the index difference") {
  const ToeplitzOperator T({1.0, 2.0, 3.0, 4.0, 5.0});
  CHECK(T.size() == 3);
  CHECK(T.entry(0, 0) == 3.0);
  CHECK(T.entry(2, 0) == 5.0);
  CHECK(T.entry(0, 2) == 1.0);
  CHECK(T.coefficient(-1) == 2.0);
}

TEST_CASE("skew defect of antisymmetric coefficients vanishes") {
  test::Gen gen(32);
  const int n = 20;
  std::vector<double> c(2 * n - 1);
  for (int k = 1; k < n; ++k) {
    c[n - 1 + k] = gen.uniform(-1, 1);
    c[n - 1 - k] = -c[n - 1 + k];
  }
  CHECK(ToeplitzOperator(c).skew_defect() == 0.0);
  c[n - 1] = 0.5;
  CHECK(ToeplitzOperator(c).skew_defect() == doctest::Approx(1.0));
}

TEST_CASE("shape errors") {
  CHECK_THROWS_AS(ToeplitzOperator(std::vector<double>(4)), Error);
  const ToeplitzOperator T(std::vector<double>(5, 1.0));
  CHECK_THROWS_AS(T.apply(Eigen::VectorXd::Ones(4)), Error);
  CHECK_THROWS_AS(T.apply_dense(std::vector<double>(2)), Error);
}

}
