#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace wigner::test {

inline constexpr double kPi = 3.14159265358979323846;

/// Seeded generator for property tests; every case draws from its own stream.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(engine_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(engine_); }
  /// h = 1 / k for k drawn from [lo, hi].
  double mesh(int lo, int hi) { return 1.0 / integer(lo, hi); }

  std::vector<double> vector(int n, double a = -1.0, double b = 1.0) {
    std::vector<double> out(n);
    for (auto& x : out) x = uniform(a, b);
    return out;
  }
  Eigen::VectorXd eigen(int n, double a = -1.0, double b = 1.0) {
    Eigen::VectorXd out(n);
    for (int i = 0; i < n; ++i) out(i) = uniform(a, b);
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

/// exp(M) by scaling and squaring of a degree-18 Taylor polynomial.
inline Eigen::MatrixXd expm(const Eigen::MatrixXd& M) {
  const double norm = M.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXd A = M / std::ldexp(1.0, squarings);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(M.rows(), M.cols());
  Eigen::MatrixXd sum = term;
  for (int k = 1; k <= 18; ++k) {
    term = term * A / k;
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// Composite trapezoid of g on [a, b] with n intervals.
template <class F>
double trapezoid_rule(F&& g, double a, double b, int n) {
  const double dx = (b - a) / n;
  double s = 0.5 * (g(a) + g(b));
  for (int i = 1; i < n; ++i) s += g(a + i * dx);
  return s * dx;
}

}  // namespace wigner::test
