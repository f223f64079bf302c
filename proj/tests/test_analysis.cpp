#include "support.hpp"
#include "wigner/analysis.hpp"
#include "wigner/error.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace wigner;
using test::kPi;

namespace {

// |fh - f|_{L2_v} by direct quadrature of the Whittaker reconstruction in v.
double direct_velocity_error(const ManufacturedSolution& m, const Eigen::VectorXd& c,
                             const VelocityGrid& g, double x, double W) {
  const std::vector<double> s(c.data(), c.data() + c.size());
  auto integrand = [&](double v) {
    const double d = whittaker_eval(s, g, v) - m.value(x, v);
    return d * d;
  };
  return std::sqrt(test::trapezoid_rule(integrand, -W, W, 40000));
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("velocity norms") {
  const VelocityGrid g(1.0 / 16, 64);
  std::vector<double> s(g.size());
  for (int k = 0; k < g.size(); ++k) s[k] = std::exp(-std::pow(g.point(g.index(k)), 2));
  CHECK(l2_velocity_norm(s, g) == doctest::Approx(std::pow(kPi / 2, 0.25)).epsilon(1e-10));
  double w = 0.0;
  for (int k = 0; k < g.size(); ++k) w += std::abs(g.point(g.index(k))) * s[k] * s[k];
  CHECK(weighted_norm_Htilde(s, g) == doctest::Approx(std::sqrt(w)));
  const SpatialGrid xg(2.0, 8);
  const Eigen::MatrixXd cols = Eigen::Map<Eigen::VectorXd>(s.data(), g.size()).replicate(1, xg.size());
  CHECK(mixed_norm(cols, g, xg) == doctest::Approx(2.0 * l2_velocity_norm(s, g)));
}

TEST_CASE("Fourier-side error norms agree with sample and direct routes") {
  const GaussianProfile m(1.0);
  test::Gen gen(81);
  const VelocityGrid g(0.25, study_half_width(m, 0.25, 8.0, 1e-12, 512, {}));
  const SpatialGrid xg(1.0, 3);
  const Eigen::MatrixXd th = manufactured_samples(m, g, xg, {});
  Eigen::MatrixXd fh = th;
  for (int j = 0; j < xg.size(); ++j)
    for (int k = g.size() / 2 - 6; k < g.size() / 2 + 6; ++k) fh(k, j) += 0.05 * gen.uniform(-1, 1);
  const ErrorNorms e = error_norms(m, fh, g, xg, {});
  CHECK(e.fh_th == doctest::Approx(mixed_norm(fh - th, g, xg)).epsilon(1e-10));
  // truncation_error_th integrates (1 + x(1-x)) exactly; error_norms uses the trapezoid.
  std::vector<double> shape;
  for (int j = 0; j < xg.size(); ++j) shape.push_back(1.0 + xg.node(j) * (1.0 - xg.node(j)));
  const double trap_factor = trapezoid(shape, xg.spacing()) / (7.0 / 6.0);
  CHECK(e.th_f == doctest::Approx(trap_factor * truncation_error_th(m, g, {})).epsilon(1e-8));
  std::vector<double> direct(xg.size());
  for (int j = 0; j < xg.size(); ++j) direct[j] = direct_velocity_error(m, fh.col(j), g, xg.node(j), 400.0);
  CHECK(e.fh_f == doctest::Approx(trapezoid(direct, xg.spacing())).epsilon(1e-4));
  CHECK(e.fh_f <= e.fh_th + e.th_f);
  CHECK_THROWS_AS(error_norms(m, fh.leftCols(2), g, xg, {}), Error);
}

TEST_CASE("exponential norm of the gaussian separates in x and y") {
  const GaussianProfile m(1.0);
  const double a = 2.0;
  auto integrand = [&](double y) { return kPi * std::exp(-y * y / 2.0 + 2.0 * a * std::abs(y)); };
  const double l2 = std::sqrt(test::trapezoid_rule(integrand, -60.0, 60.0, 120000));
  // (1 + x(1-x)) integrates to 7/6 over [0, 1].
  CHECK(exponential_norm(m, a, false, {}) == doctest::Approx(7.0 / 6.0 * l2).epsilon(1e-8));
  // |1 - 2x| integrates to 1/2.
  CHECK(exponential_norm(m, a, true, {}) == doctest::Approx(0.5 * l2).epsilon(1e-8));
}

TEST_CASE("rate fit recovers an exact exponential") {
  const std::vector<double> h{0.25, 0.125, 0.0625};
  std::vector<double> e;
  for (double x : h) e.push_back(3.0 * std::exp(-0.7 / x));
  const LineFit fit = fit_exponential_rate(h, e);
  CHECK(fit.slope == doctest::Approx(-0.7));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)));
  CHECK(fit.r_squared == doctest::Approx(1.0));
  CHECK_THROWS_AS(fit_exponential_rate(std::vector<double>{0.1}, std::vector<double>{1.0}), Error);
}

TEST_CASE("resolution rules") {
  CHECK(auto_half_width(0.25, 8.0) == 8);
  CHECK(auto_half_width(1.0 / 64, 8.0) == static_cast<int>(std::ceil(8.0 * 64 / (2 * kPi))));
  CHECK(auto_steps(1.0, 0.0, 0.125) == 64);
  CHECK(auto_steps(1.0, 1.0, 0.0625, 10) == static_cast<int>(std::ceil(40.0 * 16 / kPi)));
  const GaussianProfile m(1.0);
  const int n = study_half_width(m, 0.25, 8.0, 1e-12, 512, {});
  const VelocityGrid g(0.25, n);
  const Eigen::MatrixXd t = manufactured_samples(m, g, SpatialGrid(1.0, 4), {});
  CHECK(tail_mass(Eigen::VectorXd(t.col(2))) < 1e-12);
  CHECK(study_half_width(m, 0.25, 8.0, 1e-300, 20, {}) == 20);
}

TEST_CASE("bound constants") {
  CHECK(BoundConstants::A_bound(0.3) == doctest::Approx(0.6));
  CHECK(BoundConstants::B_bound(0.3, 0.1) == doctest::Approx(0.6 / (kPi * 0.1)));
  CHECK(BoundConstants::beta(4.0, 0.0, 1.0) == 1.0);
  CHECK(BoundConstants::stability(0.0, 0.1, 1.0) == 3.0);
  CHECK(BoundConstants::outflow(0.0, 0.1, 1.0) == 2.0);
}

TEST_CASE("bound checks flag a corrupted coefficient table") {
  const VelocityGrid g(0.125, 8);
  const SpatialGrid xg(1.0, 64);
  const auto sys = build_system(PotentialSpec::sine(0.1, 3.0, 1.0), BoundaryProfile::gaussian(1, 1), g, xg, {});
  const BvpResult res = solve_bvp(sys);
  const BoundReport good = verify_bounds(sys, res);
  CHECK(good.all_pass());
  CHECK(good.find("skew_symmetry_A") != nullptr);
  CHECK(good.find("missing") == nullptr);

  SemiDiscreteSystem bad = sys;
  std::vector<std::vector<double>> values;
  for (int j = 0; j < xg.size(); ++j) {
    auto row = std::vector<double>(sys.coefficients.node(j).begin(), sys.coefficients.node(j).end());
    row[sys.coefficients.reach() + 1] += 1e-3;
    values.push_back(row);
  }
  bad.coefficients = WignerCoefficientTable::from_values(g, xg, values);
  const BoundReport report = verify_bounds(bad, res);
  CHECK_FALSE(report.all_pass());
  CHECK_FALSE(report.find("skew_symmetry_A")->pass);
  std::ostringstream out;
  report.write_csv(out);
  CHECK(out.str().rfind("name,measured,limit,margin,pass", 0) == 0);
}

TEST_CASE("convergence study input validation") {
  const GaussianProfile m(1.0);
  StudyConfig cfg;
  CHECK_THROWS_AS(convergence_study(PotentialSpec::constant(0, 1.0), m, std::vector<double>{}, cfg), Error);
  CHECK_THROWS_AS(convergence_study(PotentialSpec::constant(0, 2.0), m, std::vector<double>{0.25}, cfg), Error);
}

TEST_CASE("single-h study without potential") {
  const GaussianProfile m(1.0);
  StudyConfig cfg;
  const std::vector<double> h{0.25};
  const ConvergenceReport r = convergence_study(PotentialSpec::constant(0, 1.0), m, h, cfg);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.triangle_consistent());
  CHECK(r.rows[0].errors.th_f <= r.rows[0].truncation_bound);
  CHECK(r.rows[0].theta_norm <= r.rows[0].residual_bound);
  CHECK(r.fits.front().rate_check == -1);
}

}
