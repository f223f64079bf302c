#include "wigner/analysis.hpp"

#include "wigner/csv.hpp"
#include "wigner/error.hpp"
#include "wigner/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <numbers>
#include <ostream>
#include <thread>

namespace wigner {

namespace {

constexpr double kPi = std::numbers::pi;

// Rule over `lo <= |y| <= hi` on both sides of the origin.
PanelRule symmetric_band(double lo, double hi, double panel_width, int order,
                         std::span<const double> breakpoints) {
  PanelRule out;
  if (!(hi > lo)) return out;
  std::vector<double> cuts;
  for (double b : breakpoints) cuts.push_back(std::abs(b));
  const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / panel_width)));
  const PanelRule half = composite_rule(lo, hi, panels, order, cuts);
  for (std::size_t k = 0; k < half.size(); ++k) {
    out.nodes.push_back(half.nodes[k]);
    out.weights.push_back(half.weights[k]);
    out.nodes.push_back(-half.nodes[k]);
    out.weights.push_back(half.weights[k]);
  }
  return out;
}

void append(PanelRule& to, const PanelRule& from) {
  to.nodes.insert(to.nodes.end(), from.nodes.begin(), from.nodes.end());
  to.weights.insert(to.weights.end(), from.weights.begin(), from.weights.end());
}

// Gauss rule in x for integrands that are smooth in x.
PanelRule x_rule(double length, int order) { return composite_rule(0.0, length, 8, order); }

double tail_norm(const ManufacturedSolution& solution, const VelocityGrid& grid, int order) {
  const double r = grid.band_radius();
  const double extent = solution.transform_extent(0.0);
  const std::vector<double> cuts = solution.transform_breakpoints();
  PanelRule y = symmetric_band(0.5 * r, 0.75 * r, 0.25 * r / 8.0, order, cuts);
  if (extent > 0.75 * r) append(y, symmetric_band(0.75 * r, extent, 0.5, order, cuts));
  const PanelRule x = x_rule(solution.length(), order);
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double sum = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
      const double gap = 1.0 - cutoff(y.nodes[k], grid);
      sum += y.weights[k] * std::norm(solution.transform(x.nodes[i], y.nodes[k])) * gap * gap;
    }
    total += x.weights[i] * std::sqrt(sum);
  }
  return total / std::sqrt(2.0 * kPi);
}

double exp_norm(const ManufacturedSolution& solution, double alpha, bool derivative, int order) {
  const double extent = solution.transform_extent(alpha);
  const PanelRule y = symmetric_band(0.0, extent, 0.25, order, solution.transform_breakpoints());
  const PanelRule x = x_rule(solution.length(), order);
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double sum = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
      const double yk = y.nodes[k];
      const std::complex<double> g = derivative ? solution.transform_dx(x.nodes[i], yk)
                                                : solution.transform(x.nodes[i], yk);
      const double w = std::exp(alpha * std::abs(yk));
      sum += y.weights[k] * std::norm(g) * w * w;
    }
    total += x.weights[i] * std::sqrt(sum);
  }
  return total;
}

BoundCheck check(std::string name, double measured, double limit) {
  return BoundCheck{std::move(name), measured, limit, std::isfinite(measured) && measured <= limit};
}

std::vector<ConvergenceRow> run_rows(const PotentialSpec& potential,
                                     const ManufacturedSolution& solution,
                                     std::span<const double> h_list, const StudyConfig& config,
                                     double alpha_norm, double alpha_dnorm) {
  const double l = potential.length();
  const double v_norm = potential.sup_norm();
  std::vector<ConvergenceRow> rows(h_list.size());
  const double v_cut = std::max(config.v_cut, solution.velocity_extent());

  auto run = [&](std::size_t i, int threads) {
    const double h = h_list[i];
    const int n = config.half_width ? *config.half_width
                                    : study_half_width(solution, h, v_cut, config.tail_target,
                                                       config.max_half_width, config.quad);
    const int m = config.steps.value_or(auto_steps(l, v_norm, h, config.min_steps));
    const VelocityGrid vgrid(h, n);
    const SpatialGrid xgrid(l, m);
    const SemiDiscreteSystem system =
        build_manufactured_system(potential, solution, vgrid, xgrid, config.quad, threads);
    const BvpResult result = solve_bvp(system, config.solver);
    const Eigen::MatrixXd th = manufactured_samples(solution, vgrid, xgrid, config.quad);
    const Eigen::MatrixXd fh = th - result.field.values;

    ConvergenceRow& row = rows[i];
    row.h = h;
    row.N = n;
    row.M_x = m;
    row.errors = error_norms(solution, fh, vgrid, xgrid, config.quad);
    row.th_f_spectral = truncation_error_th(solution, vgrid, config.quad);
    row.theta_norm = mixed_norm(*system.source, vgrid, xgrid);
    const double decay = std::exp(-config.alpha / (4.0 * h));
    row.truncation_bound = alpha_norm / std::sqrt(2.0 * kPi) * decay;
    row.residual_bound = cutoff_derivative_constant() / std::sqrt(2.0 * kPi) * alpha_dnorm * h * decay;
    const double c = std::max(1.0 / std::sqrt(2.0 * kPi),
                              3.0 * cutoff_derivative_constant() / (std::sqrt(2.0) * std::pow(kPi, 1.5)));
    row.error_bound =
        c * (alpha_norm + alpha_dnorm) * std::exp(-BoundConstants::beta(config.alpha, v_norm, l) / h);
    row.tail_mass = tail_mass(Eigen::VectorXd(th.col(m / 2)));
    row.diagnostics = result.diagnostics;
    row.bounds = verify_bounds(system, result);
    row.bounds.checks.push_back(check("truncation_bound", row.th_f_spectral, row.truncation_bound));
    row.bounds.checks.push_back(check("residual_bound", row.theta_norm, row.residual_bound));
    if (config.alpha > 24.0 * l * v_norm / kPi)
      row.bounds.checks.push_back(check("error_bound", row.errors.fh_f, row.error_bound));
    row.bounds.checks.push_back(
        check("triangle", row.errors.fh_f, row.errors.fh_th + row.errors.th_f + 1e-12));
  };

  if (config.threads <= 1 || rows.size() <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) run(i, 1);
    return rows;
  }
  std::vector<std::exception_ptr> failures(rows.size());
  std::vector<std::thread> workers;
  const std::size_t width = std::min<std::size_t>(config.threads, rows.size());
  for (std::size_t t = 0; t < width; ++t) {
    workers.emplace_back([&, t] {
      for (std::size_t i = t; i < rows.size(); i += width) {
        try {
          run(i, 1);
        } catch (...) {
          failures[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  return rows;
}

}  // namespace

double l2_velocity_norm(std::span<const double> samples, const VelocityGrid& grid) {
  double sum = 0.0;
  for (double s : samples) sum += s * s;
  return std::sqrt(grid.spacing() * sum);
}

double l2_velocity_norm(const Eigen::VectorXd& samples, const VelocityGrid& grid) {
  return std::sqrt(grid.spacing()) * samples.norm();
}

double weighted_norm_Htilde(std::span<const double> samples, const VelocityGrid& grid) {
  double sum = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k)
    sum += std::abs(grid.point(grid.index(static_cast<int>(k)))) * samples[k] * samples[k];
  return std::sqrt(sum);
}

double weighted_norm_Htilde(const Eigen::VectorXd& samples, const VelocityGrid& grid) {
  return weighted_norm_Htilde(
      std::span<const double>(samples.data(), static_cast<std::size_t>(samples.size())), grid);
}

double mixed_norm(const Eigen::MatrixXd& samples, const VelocityGrid& vgrid,
                  const SpatialGrid& xgrid) {
  std::vector<double> norms(samples.cols());
  for (int j = 0; j < samples.cols(); ++j)
    norms[j] = l2_velocity_norm(Eigen::VectorXd(samples.col(j)), vgrid);
  return trapezoid(norms, xgrid.spacing());
}

double truncation_error_th(const ManufacturedSolution& solution, const VelocityGrid& grid,
                           const QuadratureConfig& quad) {
  if (solution.transform_support() <= 0.5 * grid.band_radius()) return 0.0;
  const double a = tail_norm(solution, grid, quad.order);
  const double b = tail_norm(solution, grid, quad.check_order);
  if (std::abs(a - b) > quad.self_check_tolerance * std::max(1.0, a))
    throw Error(ErrorCode::QuadratureDivergence,
                "truncation error: Gauss orders disagree by " + std::to_string(std::abs(a - b)));
  return a;
}

double exponential_norm(const ManufacturedSolution& solution, double alpha, bool derivative,
                        const QuadratureConfig& quad) {
  return exp_norm(solution, alpha, derivative, quad.order);
}

ErrorNorms error_norms(const ManufacturedSolution& solution, const Eigen::MatrixXd& fh_samples,
                       const VelocityGrid& vgrid, const SpatialGrid& xgrid,
                       const QuadratureConfig& quad) {
  const int size = vgrid.size();
  if (fh_samples.rows() != size || fh_samples.cols() != xgrid.size())
    throw Error(ErrorCode::ShapeMismatch, "error_norms: sample array does not match the grids");
  const double r = vgrid.band_radius();
  std::vector<double> cuts = solution.transform_breakpoints();
  for (double c : {0.5 * r, 0.75 * r}) cuts.push_back(c);
  PanelRule y = symmetric_band(0.0, r, r / std::max(8, vgrid.half_width()), quad.order, cuts);
  const double extent = solution.transform_extent(0.0);
  if (extent > r) append(y, symmetric_band(r, extent, 0.5, quad.order, cuts));

  const std::size_t ny = y.size();
  std::vector<double> zeta(ny);
  std::vector<double> cos_table(ny * size), sin_table(ny * size);
  for (std::size_t q = 0; q < ny; ++q) {
    zeta[q] = cutoff(y.nodes[q], vgrid);
    for (int k = 0; k < size; ++k) {
      const double phase = vgrid.point(vgrid.index(k)) * y.nodes[q];
      cos_table[q * size + k] = std::cos(phase);
      sin_table[q * size + k] = std::sin(phase);
    }
  }
  const double weight = kPi / r;
  std::vector<double> a(xgrid.size()), b(xgrid.size()), c(xgrid.size());
  for (int j = 0; j < xgrid.size(); ++j) {
    const double x = xgrid.node(j);
    double s_fh_th = 0.0, s_th_f = 0.0, s_fh_f = 0.0;
    for (std::size_t q = 0; q < ny; ++q) {
      std::complex<double> fh = 0.0;
      if (std::abs(y.nodes[q]) < r) {
        double re = 0.0, im = 0.0;
        for (int k = 0; k < size; ++k) {
          re += fh_samples(k, j) * cos_table[q * size + k];
          im -= fh_samples(k, j) * sin_table[q * size + k];
        }
        fh = weight * std::complex<double>(re, im);
      }
      const std::complex<double> f = solution.transform(x, y.nodes[q]);
      const std::complex<double> th = f * zeta[q];
      s_fh_th += y.weights[q] * std::norm(fh - th);
      s_th_f += y.weights[q] * std::norm(th - f);
      s_fh_f += y.weights[q] * std::norm(fh - f);
    }
    a[j] = std::sqrt(s_fh_th / (2.0 * kPi));
    b[j] = std::sqrt(s_th_f / (2.0 * kPi));
    c[j] = std::sqrt(s_fh_f / (2.0 * kPi));
  }
  const double dx = xgrid.spacing();
  return ErrorNorms{trapezoid(a, dx), trapezoid(b, dx), trapezoid(c, dx)};
}

double BoundConstants::B_bound(double v_norm, double h) { return 2.0 * v_norm / (kPi * h); }

double BoundConstants::stability(double v_norm, double h, double l) {
  return 3.0 * std::exp(6.0 * l * v_norm / (kPi * h));
}

double BoundConstants::outflow(double v_norm, double h, double l) {
  return std::exp(2.0 * l * v_norm / (kPi * h)) + std::exp(4.0 * l * v_norm / (kPi * h));
}

double BoundConstants::weighted(double v_norm, double h, double l) {
  return 3.0 / std::sqrt(kPi * h) * std::exp(6.0 * l * v_norm / (kPi * h));
}

double BoundConstants::beta(double alpha, double v_norm, double l) {
  return alpha / 4.0 - 6.0 * l * v_norm / kPi;
}

bool BoundReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

const BoundCheck* BoundReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void BoundReport::write_csv(std::ostream& out) const {
  out << "name,measured,limit,margin,pass\n";
  for (const auto& c : checks)
    out << c.name << ',' << csv::number(c.measured) << ',' << csv::number(c.limit) << ','
        << csv::number(c.margin()) << ',' << (c.pass ? 1 : 0) << '\n';
}

BoundReport verify_bounds(const SemiDiscreteSystem& system, const BvpResult& result) {
  const SolverDiagnostics& d = result.diagnostics;
  const double v = system.potential_norm;
  const double h = system.vgrid.h();
  const double l = system.xgrid.length();
  BoundReport report;

  double skew = 0.0;
  const WignerCoefficientTable& table = system.coefficients;
  const int reach = table.reach();
  const double factor = kPi / system.vgrid.band_radius();
  for (int j = 0; j < system.xgrid.size(); ++j)
    for (int n = 0; n <= reach; ++n)
      skew = std::max(skew, factor * std::abs(table.at(n, j) + table.at(-n, j)));
  report.checks.push_back(check("skew_symmetry_A", skew, 1e-13));
  report.checks.push_back(check("A_norm", d.A_norm, BoundConstants::A_bound(v) + 1e-8));
  report.checks.push_back(check("B_norm", d.B_norm, BoundConstants::B_bound(v, h) + 1e-6));
  report.checks.push_back(check("I_minus_K_deficit", 1.0 - d.min_eig_I_minus_K, 1e-6));
  report.checks.push_back(check("inverse_norm", d.inverse_norm, 1.0 + 1e-6));
  report.checks.push_back(check("K_symmetry", d.K_symmetry, 1e-8));
  const double slack = 1e-12;
  report.checks.push_back(
      check("stability_estimate", d.z_max, BoundConstants::stability(v, h, l) * d.r_integral + slack));
  report.checks.push_back(check("weighted_estimate", d.e_Htilde_max,
                                BoundConstants::weighted(v, h, l) * d.theta_integral + slack));
  report.checks.push_back(check("outflow_estimate", d.h_plus_norm,
                                BoundConstants::outflow(v, h, l) * d.r_integral + slack));
  return report;
}

int auto_half_width(double h, double v_cut) {
  return std::max(8, static_cast<int>(std::ceil(v_cut / (2.0 * kPi * h) - 1e-9)));
}

int study_half_width(const ManufacturedSolution& solution, double h, double v_cut, double target,
                     int max_half_width, const QuadratureConfig& quad) {
  int n = auto_half_width(h, v_cut);
  const SpatialGrid probe(solution.length(), 4);
  while (n < max_half_width) {
    const Eigen::MatrixXd t = manufactured_samples(solution, VelocityGrid(h, n), probe, quad);
    if (tail_mass(Eigen::VectorXd(t.col(2))) < target) return n;
    n = std::min(max_half_width, static_cast<int>(std::ceil(1.5 * n)));
  }
  return n;
}

int auto_steps(double length, double v_norm, double h, int minimum) {
  return std::max(minimum, static_cast<int>(std::ceil(40.0 * length * v_norm / (kPi * h) - 1e-9)));
}

LineFit fit_exponential_rate(std::span<const double> h, std::span<const double> errors) {
  const std::size_t n = h.size();
  if (n != errors.size() || n < 2)
    throw Error(ErrorCode::ShapeMismatch, "rate fit needs at least two matching points");
  double sx = 0.0, sy = 0.0;
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = 1.0 / h[i];
    y[i] = std::log(errors[i]);
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return fit;
}

bool ConvergenceReport::monotone() const {
  std::vector<const ConvergenceRow*> sorted;
  for (const auto& r : rows) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->h > b->h; });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (!(sorted[i]->errors.fh_f < sorted[i - 1]->errors.fh_f)) return false;
  return true;
}

bool ConvergenceReport::triangle_consistent(double slack) const {
  return std::all_of(rows.begin(), rows.end(), [slack](const ConvergenceRow& r) {
    return r.errors.fh_f <= r.errors.fh_th + r.errors.th_f + slack;
  });
}

void ConvergenceReport::write_csv(std::ostream& out) const {
  out << "h,N,M_x,fh_th,th_f,fh_f,th_f_spectral,theta_norm,truncation_bound,residual_bound,"
         "error_bound,tail_mass,z_max,stability_bound,e_Htilde_max,weighted_bound,h_plus_norm,"
         "outflow_bound,bounds_pass\n";
  for (const auto& r : rows) {
    const SolverDiagnostics& d = r.diagnostics;
    out << csv::number(r.h) << ',' << r.N << ',' << r.M_x;
    for (double x :
         {r.errors.fh_th, r.errors.th_f, r.errors.fh_f, r.th_f_spectral, r.theta_norm,
          r.truncation_bound, r.residual_bound, r.error_bound, r.tail_mass, d.z_max,
          BoundConstants::stability(v_norm, r.h, length) * d.r_integral, d.e_Htilde_max,
          BoundConstants::weighted(v_norm, r.h, length) * d.theta_integral, d.h_plus_norm,
          BoundConstants::outflow(v_norm, r.h, length) * d.r_integral})
      out << ',' << csv::number(x);
    out << ',' << (r.bounds.all_pass() ? 1 : 0) << '\n';
  }
}

void ConvergenceReport::write_fit_csv(std::ostream& out) const {
  out << "alpha,beta_predicted,beta_fit,r_squared,monotone,rate_check\n";
  for (const auto& f : fits)
    out << csv::number(f.alpha) << ',' << csv::number(f.beta_predicted) << ','
        << csv::number(f.beta_fit) << ',' << csv::number(f.r_squared) << ','
        << (f.monotone ? 1 : 0) << ',' << f.rate_check << '\n';
}

ConvergenceReport convergence_study(const PotentialSpec& potential,
                                    const ManufacturedSolution& solution,
                                    std::span<const double> h_list, const StudyConfig& config) {
  if (h_list.empty()) throw Error(ErrorCode::InvalidConfig, "convergence study needs at least one h");
  if (std::abs(potential.length() - solution.length()) > 1e-14 * potential.length())
    throw Error(ErrorCode::InvalidConfig, "potential and manufactured solution lengths differ");
  if (config.alpha > solution.alpha_max())
    throw Error(ErrorCode::InvalidConfig, "alpha exceeds the decay certificate of the solution");

  ConvergenceReport report;
  report.potential = potential.describe();
  report.solution = solution.name();
  report.length = potential.length();
  report.v_norm = potential.sup_norm();
  const double alpha_norm = exponential_norm(solution, config.alpha, false, config.quad);
  const double alpha_dnorm = exponential_norm(solution, config.alpha, true, config.quad);
  report.rows = run_rows(potential, solution, h_list, config, alpha_norm, alpha_dnorm);

  std::vector<double> alphas{config.alpha};
  for (double a : config.alpha_scan)
    if (a != config.alpha && a <= solution.alpha_max()) alphas.push_back(a);
  const bool monotone = report.monotone();
  std::optional<LineFit> line;
  if (report.rows.size() >= 2) {
    std::vector<double> hs, errs;
    for (const auto& r : report.rows) {
      hs.push_back(r.h);
      errs.push_back(r.errors.fh_f);
    }
    line = fit_exponential_rate(hs, errs);
  }
  for (double a : alphas) {
    RateFit fit;
    fit.alpha = a;
    fit.beta_predicted = BoundConstants::beta(a, report.v_norm, report.length);
    fit.monotone = monotone;
    if (line) {
      fit.beta_fit = -line->slope;
      fit.r_squared = line->r_squared;
      if (6.0 * report.length * report.v_norm / kPi < a / 4.0)
        fit.rate_check = fit.beta_fit >= 0.5 * fit.beta_predicted ? 1 : 0;
    }
    report.fits.push_back(fit);
  }
  return report;
}

}  // namespace wigner
