#include "wigner/system.hpp"

#include "wigner/csv.hpp"
#include "wigner/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <sstream>

namespace wigner {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_number(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

// Theta at every velocity node for one x, using an already built transition rule.
std::vector<double> residual_at(const ManufacturedSolution& solution, const BandQuadrature& band,
                                double x, double* residue) {
  std::vector<std::complex<double>> values(band.size());
  const std::complex<double> i(0.0, 1.0);
  for (std::size_t k = 0; k < band.size(); ++k)
    values[k] = i * solution.transform_dx(x, band.nodes()[k]);
  return band.inverse_transform(values, band.cutoff_derivatives(), residue);
}

}  // namespace

BoundaryProfile BoundaryProfile::gaussian(double center, double width) {
  if (!(width > 0.0))
    throw Error(ErrorCode::InvalidConfig, "gaussian boundary: width must be positive");
  return BoundaryProfile("gaussian(" + format_number(center) + "," + format_number(width) + ")",
                         [center, width](double v) {
                           const double t = (v - center) / width;
                           return std::exp(-t * t);
                         });
}

BoundaryProfile BoundaryProfile::maxwellian(double temperature) {
  if (!(temperature > 0.0))
    throw Error(ErrorCode::InvalidConfig, "maxwellian boundary: temperature must be positive");
  const double norm = 1.0 / std::sqrt(2.0 * kPi * temperature);
  return BoundaryProfile("maxwellian(" + format_number(temperature) + ")",
                         [temperature, norm](double v) {
                           return norm * std::exp(-v * v / (2.0 * temperature));
                         });
}

BoundaryProfile BoundaryProfile::zero() {
  return BoundaryProfile("zero", [](double) { return 0.0; }, true);
}

double SemiDiscreteSystem::inflow(int k) const {
  const int n = half();
  return k >= n ? inflow_plus[k - n] : inflow_minus[k];
}

Eigen::VectorXd SemiDiscreteSystem::inflow_vector() const {
  Eigen::VectorXd out(size());
  for (int k = 0; k < size(); ++k) out[k] = inflow(k);
  return out;
}

Eigen::VectorXd SemiDiscreteSystem::source_at(double x) const {
  if (!source) return Eigen::VectorXd::Zero(size());
  const double t = std::clamp(x / xgrid.spacing(), 0.0, static_cast<double>(xgrid.steps()));
  const int j = std::min(static_cast<int>(std::floor(t)), xgrid.steps() - 1);
  const double s = t - j;
  if (s == 0.0) return source->col(j);
  return (1.0 - s) * source->col(j) + s * source->col(j + 1);
}

SemiDiscreteSystem build_system(const PotentialSpec& potential, const BoundaryProfile& boundary,
                                const VelocityGrid& vgrid, const SpatialGrid& xgrid,
                                const QuadratureConfig& quad, int threads) {
  if (std::abs(potential.length() - xgrid.length()) > 1e-14 * xgrid.length())
    throw Error(ErrorCode::ShapeMismatch, "potential length does not match the spatial grid");
  const int n = vgrid.half_width();
  std::vector<double> samples =
      boundary.is_zero() ? std::vector<double>(vgrid.size(), 0.0)
                         : bandlimit_boundary([&](double v) { return boundary(v); }, vgrid, quad);
  SemiDiscreteSystem system{vgrid,
                            xgrid,
                            vgrid.points(),
                            coefficient_table(potential, xgrid, vgrid, quad, threads),
                            std::vector<double>(samples.begin() + n, samples.end()),
                            std::vector<double>(samples.begin(), samples.begin() + n),
                            std::nullopt,
                            potential.sup_norm()};
  return system;
}

SemiDiscreteSystem build_manufactured_system(const PotentialSpec& potential,
                                             const ManufacturedSolution& solution,
                                             const VelocityGrid& vgrid, const SpatialGrid& xgrid,
                                             const QuadratureConfig& quad, int threads) {
  if (std::abs(solution.length() - xgrid.length()) > 1e-14 * xgrid.length())
    throw Error(ErrorCode::ShapeMismatch, "manufactured solution length does not match the grid");
  SemiDiscreteSystem system =
      build_system(potential, BoundaryProfile::zero(), vgrid, xgrid, quad, threads);
  system.source = residual_source(solution, vgrid, xgrid, quad);
  return system;
}

Eigen::VectorXd apply_operator(const SemiDiscreteSystem& system, int j, const Eigen::VectorXd& u) {
  if (u.size() != system.size())
    throw Error(ErrorCode::ShapeMismatch, "apply_operator: vector has " + std::to_string(u.size()) +
                                              " entries, expected " + std::to_string(system.size()));
  if (j < 0 || j >= system.xgrid.size())
    throw Error(ErrorCode::ShapeMismatch, "apply_operator: node index out of range");
  return assemble_A(system.coefficients, j).apply(u);
}

Eigen::MatrixXd residual_source(const ManufacturedSolution& solution, const VelocityGrid& vgrid,
                                const SpatialGrid& xgrid, const QuadratureConfig& quad) {
  const std::vector<double> cuts = solution.transform_breakpoints();
  Eigen::MatrixXd out(vgrid.size(), xgrid.size());
  // Nothing to integrate when the transform vanishes on the transition band.
  if (solution.transform_support() <= 0.5 * vgrid.band_radius()) {
    out.setZero();
    return out;
  }
  const BandQuadrature band = BandQuadrature::transition(vgrid, quad.order, cuts);
  const BandQuadrature check = BandQuadrature::transition(vgrid, quad.check_order, cuts);
  for (int j = 0; j < xgrid.size(); ++j) {
    const double x = xgrid.node(j);
    double residue = 0.0, residue_check = 0.0;
    const std::vector<double> theta = residual_at(solution, band, x, &residue);
    const std::vector<double> theta_check = residual_at(solution, check, x, &residue_check);
    double scale = 1.0, gap = 0.0;
    for (int k = 0; k < vgrid.size(); ++k) {
      scale = std::max(scale, std::abs(theta[k]));
      gap = std::max(gap, std::abs(theta[k] - theta_check[k]));
      out(k, j) = theta[k];
    }
    if (gap > quad.self_check_tolerance * scale)
      throw Error(ErrorCode::QuadratureDivergence,
                  "residual source: Gauss orders disagree by " + std::to_string(gap) +
                      " at x = " + std::to_string(x));
    if (std::max(residue, residue_check) > 1e-10 * scale)
      throw Error(ErrorCode::QuadratureDivergence,
                  "residual source: imaginary residue " + std::to_string(residue));
  }
  return out;
}

Eigen::MatrixXd manufactured_samples(const ManufacturedSolution& solution, const VelocityGrid& vgrid,
                                     const SpatialGrid& xgrid, const QuadratureConfig& quad) {
  const std::vector<double> cuts = solution.transform_breakpoints();
  const BandQuadrature band(vgrid, quad.order, cuts);
  Eigen::MatrixXd out(vgrid.size(), xgrid.size());
  std::vector<std::complex<double>> values(band.size());
  for (int j = 0; j < xgrid.size(); ++j) {
    const double x = xgrid.node(j);
    for (std::size_t k = 0; k < band.size(); ++k) values[k] = solution.transform(x, band.nodes()[k]);
    double residue = 0.0;
    const std::vector<double> t = band.inverse_transform(values, band.cutoff_values(), &residue);
    if (residue > 1e-10)
      throw Error(ErrorCode::QuadratureDivergence,
                  "manufactured samples: imaginary residue " + std::to_string(residue));
    for (int k = 0; k < vgrid.size(); ++k) out(k, j) = t[k];
  }
  return out;
}

double tail_mass(std::span<const double> samples) {
  const int size = static_cast<int>(samples.size());
  if (size == 0) return 0.0;
  const int edge = std::max(1, static_cast<int>(std::ceil(0.05 * size)));
  double total = 0.0, tail = 0.0;
  for (int k = 0; k < size; ++k) {
    const double m = samples[k] * samples[k];
    total += m;
    if (k < edge || k >= size - edge) tail += m;
  }
  return total > 0.0 ? tail / total : 0.0;
}

double tail_mass(const Eigen::VectorXd& samples) {
  return tail_mass(std::span<const double>(samples.data(), static_cast<std::size_t>(samples.size())));
}

void write_system_csv(std::ostream& out, const SemiDiscreteSystem& system) {
  const Eigen::VectorXd inflow = system.inflow_vector();
  csv::comment(out, "tail_mass = " + csv::number(tail_mass(inflow)));
  out << "k,n,v_n,t_b,x_inflow\n";
  for (int k = 0; k < system.size(); ++k) {
    const int n = system.vgrid.index(k);
    out << k << ',' << n << ',' << csv::number(system.transport[k]) << ','
        << csv::number(inflow[k]) << ',' << csv::number(n >= 0 ? 0.0 : system.xgrid.length())
        << '\n';
  }
}

void SolutionField::write_csv(std::ostream& out) const {
  out << "j,x_j,n,v_n,f_n\n";
  for (int j = 0; j < xgrid.size(); ++j) {
    const std::string x = csv::number(xgrid.node(j));
    for (int k = 0; k < vgrid.size(); ++k) {
      const int n = vgrid.index(k);
      out << j << ',' << x << ',' << n << ',' << csv::number(vgrid.point(n)) << ','
          << csv::number(values(k, j)) << '\n';
    }
  }
}

}  // namespace wigner
