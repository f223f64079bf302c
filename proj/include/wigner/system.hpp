#pragma once

#include "wigner/manufactured.hpp"
#include "wigner/potential.hpp"
#include "wigner/quadrature.hpp"
#include "wigner/sampling.hpp"
#include "wigner/spatial_grid.hpp"

#include <Eigen/Dense>

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wigner {

/// Inflow profile f_b(v).
class BoundaryProfile {
 public:
  BoundaryProfile(std::string description, std::function<double(double)> f, bool zero = false)
      : description_(std::move(description)), f_(std::move(f)), zero_(zero) {}

  /// exp(-(v - center)^2 / width^2)
  static BoundaryProfile gaussian(double center, double width);
  /// (2 pi T)^{-1/2} exp(-v^2 / (2 T))
  static BoundaryProfile maxwellian(double temperature);
  static BoundaryProfile zero();

  double operator()(double v) const { return f_(v); }
  bool is_zero() const { return zero_; }
  const std::string& describe() const { return description_; }

 private:
  std::string description_;
  std::function<double(double)> f_;
  bool zero_;
};

/// T f' - A(x) f = Theta on [0, l] with f_n(0) given for n >= 0 and f_n(l) for n < 0.
/// Vectors indexed by storage index k = n + N.
struct SemiDiscreteSystem {
  VelocityGrid vgrid;
  SpatialGrid xgrid;
  std::vector<double> transport;       // v_n
  WignerCoefficientTable coefficients;
  std::vector<double> inflow_plus;     // n = 0..N-1, imposed at x = 0
  std::vector<double> inflow_minus;    // n = -N..-1, imposed at x = l
  std::optional<Eigen::MatrixXd> source;  // 2N x (M_x + 1)
  double potential_norm = 0.0;         // ||V||_inf

  int size() const { return vgrid.size(); }
  int half() const { return vgrid.half_width(); }

  /// Inflow value on velocity line k (from whichever end it is imposed).
  double inflow(int k) const;
  /// Full 2N-vector of inflow values.
  Eigen::VectorXd inflow_vector() const;

  /// Theta at x by linear interpolation between nodes; zero without a source.
  Eigen::VectorXd source_at(double x) const;
  bool has_source() const { return source.has_value(); }
};

SemiDiscreteSystem build_system(const PotentialSpec& potential, const BoundaryProfile& boundary,
                                const VelocityGrid& vgrid, const SpatialGrid& xgrid,
                                const QuadratureConfig& quad, int threads = 1);

/// Residual system for a manufactured solution: zero inflow and Theta from residual_source.
SemiDiscreteSystem build_manufactured_system(const PotentialSpec& potential,
                                             const ManufacturedSolution& solution,
                                             const VelocityGrid& vgrid, const SpatialGrid& xgrid,
                                             const QuadratureConfig& quad, int threads = 1);

/// A(x_j) u through the fast Toeplitz product. Throws Error(ShapeMismatch).
Eigen::VectorXd apply_operator(const SemiDiscreteSystem& system, int j, const Eigen::VectorXd& u);

/// Theta_n(x_j) = (1/2pi) int i d_x f^(x_j, y) zeta_h'(y) e^{i v_n y} dy, as a 2N x (M_x + 1)
/// array. Throws Error(QuadratureDivergence) when two Gauss orders disagree.
Eigen::MatrixXd residual_source(const ManufacturedSolution& solution, const VelocityGrid& vgrid,
                                const SpatialGrid& xgrid, const QuadratureConfig& quad);

/// Samples t^h(x_j, v_n) of F^{-1}[f^ zeta_h] for a manufactured solution.
Eigen::MatrixXd manufactured_samples(const ManufacturedSolution& solution, const VelocityGrid& vgrid,
                                     const SpatialGrid& xgrid, const QuadratureConfig& quad);

/// Fraction of l2 mass carried by the outermost 5% of indices on each side (at least one).
double tail_mass(std::span<const double> samples);
double tail_mass(const Eigen::VectorXd& samples);

/// Velocity grid, inflow values and tail mass as CSV.
void write_system_csv(std::ostream& out, const SemiDiscreteSystem& system);

/// Samples f_n(x_j), rows by storage index, columns by spatial node.
struct SolutionField {
  VelocityGrid vgrid;
  SpatialGrid xgrid;
  Eigen::MatrixXd values;

  double at(int n, int j) const { return values(vgrid.storage(n), j); }

  /// Columns j, x_j, n, v_n, f_n.
  void write_csv(std::ostream& out) const;
};

}  // namespace wigner
