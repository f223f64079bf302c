#pragma once

#include "wigner/manufactured.hpp"
#include "wigner/potential.hpp"
#include "wigner/solver.hpp"
#include "wigner/system.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wigner {

/// sqrt(pi / Rh) |samples|_{l2}: the L2 norm in v of the Whittaker reconstruction.
double l2_velocity_norm(std::span<const double> samples, const VelocityGrid& grid);
double l2_velocity_norm(const Eigen::VectorXd& samples, const VelocityGrid& grid);

/// sqrt(sum_n |v_n| samples_n^2).
double weighted_norm_Htilde(std::span<const double> samples, const VelocityGrid& grid);
double weighted_norm_Htilde(const Eigen::VectorXd& samples, const VelocityGrid& grid);

/// L1 in x of L2 in v, trapezoid over the spatial nodes, for samples stored by column.
double mixed_norm(const Eigen::MatrixXd& samples, const VelocityGrid& vgrid, const SpatialGrid& xgrid);

/// |f - t^h| in L1(0,l; L2_v), from the transform tail |f^ (1 - zeta_h)| over |y| >= Rh/2.
/// Throws Error(QuadratureDivergence) when two Gauss orders disagree.
double truncation_error_th(const ManufacturedSolution& solution, const VelocityGrid& grid,
                           const QuadratureConfig& quad);

/// int_0^l |g(x, .) e^{alpha |y|}|_{L2_y} dx with g = f^ or, when `derivative`, d_x f^.
double exponential_norm(const ManufacturedSolution& solution, double alpha, bool derivative,
                        const QuadratureConfig& quad);

/// The three distances of the triangle inequality, each in L1(0,l; L2_v) with the trapezoid
/// in x. Evaluated on the Fourier side: the reconstruction from samples c has transform
/// (pi/Rh) sum_n c_n e^{-i v_n y} on |y| < Rh.
struct ErrorNorms {
  double fh_th = 0.0;  ///< |f^h - t^h|
  double th_f = 0.0;   ///< |t^h - f|
  double fh_f = 0.0;   ///< |f^h - f|
};

ErrorNorms error_norms(const ManufacturedSolution& solution, const Eigen::MatrixXd& fh_samples,
                       const VelocityGrid& vgrid, const SpatialGrid& xgrid,
                       const QuadratureConfig& quad);

/// Right-hand sides of the a priori estimates for given h, l, |V|_inf.
struct BoundConstants {
  static double A_bound(double v_norm) { return 2.0 * v_norm; }
  static double B_bound(double v_norm, double h);
  /// 3 exp(6 l |V| / (pi h)), multiplying int |r|.
  static double stability(double v_norm, double h, double l);
  /// exp(2 l |V| / (pi h)) + exp(4 l |V| / (pi h)), multiplying int |r|.
  static double outflow(double v_norm, double h, double l);
  /// (3 / sqrt(pi h)) exp(6 l |V| / (pi h)), multiplying int |Theta|.
  static double weighted(double v_norm, double h, double l);
  /// alpha / 4 - 6 l |V| / pi
  static double beta(double alpha, double v_norm, double l);
};

struct BoundCheck {
  std::string name;
  double measured = 0.0;
  double limit = 0.0;
  bool pass = false;
  double margin() const { return limit - measured; }
};

struct BoundReport {
  std::vector<BoundCheck> checks;

  bool all_pass() const;
  const BoundCheck* find(const std::string& name) const;
  /// Columns name, measured, limit, margin, pass.
  void write_csv(std::ostream& out) const;
};

/// Checks skew-symmetry of A, |A| and |B| bounds, the (I - K) spectrum, symmetry of K and the
/// stability estimates for a finished solve. Never throws.
BoundReport verify_bounds(const SemiDiscreteSystem& system, const BvpResult& result);

struct StudyConfig {
  double v_cut = 8.0;          ///< starting N = max(8, ceil(v_cut / (2 pi h)))
  double tail_target = 1e-12;  ///< N grows by 1.5x until the t^h tail mass is below this
  int max_half_width = 512;
  std::optional<int> half_width;  ///< fixed N, bypassing the tail rule
  std::optional<int> steps;    ///< M_x; auto rule when empty
  int min_steps = 64;
  double alpha = 4.0;          ///< alpha used in the per-row bounds
  std::vector<double> alpha_scan{2.0, 4.0, 8.0};
  QuadratureConfig quad;
  SolverConfig solver;
  int threads = 1;
};

/// N from the velocity cutoff: max(8, ceil(v_cut / (2 pi h))).
int auto_half_width(double h, double v_cut);
/// Smallest N in the sequence n_0, 1.5 n_0, ... (n_0 from auto_half_width) whose t^h samples
/// at x = l/2 have tail mass below `target`; capped at `max_half_width`.
int study_half_width(const ManufacturedSolution& solution, double h, double v_cut, double target,
                     int max_half_width, const QuadratureConfig& quad);
/// M_x = max(minimum, ceil(40 l |V| / (pi h))), which keeps |B| dx <= 0.05.
int auto_steps(double length, double v_norm, double h, int minimum = 64);

struct ConvergenceRow {
  double h = 0.0;
  int N = 0;
  int M_x = 0;
  ErrorNorms errors;
  double th_f_spectral = 0.0;  ///< truncation_error_th, independent of the grid in x
  double theta_norm = 0.0;     ///< |Theta^h| in L1 L2 from the source samples
  double truncation_bound = 0.0;
  double residual_bound = 0.0;
  double error_bound = 0.0;
  double tail_mass = 0.0;      ///< of the t^h samples at x = l/2
  BoundReport bounds;
  SolverDiagnostics diagnostics;
};

struct RateFit {
  double alpha = 0.0;
  double beta_predicted = 0.0;
  double beta_fit = 0.0;
  double r_squared = 0.0;
  bool monotone = false;
  /// 1 pass, 0 fail, -1 not applicable (6 l |V| / pi >= alpha / 4).
  int rate_check = -1;
};

struct ConvergenceReport {
  std::string potential;
  std::string solution;
  double length = 0.0;
  double v_norm = 0.0;
  std::vector<ConvergenceRow> rows;
  std::vector<RateFit> fits;  ///< one per scanned alpha; the first matches StudyConfig::alpha

  bool monotone() const;
  bool triangle_consistent(double slack = 1e-12) const;
  const RateFit& primary_fit() const { return fits.front(); }

  void write_csv(std::ostream& out) const;
  void write_fit_csv(std::ostream& out) const;
};

/// Least-squares line through (1/h, log error): returns slope, intercept and r^2.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};
LineFit fit_exponential_rate(std::span<const double> h, std::span<const double> errors);

/// Builds the residual system per h, solves it, and measures the triangle-inequality terms.
ConvergenceReport convergence_study(const PotentialSpec& potential,
                                    const ManufacturedSolution& solution,
                                    std::span<const double> h_list, const StudyConfig& config);

}  // namespace wigner
