#pragma once

// Two-point boundary value solve in symmetrized variables z = sqrt|T| f: propagators
// U(x, x') of z' = B(x) z + r(x), the outflow operator K = P+ U(l,0) P- U(0,l) P+,
// the (I - K) solve for the outflow data, and a global finite-difference oracle.

#include "wigner/system.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wigner {

struct SolverConfig {
  double step_tolerance = 1e-6;        ///< bound on the local error estimate (|B| dx)^5 / 120
  double round_trip_tolerance = 1e-8;  ///< base tolerance for |U(l,0) U(0,l) - I|
  double solve_tolerance = 1e-8;       ///< relative residual of the outflow equations
  int norm_samples = 17;               ///< nodes at which |B(x)| is estimated
  std::size_t cache_budget = std::size_t{128} << 20;  ///< bytes for stored stage matrices
};

/// Plus indices n >= 0 occupy storage [N, 2N), minus indices [0, N).
class IndexSplit {
 public:
  explicit IndexSplit(int half) : half_(half) {}

  int half() const { return half_; }
  int size() const { return 2 * half_; }

  /// Q+ / Q-: restriction to a half-space.
  Eigen::VectorXd restrict_plus(const Eigen::VectorXd& z) const { return z.tail(half_); }
  Eigen::VectorXd restrict_minus(const Eigen::VectorXd& z) const { return z.head(half_); }
  /// E+ / E-: zero-padded embedding.
  Eigen::VectorXd embed_plus(const Eigen::VectorXd& h) const;
  Eigen::VectorXd embed_minus(const Eigen::VectorXd& h) const;
  /// P+ = E+ Q+ and P- = E- Q-.
  Eigen::VectorXd project_plus(const Eigen::VectorXd& z) const;
  Eigen::VectorXd project_minus(const Eigen::VectorXd& z) const;

  /// E+ as a 2N x N matrix.
  Eigen::MatrixXd plus_basis() const;

 private:
  int half_;
};

/// Similarity transform of the system to z-variables: B = J S A S and r = J S Theta with
/// S = diag(|v_n|^{-1/2}) and J = diag(sign v_n).
class SymmetrizedSystem {
 public:
  explicit SymmetrizedSystem(const SemiDiscreteSystem& system);

  const SemiDiscreteSystem& system() const { return *system_; }
  int size() const { return system_->size(); }

  /// sqrt|D| = |v_n|^{-1/2}, so f = sqrt|D| z.
  const Eigen::VectorXd& scale() const { return scale_; }
  const Eigen::VectorXd& sign() const { return sign_; }

  Eigen::MatrixXd B_node(int j) const;
  Eigen::MatrixXd B_at(double x) const;
  Eigen::VectorXd r_node(int j) const;
  Eigen::VectorXd r_at(double x) const;

  Eigen::VectorXd to_z(const Eigen::VectorXd& f) const;
  Eigen::VectorXd to_f(const Eigen::VectorXd& z) const;

 private:
  Eigen::MatrixXd from_coefficients(const std::vector<double>& c) const;

  const SemiDiscreteSystem* system_;
  Eigen::VectorXd scale_;
  Eigen::VectorXd sign_;
};

/// One classical fourth-order step of Z' = B(x) Z over a signed step `dx`, with B at the
/// start, midpoint and end of the step.
Eigen::MatrixXd rk4_step(const Eigen::MatrixXd& B0, const Eigen::MatrixXd& Bm,
                         const Eigen::MatrixXd& B1, double dx, const Eigen::MatrixXd& Z);

/// Same step for z' = B(x) z + r(x).
Eigen::VectorXd rk4_step(const Eigen::MatrixXd& B0, const Eigen::MatrixXd& Bm,
                         const Eigen::MatrixXd& B1, const Eigen::VectorXd& r0,
                         const Eigen::VectorXd& rm, const Eigen::VectorXd& r1, double dx,
                         const Eigen::VectorXd& z);

/// Largest singular value by power iteration on M^T M from a fixed start vector.
double spectral_norm_estimate(const Eigen::MatrixXd& M, int max_iterations = 500,
                              double tolerance = 1e-13);

enum class Direction { forward, backward };

/// Stage operators B and lifted sources r at nodes and midpoints of the spatial grid.
/// The inflow lift L (inflow values, constant in x) is folded into r as B(x) S^{-1} L so the
/// z-problem has homogeneous inflow conditions.
class PropagatorCache {
 public:
  PropagatorCache(const SymmetrizedSystem& sym, const SolverConfig& config = {});

  const SymmetrizedSystem& symmetrized() const { return *sym_; }
  int steps() const { return steps_; }
  double spacing() const { return dx_; }

  /// Stage s in [0, 2M]: even s is node s/2, odd s the midpoint between nodes.
  Eigen::MatrixXd B(int stage) const;
  Eigen::VectorXd r(int stage) const;

  /// Lift in z-variables, S^{-1} L.
  const Eigen::VectorXd& lift() const { return lift_z_; }

  double B_norm() const { return B_norm_; }
  double B_dx() const { return B_norm_ * dx_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Step across [x_j, x_{j+1}] in the given direction; homogeneous unless `with_source`.
  Eigen::VectorXd step(int j, Direction direction, const Eigen::VectorXd& z, bool with_source) const;
  Eigen::MatrixXd step(int j, Direction direction, const Eigen::MatrixXd& Z) const;

  /// Step matrix U(x_{j+1}, x_j) (forward) or U(x_j, x_{j+1}) (backward).
  Eigen::MatrixXd step_matrix(int j, Direction direction) const;

  /// U(x_b, x_a) Z over the whole node range between a and b.
  Eigen::MatrixXd propagate(const Eigen::MatrixXd& Z, int from, int to) const;
  /// Solution of z' = B z + r from z(x_from) = z0; every visited node is stored when
  /// `trajectory` is given (column j holds z(x_j)).
  Eigen::VectorXd propagate(const Eigen::VectorXd& z0, int from, int to, bool with_source,
                            Eigen::MatrixXd* trajectory = nullptr) const;

 private:
  const SymmetrizedSystem* sym_;
  int steps_;
  double dx_;
  Eigen::VectorXd lift_z_;
  bool lifted_;
  bool zero_operator_;
  std::vector<Eigen::MatrixXd> stored_;
  double B_norm_ = 0.0;
  std::vector<std::string> warnings_;
};

/// Single-step propagation with an explicit stability check: throws Error(StepUnstable)
/// when the local error estimate (|B| |dx|)^5 / 120 exceeds `tolerance`.
Eigen::VectorXd propagate_step(const Eigen::MatrixXd& B0, const Eigen::MatrixXd& Bm,
                               const Eigen::MatrixXd& B1, const Eigen::VectorXd& r0,
                               const Eigen::VectorXd& rm, const Eigen::VectorXd& r1, double dx,
                               const Eigen::VectorXd& z, double tolerance = 1e-6);

struct OutflowOperator {
  Eigen::MatrixXd K;          ///< N x N, acting on the plus half-space
  double round_trip = 0.0;    ///< max |U(l,0) U(0,l) E+ - E+|
};

OutflowOperator build_K(const PropagatorCache& cache, const IndexSplit& split);

struct OutflowSolution {
  Eigen::VectorXd h_plus;   ///< z(l) on plus indices
  Eigen::VectorXd h_minus;  ///< z(0) on minus indices
  double solve_residual = 0.0;
  double residual_forward = 0.0;  ///< |U(l,0) z(0) + int U(l,s) r - z(l)|, relative
  double residual_backward = 0.0;  ///< |U(0,l) z(l) + int_l^0 U(0,s) r - z(0)|, relative
};

/// Solves (I - K) h+ = Q+ [U(l,0) P- int_l^0 U(0,s) r ds + int_0^l U(l,s) r ds] and recovers
/// h- = Q- [U(0,l) E+ h+ + int_l^0 U(0,s) r ds]. Throws Error(SolveFailure).
OutflowSolution solve_outflow(const OutflowOperator& K, const PropagatorCache& cache,
                              const IndexSplit& split, const SolverConfig& config = {});

struct SolverDiagnostics {
  double h = 0.0;
  int N = 0;
  int M_x = 0;
  double A_norm = 0.0;        ///< max over sampled nodes
  double B_norm = 0.0;
  double B_dx = 0.0;
  double K_symmetry = 0.0;    ///< max |K - K^T|
  double min_eig_I_minus_K = 0.0;
  double inverse_norm = 0.0;  ///< |(I - K)^{-1}|
  double round_trip = 0.0;
  double solve_residual = 0.0;
  double residual_forward = 0.0;
  double residual_backward = 0.0;
  double equation_residual = 0.0;  ///< max over interior nodes of |T df - A f - Theta|
  double h_plus_norm = 0.0;
  double h_minus_norm = 0.0;
  double z_max = 0.0;              ///< max_j |z(x_j)|
  double r_integral = 0.0;         ///< int |r(s)| ds (lifted source)
  double theta_integral = 0.0;     ///< int |Theta(s)| ds
  double e_Htilde_max = 0.0;       ///< max_j |f(x_j) - lift|_{H~}
  double tail_mass = 0.0;
  std::vector<std::string> warnings;
};

struct BvpResult {
  SolutionField field;
  SolverDiagnostics diagnostics;
  Eigen::MatrixXd K;
};

/// Full pipeline: lift, symmetrize, propagate, outflow solve and reconstruction. Inflow rows
/// of the returned field equal the boundary data exactly.
BvpResult solve_bvp(const SemiDiscreteSystem& system, const SolverConfig& config = {});

/// Global second-order finite-difference system solved by sparse LU; throws
/// Error(SingularSystem) when factorization fails or the residual exceeds `tolerance`.
SolutionField solve_dense_oracle(const SemiDiscreteSystem& system, double tolerance = 1e-10);

/// Linear interpolation in x between nodes, Whittaker-Shannon sum in v.
double reconstruct(const SolutionField& field, double x, double v);

/// Columns h, N, M_x, then the diagnostic fields in declaration order.
void write_diagnostics_csv(std::ostream& out, const SolverDiagnostics& d);

}  // namespace wigner
