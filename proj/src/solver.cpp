#include "wigner/solver.hpp"

#include "wigner/csv.hpp"
#include "wigner/error.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace wigner {

namespace {

constexpr double kPi = std::numbers::pi;

std::string describe_number(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

// Trapezoid over nodes of |column|.
double integrate_norm(const std::vector<double>& norms, double dx) {
  return trapezoid(norms, dx);
}

}  // namespace

Eigen::VectorXd IndexSplit::embed_plus(const Eigen::VectorXd& h) const {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(size());
  z.tail(half_) = h;
  return z;
}

Eigen::VectorXd IndexSplit::embed_minus(const Eigen::VectorXd& h) const {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(size());
  z.head(half_) = h;
  return z;
}

Eigen::VectorXd IndexSplit::project_plus(const Eigen::VectorXd& z) const {
  Eigen::VectorXd out = z;
  out.head(half_).setZero();
  return out;
}

Eigen::VectorXd IndexSplit::project_minus(const Eigen::VectorXd& z) const {
  Eigen::VectorXd out = z;
  out.tail(half_).setZero();
  return out;
}

Eigen::MatrixXd IndexSplit::plus_basis() const {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(size(), half_);
  e.bottomRows(half_).setIdentity();
  return e;
}

SymmetrizedSystem::SymmetrizedSystem(const SemiDiscreteSystem& system) : system_(&system) {
  const int size = system.size();
  scale_.resize(size);
  sign_.resize(size);
  for (int k = 0; k < size; ++k) {
    const double v = system.transport[k];
    scale_[k] = 1.0 / std::sqrt(std::abs(v));
    sign_[k] = v > 0.0 ? 1.0 : -1.0;
  }
}

Eigen::MatrixXd SymmetrizedSystem::from_coefficients(const std::vector<double>& c) const {
  const int size = this->size();
  const int reach = size - 1;
  const double factor = kPi / system_->vgrid.band_radius();
  Eigen::MatrixXd B(size, size);
  for (int m = 0; m < size; ++m)
    for (int k = 0; k < size; ++k)
      B(k, m) = sign_[k] * scale_[k] * factor * c[k - m + reach] * scale_[m];
  return B;
}

Eigen::MatrixXd SymmetrizedSystem::B_node(int j) const {
  const auto row = system_->coefficients.node(j);
  return from_coefficients(std::vector<double>(row.begin(), row.end()));
}

Eigen::MatrixXd SymmetrizedSystem::B_at(double x) const {
  return from_coefficients(system_->coefficients.interpolate(x));
}

Eigen::VectorXd SymmetrizedSystem::r_node(int j) const {
  if (!system_->source) return Eigen::VectorXd::Zero(size());
  return sign_.cwiseProduct(scale_).cwiseProduct(system_->source->col(j));
}

Eigen::VectorXd SymmetrizedSystem::r_at(double x) const {
  return sign_.cwiseProduct(scale_).cwiseProduct(system_->source_at(x));
}

Eigen::VectorXd SymmetrizedSystem::to_z(const Eigen::VectorXd& f) const {
  return f.cwiseQuotient(scale_);
}

Eigen::VectorXd SymmetrizedSystem::to_f(const Eigen::VectorXd& z) const {
  return z.cwiseProduct(scale_);
}

Eigen::MatrixXd rk4_step(const Eigen::MatrixXd& B0, const Eigen::MatrixXd& Bm,
                         const Eigen::MatrixXd& B1, double dx, const Eigen::MatrixXd& Z) {
  const Eigen::MatrixXd k1 = B0 * Z;
  const Eigen::MatrixXd k2 = Bm * (Z + 0.5 * dx * k1);
  const Eigen::MatrixXd k3 = Bm * (Z + 0.5 * dx * k2);
  const Eigen::MatrixXd k4 = B1 * (Z + dx * k3);
  return Z + (dx / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Eigen::VectorXd rk4_step(const Eigen::MatrixXd& B0, const Eigen::MatrixXd& Bm,
                         const Eigen::MatrixXd& B1, const Eigen::VectorXd& r0,
                         const Eigen::VectorXd& rm, const Eigen::VectorXd& r1, double dx,
                         const Eigen::VectorXd& z) {
  const Eigen::VectorXd k1 = B0 * z + r0;
  const Eigen::VectorXd k2 = Bm * (z + 0.5 * dx * k1) + rm;
  const Eigen::VectorXd k3 = Bm * (z + 0.5 * dx * k2) + rm;
  const Eigen::VectorXd k4 = B1 * (z + dx * k3) + r1;
  return z + (dx / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double spectral_norm_estimate(const Eigen::MatrixXd& M, int max_iterations, double tolerance) {
  if (M.size() == 0) return 0.0;
  Eigen::VectorXd v(M.cols());
  for (int i = 0; i < v.size(); ++i) v[i] = 1.0 + 0.5 * std::sin(1.0 + 0.7 * i);
  v.normalize();
  double estimate = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    const Eigen::VectorXd w = M.transpose() * (M * v);
    const double norm = w.norm();
    if (norm == 0.0) return estimate;
    const double next = std::sqrt(norm);
    v = w / norm;
    if (std::abs(next - estimate) <= tolerance * next) return next;
    estimate = next;
  }
  return estimate;
}

PropagatorCache::PropagatorCache(const SymmetrizedSystem& sym, const SolverConfig& config)
    : sym_(&sym),
      steps_(sym.system().xgrid.steps()),
      dx_(sym.system().xgrid.spacing()) {
  const SemiDiscreteSystem& system = sym.system();
  const Eigen::VectorXd inflow = system.inflow_vector();
  lift_z_ = sym.to_z(inflow);
  lifted_ = inflow.cwiseAbs().maxCoeff() > 0.0;
  zero_operator_ = system.coefficients.is_zero();
  if (zero_operator_) return;

  const int stages = 2 * steps_ + 1;
  const std::size_t bytes = static_cast<std::size_t>(stages) * sym.size() * sym.size() * sizeof(double);
  if (bytes <= config.cache_budget) {
    stored_.reserve(stages);
    for (int s = 0; s < stages; ++s)
      stored_.push_back(s % 2 == 0 ? sym.B_node(s / 2) : sym.B_at(0.5 * s * dx_));
  }

  const int samples = std::min(config.norm_samples, steps_ + 1);
  for (int i = 0; i < samples; ++i) {
    const int j = samples == 1 ? 0 : static_cast<int>(std::lround(1.0 * i * steps_ / (samples - 1)));
    B_norm_ = std::max(B_norm_, spectral_norm_estimate(B(2 * j)));
  }
  const double bdx = B_dx();
  const double local = std::pow(bdx, 5) / 120.0;
  if (local > config.step_tolerance)
    throw Error(ErrorCode::StepUnstable,
                "step too large: |B| dx = " + describe_number(bdx) + ", local error estimate " +
                    describe_number(local) + " exceeds " + describe_number(config.step_tolerance));
  if (bdx > 1.0)
    warnings_.push_back("|B| dx = " + describe_number(bdx) + " exceeds 1; increase M_x");
}

Eigen::MatrixXd PropagatorCache::B(int stage) const {
  if (zero_operator_) return Eigen::MatrixXd::Zero(sym_->size(), sym_->size());
  if (!stored_.empty()) return stored_[stage];
  return stage % 2 == 0 ? sym_->B_node(stage / 2) : sym_->B_at(0.5 * stage * dx_);
}

Eigen::VectorXd PropagatorCache::r(int stage) const {
  Eigen::VectorXd out = stage % 2 == 0 ? sym_->r_node(stage / 2) : sym_->r_at(0.5 * stage * dx_);
  if (lifted_ && !zero_operator_) out += B(stage) * lift_z_;
  return out;
}

Eigen::VectorXd PropagatorCache::step(int j, Direction direction, const Eigen::VectorXd& z,
                                      bool with_source) const {
  const bool fwd = direction == Direction::forward;
  const int s0 = fwd ? 2 * j : 2 * j + 2;
  const int s1 = fwd ? 2 * j + 2 : 2 * j;
  const double dx = fwd ? dx_ : -dx_;
  if (zero_operator_) {
    if (!with_source) return z;
    return z + (dx / 6.0) * (r(s0) + 4.0 * r(2 * j + 1) + r(s1));
  }
  if (!with_source) {
    return rk4_step(B(s0), B(2 * j + 1), B(s1), dx, Eigen::MatrixXd(z)).col(0);
  }
  return rk4_step(B(s0), B(2 * j + 1), B(s1), r(s0), r(2 * j + 1), r(s1), dx, z);
}

Eigen::MatrixXd PropagatorCache::step(int j, Direction direction, const Eigen::MatrixXd& Z) const {
  if (zero_operator_) return Z;
  const bool fwd = direction == Direction::forward;
  return rk4_step(B(fwd ? 2 * j : 2 * j + 2), B(2 * j + 1), B(fwd ? 2 * j + 2 : 2 * j),
                  fwd ? dx_ : -dx_, Z);
}

Eigen::MatrixXd PropagatorCache::step_matrix(int j, Direction direction) const {
  return step(j, direction, Eigen::MatrixXd::Identity(sym_->size(), sym_->size()));
}

Eigen::MatrixXd PropagatorCache::propagate(const Eigen::MatrixXd& Z, int from, int to) const {
  Eigen::MatrixXd out = Z;
  if (from <= to) {
    for (int j = from; j < to; ++j) out = step(j, Direction::forward, out);
  } else {
    for (int j = from - 1; j >= to; --j) out = step(j, Direction::backward, out);
  }
  return out;
}

Eigen::VectorXd PropagatorCache::propagate(const Eigen::VectorXd& z0, int from, int to,
                                           bool with_source, Eigen::MatrixXd* trajectory) const {
  Eigen::VectorXd z = z0;
  if (trajectory) {
    trajectory->resize(sym_->size(), steps_ + 1);
    trajectory->setZero();
    trajectory->col(from) = z;
  }
  if (from <= to) {
    for (int j = from; j < to; ++j) {
      z = step(j, Direction::forward, z, with_source);
      if (trajectory) trajectory->col(j + 1) = z;
    }
  } else {
    for (int j = from - 1; j >= to; --j) {
      z = step(j, Direction::backward, z, with_source);
      if (trajectory) trajectory->col(j) = z;
    }
  }
  return z;
}

Eigen::VectorXd propagate_step(const Eigen::MatrixXd& B0, const Eigen::MatrixXd& Bm,
                               const Eigen::MatrixXd& B1, const Eigen::VectorXd& r0,
                               const Eigen::VectorXd& rm, const Eigen::VectorXd& r1, double dx,
                               const Eigen::VectorXd& z, double tolerance) {
  const int n = static_cast<int>(z.size());
  for (const Eigen::MatrixXd* M : {&B0, &Bm, &B1})
    if (M->rows() != n || M->cols() != n)
      throw Error(ErrorCode::ShapeMismatch, "propagate_step: operator shape does not match state");
  if (r0.size() != n || rm.size() != n || r1.size() != n)
    throw Error(ErrorCode::ShapeMismatch, "propagate_step: source shape does not match state");
  double norm = 0.0;
  for (const Eigen::MatrixXd* M : {&B0, &Bm, &B1})
    norm = std::max(norm, spectral_norm_estimate(*M, 100, 1e-6));
  const double bdx = norm * std::abs(dx);
  const double local = std::pow(bdx, 5) / 120.0;
  if (local > tolerance)
    throw Error(ErrorCode::StepUnstable, "propagate_step: |B| dx = " + describe_number(bdx) +
                                             ", local error estimate " + describe_number(local));
  return rk4_step(B0, Bm, B1, r0, rm, r1, dx, z);
}

OutflowOperator build_K(const PropagatorCache& cache, const IndexSplit& split) {
  const int m = cache.steps();
  const int n = split.half();
  const Eigen::MatrixXd plus = split.plus_basis();
  // U(0,l) E+, shared by the round-trip check and by K.
  const Eigen::MatrixXd back = cache.propagate(plus, m, 0);
  Eigen::MatrixXd block(split.size(), 2 * n);
  block.leftCols(n) = back;
  block.rightCols(n) = back;
  block.rightCols(n).bottomRows(n).setZero();  // P-
  const Eigen::MatrixXd there = cache.propagate(block, 0, m);
  OutflowOperator out;
  out.K = there.rightCols(n).bottomRows(n);
  out.round_trip = (there.leftCols(n) - plus).cwiseAbs().maxCoeff();
  return out;
}

OutflowSolution solve_outflow(const OutflowOperator& op, const PropagatorCache& cache,
                              const IndexSplit& split, const SolverConfig& config) {
  const int m = cache.steps();
  const int n = split.half();
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(split.size());
  const Eigen::VectorXd w_f = cache.propagate(zero, 0, m, true);  // int_0^l U(l,s) r ds
  const Eigen::VectorXd w_b = cache.propagate(zero, m, 0, true);  // int_l^0 U(0,s) r ds

  const Eigen::VectorXd rhs =
      split.restrict_plus(cache.propagate(split.project_minus(w_b), 0, m, false) + w_f);
  const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - op.K;
  OutflowSolution out;
  out.h_plus = system.partialPivLu().solve(rhs);
  const double rhs_norm = rhs.norm();
  out.solve_residual = (system * out.h_plus - rhs).norm() / (rhs_norm > 0.0 ? rhs_norm : 1.0);
  if (!std::isfinite(out.solve_residual) || out.solve_residual > config.solve_tolerance)
    throw Error(ErrorCode::SolveFailure, "(I - K) solve residual " +
                                             describe_number(out.solve_residual) + " exceeds " +
                                             describe_number(config.solve_tolerance));
  out.h_minus =
      split.restrict_minus(cache.propagate(split.embed_plus(out.h_plus), m, 0, false) + w_b);

  const Eigen::VectorXd z0 = split.embed_minus(out.h_minus);
  const Eigen::VectorXd zl = split.embed_plus(out.h_plus);
  std::vector<double> r_norms(m + 1);
  for (int j = 0; j <= m; ++j) r_norms[j] = cache.r(2 * j).norm();
  const double scale = std::max({z0.norm(), zl.norm(), w_f.norm(), w_b.norm(),
                                 trapezoid(r_norms, cache.spacing()),
                                 std::numeric_limits<double>::min()});
  out.residual_forward = (cache.propagate(z0, 0, m, false) + w_f - zl).norm() / scale;
  out.residual_backward = (cache.propagate(zl, m, 0, false) + w_b - z0).norm() / scale;
  return out;
}

BvpResult solve_bvp(const SemiDiscreteSystem& system, const SolverConfig& config) {
  const SymmetrizedSystem sym(system);
  const PropagatorCache cache(sym, config);
  const IndexSplit split(system.half());
  const int m = cache.steps();
  const int n = split.half();

  const OutflowOperator op = build_K(cache, split);
  const double round_trip_tol =
      config.round_trip_tolerance + m * std::pow(cache.B_dx(), 5) / 60.0;
  if (!std::isfinite(op.round_trip) || op.round_trip > round_trip_tol)
    throw Error(ErrorCode::UnstablePropagation,
                "propagator round trip defect " + describe_number(op.round_trip) + " exceeds " +
                    describe_number(round_trip_tol) + " (|B| dx = " +
                    describe_number(cache.B_dx()) + ")");
  const OutflowSolution outflow = solve_outflow(op, cache, split, config);

  Eigen::MatrixXd forward, backward;
  cache.propagate(split.embed_minus(outflow.h_minus), 0, m, true, &forward);
  cache.propagate(split.embed_plus(outflow.h_plus), m, 0, true, &backward);
  Eigen::MatrixXd z(split.size(), m + 1);
  z.topRows(n) = backward.topRows(n);
  z.bottomRows(n) = forward.bottomRows(n);

  const Eigen::VectorXd inflow = system.inflow_vector();
  BvpResult result{SolutionField{system.vgrid, system.xgrid, Eigen::MatrixXd(split.size(), m + 1)},
                   SolverDiagnostics{}, op.K};
  for (int j = 0; j <= m; ++j) result.field.values.col(j) = sym.to_f(z.col(j)) + inflow;
  // Inflow rows carry the boundary data exactly.
  for (int k = n; k < 2 * n; ++k) result.field.values(k, 0) = inflow[k];
  for (int k = 0; k < n; ++k) result.field.values(k, m) = inflow[k];

  SolverDiagnostics& d = result.diagnostics;
  d.h = system.vgrid.h();
  d.N = n;
  d.M_x = m;
  d.B_norm = cache.B_norm();
  d.B_dx = cache.B_dx();
  const int samples = std::min(config.norm_samples, m + 1);
  for (int i = 0; i < samples; ++i) {
    const int j = samples == 1 ? 0 : static_cast<int>(std::lround(1.0 * i * m / (samples - 1)));
    d.A_norm = std::max(d.A_norm, spectral_norm_estimate(assemble_A(system.coefficients, j).dense()));
  }
  d.K_symmetry = (op.K - op.K.transpose()).cwiseAbs().maxCoeff();
  const Eigen::MatrixXd i_minus_k = Eigen::MatrixXd::Identity(n, n) - op.K;
  const Eigen::MatrixXd sym_part = 0.5 * (i_minus_k + i_minus_k.transpose());
  d.min_eig_I_minus_K = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym_part).eigenvalues().minCoeff();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(i_minus_k);
  d.inverse_norm = 1.0 / svd.singularValues().minCoeff();
  d.round_trip = op.round_trip;
  d.solve_residual = outflow.solve_residual;
  d.residual_forward = outflow.residual_forward;
  d.residual_backward = outflow.residual_backward;
  d.h_plus_norm = outflow.h_plus.norm();
  d.h_minus_norm = outflow.h_minus.norm();

  std::vector<double> r_norms(m + 1), theta_norms(m + 1);
  const Eigen::VectorXd root_v = Eigen::VectorXd(sym.scale()).cwiseInverse();
  for (int j = 0; j <= m; ++j) {
    d.z_max = std::max(d.z_max, z.col(j).norm());
    const Eigen::VectorXd r = cache.r(2 * j);
    r_norms[j] = r.norm();
    theta_norms[j] = root_v.cwiseProduct(r).norm();  // |Theta + A L| in f-variables
    const Eigen::VectorXd e = result.field.values.col(j) - inflow;
    d.e_Htilde_max = std::max(d.e_Htilde_max, root_v.cwiseProduct(e).norm());
  }
  d.r_integral = integrate_norm(r_norms, cache.spacing());
  d.theta_integral = integrate_norm(theta_norms, cache.spacing());

  const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(system.transport.data(), split.size());
  const double dx = cache.spacing();
  for (int j = 1; j < m; ++j) {
    const Eigen::VectorXd df =
        (result.field.values.col(j + 1) - result.field.values.col(j - 1)) / (2.0 * dx);
    Eigen::VectorXd res = v.cwiseProduct(df) -
                          apply_operator(system, j, result.field.values.col(j));
    if (system.source) res -= system.source->col(j);
    d.equation_residual = std::max(d.equation_residual, res.cwiseAbs().maxCoeff());
  }
  d.tail_mass = tail_mass(inflow);
  d.warnings = cache.warnings();
  if (d.min_eig_I_minus_K < 1.0 - 1e-6)
    d.warnings.push_back("smallest eigenvalue of I - K is " + describe_number(d.min_eig_I_minus_K));
  return result;
}

SolutionField solve_dense_oracle(const SemiDiscreteSystem& system, double tolerance) {
  const int size = system.size();
  const int n = system.half();
  const int m = system.xgrid.steps();
  const double dx = system.xgrid.spacing();
  const int unknowns = size * (m + 1);
  auto index = [size](int k, int j) { return j * size + k; };

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(unknowns) * (size + 3));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns);
  std::vector<Eigen::MatrixXd> A(m + 1);
  for (int j = 0; j <= m; ++j) A[j] = assemble_A(system.coefficients, j).dense();

  for (int j = 0; j <= m; ++j) {
    for (int k = 0; k < size; ++k) {
      const int row = index(k, j);
      const bool plus = k >= n;
      if ((plus && j == 0) || (!plus && j == m)) {
        entries.emplace_back(row, row, 1.0);
        rhs[row] = system.inflow(k);
        continue;
      }
      const double v = system.transport[k] / (2.0 * dx);
      if (j == 0) {
        entries.emplace_back(row, index(k, 0), -3.0 * v);
        entries.emplace_back(row, index(k, 1), 4.0 * v);
        entries.emplace_back(row, index(k, 2), -1.0 * v);
      } else if (j == m) {
        entries.emplace_back(row, index(k, m), 3.0 * v);
        entries.emplace_back(row, index(k, m - 1), -4.0 * v);
        entries.emplace_back(row, index(k, m - 2), 1.0 * v);
      } else {
        entries.emplace_back(row, index(k, j + 1), v);
        entries.emplace_back(row, index(k, j - 1), -v);
      }
      for (int c = 0; c < size; ++c)
        if (A[j](k, c) != 0.0) entries.emplace_back(row, index(c, j), -A[j](k, c));
      if (system.source) rhs[row] = (*system.source)(k, j);
    }
  }
  Eigen::SparseMatrix<double> matrix(unknowns, unknowns);
  matrix.setFromTriplets(entries.begin(), entries.end());
  matrix.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(matrix);
  if (lu.info() != Eigen::Success)
    throw Error(ErrorCode::SingularSystem, "dense oracle: sparse LU factorization failed");
  const Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success)
    throw Error(ErrorCode::SingularSystem, "dense oracle: sparse LU solve failed");
  const double residual = (matrix * x - rhs).norm() / std::max(rhs.norm(), 1.0);
  if (!std::isfinite(residual) || residual > tolerance)
    throw Error(ErrorCode::SingularSystem,
                "dense oracle: residual " + describe_number(residual) + " exceeds tolerance");

  SolutionField field{system.vgrid, system.xgrid, Eigen::MatrixXd(size, m + 1)};
  for (int j = 0; j <= m; ++j) field.values.col(j) = x.segment(index(0, j), size);
  return field;
}

double reconstruct(const SolutionField& field, double x, double v) {
  const int m = field.xgrid.steps();
  const double t = std::clamp(x / field.xgrid.spacing(), 0.0, static_cast<double>(m));
  const int j = std::min(static_cast<int>(std::floor(t)), m - 1);
  const double s = t - j;
  const int size = field.vgrid.size();
  std::vector<double> samples(size);
  for (int k = 0; k < size; ++k)
    samples[k] = s == 0.0 ? field.values(k, j)
                          : (1.0 - s) * field.values(k, j) + s * field.values(k, j + 1);
  return whittaker_eval(samples, field.vgrid, v);
}

void write_diagnostics_csv(std::ostream& out, const SolverDiagnostics& d) {
  out << "h,N,M_x,A_norm,B_norm,B_dx,K_symmetry,min_eig_I_minus_K,inverse_norm,round_trip,"
         "solve_residual,residual_forward,residual_backward,equation_residual,h_plus_norm,h_minus_norm,"
         "z_max,r_integral,theta_integral,e_Htilde_max,tail_mass\n";
  out << csv::number(d.h) << ',' << d.N << ',' << d.M_x;
  for (double x : {d.A_norm, d.B_norm, d.B_dx, d.K_symmetry, d.min_eig_I_minus_K, d.inverse_norm,
                   d.round_trip, d.solve_residual, d.residual_forward, d.residual_backward,
                   d.equation_residual, d.h_plus_norm, d.h_minus_norm, d.z_max, d.r_integral,
                   d.theta_integral, d.e_Htilde_max, d.tail_mass})
    out << ',' << csv::number(x);
  out << '\n';
}

}  // namespace wigner
