#pragma once

// Shannon sampling on the shifted velocity grid: sinc, Whittaker-Shannon
// reconstruction, the smooth band cutoff and band-limited projections.

#include "wigner/quadrature.hpp"

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace wigner {

/// Shifted sampling points v_n = (n + 1/2) pi / Rh, n in [-N, N-1], with Rh = 1/(2h).
/// Storage index k = n + N runs over [0, 2N); k < N are the negative velocities.
class VelocityGrid {
 public:
  VelocityGrid(double h, int half_width);

  double h() const { return h_; }
  double band_radius() const { return 0.5 / h_; }
  int half_width() const { return half_width_; }
  int size() const { return 2 * half_width_; }
  int min_index() const { return -half_width_; }
  int max_index() const { return half_width_ - 1; }

  /// Grid spacing pi / Rh = 2 pi h.
  double spacing() const { return spacing_; }
  double point(int n) const { return (n + 0.5) * spacing_; }
  double dual_point(int n) const { return n * spacing_; }

  int storage(int n) const { return n + half_width_; }
  int index(int k) const { return k - half_width_; }

  std::vector<double> points() const;

 private:
  double h_;
  int half_width_;
  double spacing_;
};

double sinc(double x);

/// sum_n samples[n] sinc(Rh (v - v_n)) over the truncated grid.
double whittaker_eval(std::span<const double> samples, const VelocityGrid& grid, double v);

/// Radial profile zeta(s): 1 for |s| <= 1/2, 0 for |s| >= 3/4, with a C-infinity
/// transition built from the normalized antiderivative of exp(-1/(t(1-t))).
double cutoff_profile(double s);
double cutoff_profile_derivative(double s);

/// zeta_h(y) = zeta(y / Rh).
double cutoff(double y, const VelocityGrid& grid);
double cutoff_derivative(double y, const VelocityGrid& grid);

/// sup |zeta_h'| / h, identical for every h.
double cutoff_derivative_constant();

/// Gauss nodes covering the cutoff support [-3Rh/4, 3Rh/4] with panels split at
/// +-Rh/2, together with cutoff values and the trigonometric table e^{i v_n y}.
class BandQuadrature {
 public:
  BandQuadrature(const VelocityGrid& grid, int order,
                 std::span<const double> breakpoints = {});

  /// Only the transition band Rh/2 <= |y| <= 3Rh/4, where zeta_h' is supported.
  static BandQuadrature transition(const VelocityGrid& grid, int order,
                                   std::span<const double> breakpoints = {});

  std::size_t size() const { return nodes_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& cutoff_values() const { return zeta_; }
  const std::vector<double>& cutoff_derivatives() const { return dzeta_; }

  /// (1/2pi) sum_k w_k m_k g(y_k) e^{i v_n y_k} for every grid point v_n, where m_k is
  /// `multiplier[k]`. Returns real parts; the largest imaginary part goes to `residue`.
  std::vector<double> inverse_transform(std::span<const std::complex<double>> values,
                                        std::span<const double> multiplier,
                                        double* residue) const;

 private:
  BandQuadrature() = default;
  void finish(const VelocityGrid& grid);

  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> zeta_;
  std::vector<double> dzeta_;
  std::vector<double> cos_table_;  // [n * size + k]
  std::vector<double> sin_table_;
  int grid_size_ = 0;
};

/// Samples at v_n of F^{-1}[F(y) zeta_h(y)], the band-limited projection of a function
/// given through its Fourier transform F.
std::vector<double> project_transform(const std::function<std::complex<double>(double)>& transform,
                                      const VelocityGrid& grid, const QuadratureConfig& quad,
                                      std::span<const double> breakpoints = {});

/// Samples t^h_b(v_n) of the band-limited projection of a boundary profile f_b.
/// Throws Error(NonIntegrableBoundary) when the numerical transform fails its Parseval check.
std::vector<double> bandlimit_boundary(const std::function<double(double)>& f_b,
                                       const VelocityGrid& grid, const QuadratureConfig& quad);

/// Samples on the dual grid v~_n = n pi / Rh, n in [first_index, first_index + size).
struct DualSequence {
  int first_index = 0;
  std::vector<double> values;

  int last_index() const { return first_index + static_cast<int>(values.size()) - 1; }
  bool covers(int lo, int hi) const { return lo >= first_index && hi <= last_index(); }
  double at(int n) const { return values[n - first_index]; }
};

/// (2pi/L) sum_m g_{n-m} f_m with L = 2Rh: samples of f * g at v_n for band-limited f.
/// Throws Error(IndexOverflow) if `g` does not cover n - m for all grid pairs.
std::vector<double> convolve_bandlimited(std::span<const double> f_samples, const DualSequence& g,
                                         const VelocityGrid& grid);

}  // namespace wigner
