#include "wigner/sampling.hpp"

#include "wigner/error.hpp"
#include "wigner/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace wigner {

namespace {

constexpr double kPi = std::numbers::pi;

double bump(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return std::exp(-1.0 / (t * (1.0 - t)));
}

double bump_integral(double a, double b, int panels) {
  const PanelRule rule = composite_rule(a, b, panels, 32);
  double s = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) s += rule.weights[k] * bump(rule.nodes[k]);
  return s;
}

double bump_mass() {
  static const double mass = bump_integral(0.0, 1.0, 64);
  return mass;
}

// Normalized antiderivative of the bump; uses bump(t) = bump(1 - t) to keep the
// integration interval at most [0, 1/2].
double bump_cdf(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  if (t > 0.5) return 1.0 - bump_cdf(1.0 - t);
  return bump_integral(0.0, t, 16) / bump_mass();
}

}  // namespace

VelocityGrid::VelocityGrid(double h, int half_width)
    : h_(h), half_width_(half_width), spacing_(2.0 * kPi * h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw Error(ErrorCode::InvalidConfig, "velocity grid: h must be positive");
  if (half_width < 1)
    throw Error(ErrorCode::InvalidConfig, "velocity grid: N must be at least 1");
}

std::vector<double> VelocityGrid::points() const {
  std::vector<double> v(size());
  for (int k = 0; k < size(); ++k) v[k] = point(index(k));
  return v;
}

double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double whittaker_eval(std::span<const double> samples, const VelocityGrid& grid, double v) {
  if (static_cast<int>(samples.size()) != grid.size())
    throw Error(ErrorCode::ShapeMismatch, "whittaker_eval: sample count does not match grid");
  const double r = grid.band_radius();
  double s = 0.0;
  for (int k = 0; k < grid.size(); ++k) {
    const double vn = grid.point(grid.index(k));
    // Exact cardinality at the nodes; sinc(R(v - v_n)) is not exactly zero otherwise.
    if (v == vn) return samples[k];
    s += samples[k] * sinc(r * (v - vn));
  }
  return s;
}

double cutoff_profile(double s) {
  const double a = std::abs(s);
  if (a <= 0.5) return 1.0;
  if (a >= 0.75) return 0.0;
  return 1.0 - bump_cdf(4.0 * (a - 0.5));
}

double cutoff_profile_derivative(double s) {
  const double a = std::abs(s);
  if (a <= 0.5 || a >= 0.75) return 0.0;
  const double d = -4.0 * bump(4.0 * (a - 0.5)) / bump_mass();
  return s > 0 ? d : -d;
}

double cutoff(double y, const VelocityGrid& grid) {
  return cutoff_profile(y / grid.band_radius());
}

double cutoff_derivative(double y, const VelocityGrid& grid) {
  const double r = grid.band_radius();
  return cutoff_profile_derivative(y / r) / r;
}

double cutoff_derivative_constant() {
  // |zeta_h'| = 8 h bump(t) / mass, maximal at t = 1/2.
  return 8.0 * bump(0.5) / bump_mass();
}

BandQuadrature::BandQuadrature(const VelocityGrid& grid, int order,
                               std::span<const double> breakpoints) {
  const double r = grid.band_radius();
  const int n = grid.half_width();
  std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
  for (double& c : cuts) c = std::abs(c);
  PanelRule inner = composite_rule(0.0, 0.5 * r, std::max(4, (n + 1) / 2), order, cuts);
  PanelRule outer = composite_rule(0.5 * r, 0.75 * r, std::max(8, (n + 3) / 4), order, cuts);
  for (const PanelRule* rule : {&inner, &outer}) {
    for (std::size_t k = 0; k < rule->size(); ++k) {
      nodes_.push_back(rule->nodes[k]);
      weights_.push_back(rule->weights[k]);
      nodes_.push_back(-rule->nodes[k]);
      weights_.push_back(rule->weights[k]);
    }
  }
  finish(grid);
}

BandQuadrature BandQuadrature::transition(const VelocityGrid& grid, int order,
                                          std::span<const double> breakpoints) {
  const double r = grid.band_radius();
  const int n = grid.half_width();
  std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
  for (double& c : cuts) c = std::abs(c);
  PanelRule outer = composite_rule(0.5 * r, 0.75 * r, std::max(8, (n + 3) / 4), order, cuts);
  BandQuadrature q;
  for (std::size_t k = 0; k < outer.size(); ++k) {
    q.nodes_.push_back(outer.nodes[k]);
    q.weights_.push_back(outer.weights[k]);
    q.nodes_.push_back(-outer.nodes[k]);
    q.weights_.push_back(outer.weights[k]);
  }
  q.finish(grid);
  return q;
}

void BandQuadrature::finish(const VelocityGrid& grid) {
  const std::size_t m = nodes_.size();
  grid_size_ = grid.size();
  zeta_.resize(m);
  dzeta_.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    zeta_[k] = cutoff(nodes_[k], grid);
    dzeta_[k] = cutoff_derivative(nodes_[k], grid);
  }
  cos_table_.resize(grid_size_ * m);
  sin_table_.resize(grid_size_ * m);
  for (int i = 0; i < grid_size_; ++i) {
    const double v = grid.point(grid.index(i));
    for (std::size_t k = 0; k < m; ++k) {
      cos_table_[i * m + k] = std::cos(v * nodes_[k]);
      sin_table_[i * m + k] = std::sin(v * nodes_[k]);
    }
  }
}

std::vector<double> BandQuadrature::inverse_transform(
    std::span<const std::complex<double>> values, std::span<const double> multiplier,
    double* residue) const {
  const std::size_t m = nodes_.size();
  if (values.size() != m || multiplier.size() != m)
    throw Error(ErrorCode::ShapeMismatch, "band quadrature: value count does not match nodes");
  std::vector<double> out(grid_size_);
  double worst = 0.0;
  for (int i = 0; i < grid_size_; ++i) {
    double re = 0.0, im = 0.0;
    const double* c = &cos_table_[i * m];
    const double* s = &sin_table_[i * m];
    for (std::size_t k = 0; k < m; ++k) {
      const double w = weights_[k] * multiplier[k];
      const double a = values[k].real(), b = values[k].imag();
      re += w * (a * c[k] - b * s[k]);
      im += w * (a * s[k] + b * c[k]);
    }
    out[i] = re / (2.0 * kPi);
    worst = std::max(worst, std::abs(im) / (2.0 * kPi));
  }
  if (residue) *residue = worst;
  return out;
}

std::vector<double> project_transform(const std::function<std::complex<double>(double)>& transform,
                                      const VelocityGrid& grid, const QuadratureConfig& quad,
                                      std::span<const double> breakpoints) {
  const BandQuadrature band(grid, quad.order, breakpoints);
  std::vector<std::complex<double>> values(band.size());
  for (std::size_t k = 0; k < band.size(); ++k) values[k] = transform(band.nodes()[k]);
  double residue = 0.0;
  std::vector<double> out = band.inverse_transform(values, band.cutoff_values(), &residue);
  if (residue > 1e-10)
    throw Error(ErrorCode::QuadratureDivergence,
                "band-limited projection: imaginary residue " + std::to_string(residue));
  return out;
}

std::vector<double> bandlimit_boundary(const std::function<double(double)>& f_b,
                                       const VelocityGrid& grid, const QuadratureConfig& quad) {
  const double w = quad.velocity_window;
  const int vpanels = std::max(1, static_cast<int>(std::ceil(2.0 * w / quad.velocity_panel)));
  const PanelRule vrule = composite_rule(-w, w, vpanels, quad.order);
  std::vector<double> fv(vrule.size());
  double energy_v = 0.0;
  for (std::size_t i = 0; i < vrule.size(); ++i) {
    fv[i] = f_b(vrule.nodes[i]);
    if (!std::isfinite(fv[i]))
      throw Error(ErrorCode::NonIntegrableBoundary, "boundary profile is not finite at v = " +
                                                        std::to_string(vrule.nodes[i]));
    energy_v += vrule.weights[i] * fv[i] * fv[i];
  }
  auto forward = [&](double y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < vrule.size(); ++i) {
      if (fv[i] == 0.0) continue;
      const double a = vrule.nodes[i] * y;
      re += vrule.weights[i] * fv[i] * std::cos(a);
      im -= vrule.weights[i] * fv[i] * std::sin(a);
    }
    return std::complex<double>{re, im};
  };

  // Parseval: int |f_b|^2 dv = (1/2pi) int |F f_b|^2 dy.
  const double p = std::max(quad.parseval_window, 0.75 * grid.band_radius());
  const PanelRule yrule =
      composite_rule(-p, p, std::max(8, static_cast<int>(std::ceil(2.0 * p / 0.5))), quad.order);
  double energy_y = 0.0;
  for (std::size_t k = 0; k < yrule.size(); ++k)
    energy_y += yrule.weights[k] * std::norm(forward(yrule.nodes[k]));
  energy_y /= 2.0 * kPi;
  const double mismatch = std::abs(energy_v - energy_y);
  if (mismatch > quad.parseval_tolerance * std::max(energy_v, 1e-300) && mismatch > 1e-300)
    throw Error(ErrorCode::NonIntegrableBoundary,
                "boundary transform fails Parseval check: relative mismatch " +
                    std::to_string(mismatch / std::max(energy_v, 1e-300)));

  const BandQuadrature band(grid, quad.order);
  std::vector<std::complex<double>> values(band.size());
  for (std::size_t k = 0; k < band.size(); ++k) values[k] = forward(band.nodes()[k]);
  double residue = 0.0;
  std::vector<double> out = band.inverse_transform(values, band.cutoff_values(), &residue);
  if (residue > 1e-10)
    throw Error(ErrorCode::NonIntegrableBoundary,
                "boundary projection: imaginary residue " + std::to_string(residue));
  return out;
}

std::vector<double> convolve_bandlimited(std::span<const double> f_samples, const DualSequence& g,
                                         const VelocityGrid& grid) {
  const int size = grid.size();
  if (static_cast<int>(f_samples.size()) != size)
    throw Error(ErrorCode::ShapeMismatch, "convolve_bandlimited: sample count does not match grid");
  const int reach = size - 1;
  if (!g.covers(-reach, reach))
    throw Error(ErrorCode::IndexOverflow,
                "convolve_bandlimited: dual samples cover [" + std::to_string(g.first_index) + ", " +
                    std::to_string(g.last_index()) + "], need [" + std::to_string(-reach) + ", " +
                    std::to_string(reach) + "]");
  const double scale = kPi / grid.band_radius();  // 2 pi / L with L = 2 Rh
  std::vector<double> c(2 * reach + 1);
  for (int k = -reach; k <= reach; ++k) c[k + reach] = scale * g.at(k);
  return ToeplitzOperator(std::move(c)).apply(f_samples);
}

}  // namespace wigner
