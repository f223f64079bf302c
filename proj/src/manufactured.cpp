#include "wigner/manufactured.hpp"

#include "wigner/error.hpp"
#include "wigner/sampling.hpp"

#include <cmath>
#include <numbers>

namespace wigner {

namespace {
constexpr double kPi = std::numbers::pi;
}

double GaussianProfile::value(double x, double v) const {
  return (1.0 + x * (length_ - x)) * std::exp(-v * v);
}

std::complex<double> GaussianProfile::transform(double x, double y) const {
  return (1.0 + x * (length_ - x)) * std::sqrt(kPi) * std::exp(-0.25 * y * y);
}

std::complex<double> GaussianProfile::transform_dx(double x, double y) const {
  return (length_ - 2.0 * x) * std::sqrt(kPi) * std::exp(-0.25 * y * y);
}

double GaussianProfile::transform_extent(double alpha) const {
  // e^{-y^2/4 + alpha y} peaks at 2 alpha; beyond 2 alpha + 20 it is below e^{-100} of the peak.
  return 2.0 * std::max(alpha, 0.0) + 20.0;
}

BandLimitedProfile::BandLimitedProfile(double length, double y_max, int power)
    : length_(length), y_max_(y_max), power_(power), scale_(y_max / power) {
  if (!(y_max > 0.0) || power < 2)
    throw Error(ErrorCode::InvalidConfig, "band-limited profile: need y_max > 0 and power >= 2");
}

double BandLimitedProfile::value(double x, double v) const {
  return (1.0 + x * (length_ - x)) * std::pow(sinc(scale_ * v), power_);
}

double BandLimitedProfile::profile(double y) const {
  // F[sinc(a v)^p](y) = (pi / a) B_p(y / (2a)).
  return kPi / scale_ * cardinal_bspline(power_, y / (2.0 * scale_));
}

std::complex<double> BandLimitedProfile::transform(double x, double y) const {
  return (1.0 + x * (length_ - x)) * profile(y);
}

std::complex<double> BandLimitedProfile::transform_dx(double x, double y) const {
  return (length_ - 2.0 * x) * profile(y);
}

double BandLimitedProfile::velocity_extent() const {
  // |sinc(a v)|^p <= (a v)^{-p} < 1e-16 beyond this point.
  return std::pow(10.0, 16.0 / power_) / scale_;
}

std::vector<double> BandLimitedProfile::transform_breakpoints() const {
  std::vector<double> knots;
  for (int k = -power_; k <= power_; k += 2) knots.push_back(k * scale_);
  return knots;
}

double cardinal_bspline(int order, double t) {
  // N_p on knots 0..p, shifted so the support is centred.
  const double s = t + 0.5 * order;
  if (s <= 0.0 || s >= order) return 0.0;
  std::vector<double> n(order, 0.0);  // n[i] = N_j(s - i)
  const int cell = static_cast<int>(std::floor(s));
  n[cell] = 1.0;
  for (int j = 2; j <= order; ++j) {
    std::vector<double> next(order, 0.0);
    for (int i = 0; i <= order - j; ++i) {
      const double u = s - i;
      const double left = n[i];
      const double right = (i + 1 < order) ? n[i + 1] : 0.0;
      next[i] = (u * left + (j - u) * right) / (j - 1);
    }
    n.swap(next);
  }
  return n[0];
}

}  // namespace wigner
