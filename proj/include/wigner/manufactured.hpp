#pragma once

#include <complex>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace wigner {

/// Closed-form f(x, v) together with its velocity transform
/// f^(x, y) = int f(x, v) e^{-i v y} dv and the x-derivative of that transform.
class ManufacturedSolution {
 public:
  virtual ~ManufacturedSolution() = default;

  virtual std::string name() const = 0;
  virtual double length() const = 0;
  virtual double value(double x, double v) const = 0;
  virtual std::complex<double> transform(double x, double y) const = 0;
  virtual std::complex<double> transform_dx(double x, double y) const = 0;

  /// Largest alpha with f^ e^{alpha |y|} square integrable (infinity allowed).
  virtual double alpha_max() const = 0;
  /// Radius of the transform support; infinity when not compactly supported.
  virtual double transform_support() const = 0;
  /// |y| beyond which |f^| e^{alpha |y|} is negligible.
  virtual double transform_extent(double alpha) const = 0;
  /// |v| beyond which |f| is negligible.
  virtual double velocity_extent() const = 0;
  /// Points in y where f^ is not smooth.
  virtual std::vector<double> transform_breakpoints() const { return {}; }
};

/// f(x, v) = (1 + x (l - x)) e^{-v^2}.
class GaussianProfile final : public ManufacturedSolution {
 public:
  explicit GaussianProfile(double length) : length_(length) {}

  std::string name() const override { return "gaussian"; }
  double length() const override { return length_; }
  double value(double x, double v) const override;
  std::complex<double> transform(double x, double y) const override;
  std::complex<double> transform_dx(double x, double y) const override;
  double alpha_max() const override { return std::numeric_limits<double>::infinity(); }
  double transform_support() const override { return std::numeric_limits<double>::infinity(); }
  double transform_extent(double alpha) const override;
  double velocity_extent() const override { return 8.0; }

 private:
  double length_;
};

/// f(x, v) = (1 + x (l - x)) sinc(a v)^p with a = y_max / p; the transform is a
/// scaled cardinal B-spline of order p supported in |y| <= y_max.
class BandLimitedProfile final : public ManufacturedSolution {
 public:
  BandLimitedProfile(double length, double y_max, int power = 16);

  std::string name() const override { return "bandlimited"; }
  double length() const override { return length_; }
  double value(double x, double v) const override;
  std::complex<double> transform(double x, double y) const override;
  std::complex<double> transform_dx(double x, double y) const override;
  double alpha_max() const override { return std::numeric_limits<double>::infinity(); }
  double transform_support() const override { return y_max_; }
  double transform_extent(double) const override { return y_max_; }
  double velocity_extent() const override;
  std::vector<double> transform_breakpoints() const override;

  double y_max() const { return y_max_; }
  int power() const { return power_; }

 private:
  double profile(double y) const;

  double length_;
  double y_max_;
  int power_;
  double scale_;  // a
};

/// Centred cardinal B-spline of order p (unit integral, support [-p/2, p/2]),
/// evaluated with the stable triangular recurrence.
double cardinal_bspline(int order, double t);

}  // namespace wigner
