#pragma once

#include "wigner/quadrature.hpp"
#include "wigner/sampling.hpp"
#include "wigner/spatial_grid.hpp"
#include "wigner/toeplitz.hpp"

#include <iosfwd>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace wigner {

struct ConstantPotential {
  double value = 0.0;
};

/// amplitude * sin(wavenumber * x)
struct SinePotential {
  double amplitude = 0.0;
  double wavenumber = 0.0;
};

/// Barrier of `height` on [center - width/2, center + width/2]. With smoothing > 0
/// each edge is a quintic C2 ramp of that width centred on the edge.
struct BarrierPotential {
  double height = 0.0;
  double center = 0.0;
  double width = 0.0;
  double smoothing = 0.0;
};

/// Piecewise-cubic Hermite (PCHIP) interpolation through (x, values).
struct TabulatedPotential {
  std::vector<double> x;
  std::vector<double> values;
};

/// How V is evaluated outside [0, l]: the closed form itself, constant continuation of
/// the endpoint values, or an error.
enum class Extension { natural, constant, none };

class PotentialSpec {
 public:
  using Variant = std::variant<ConstantPotential, SinePotential, BarrierPotential, TabulatedPotential>;

  PotentialSpec(Variant variant, double length, std::optional<Extension> extension = {});

  static PotentialSpec constant(double value, double length);
  static PotentialSpec sine(double amplitude, double wavenumber, double length);
  /// Smoothed barrier; smoothing defaults to l/50.
  static PotentialSpec barrier(double height, double center, double width, double length,
                               std::optional<double> smoothing = {});
  static PotentialSpec tabulated(std::vector<double> x, std::vector<double> values, double length,
                                 Extension extension = Extension::constant);

  /// Throws Error(DomainExceeded) outside [0, l] when the extension is `none`.
  double operator()(double x) const;

  double sup_norm() const;
  double length() const { return length_; }
  Extension extension() const { return extension_; }
  const Variant& variant() const { return variant_; }

  /// Points where V loses smoothness (including continuation seams).
  std::vector<double> breakpoints() const;

  /// True for the raw (unsmoothed) barrier.
  bool discontinuous() const;
  bool is_zero_difference() const;

  std::string describe() const;

 private:
  double evaluate(double x) const;

  Variant variant_;
  double length_;
  Extension extension_;
  std::function<double(double)> spline_;
};

/// D_V(x, y) = V(x + y/2) - V(x - y/2).
double potential_difference(const PotentialSpec& potential, double x, double y);

/// V_w^R_n(x) = (i / 2pi) int_{|y| < Rh} D_V(x, y) e^{i y v~_n} dy
///            = -(1/pi) int_0^Rh D_V(x, y) sin(y v~_n) dy.
/// Throws Error(QuadratureDivergence) when two Gauss orders disagree beyond tolerance.
double wigner_coefficient(const PotentialSpec& potential, double x, int n, const VelocityGrid& grid,
                          const QuadratureConfig& quad);

/// Coefficients V_w^R_n(x_j) for n in [-(2N-1), 2N-1] at every spatial node.
class WignerCoefficientTable {
 public:
  WignerCoefficientTable(VelocityGrid vgrid, SpatialGrid xgrid);

  /// Raw construction without antisymmetry enforcement; `values[j]` has 4N-1 entries
  /// ordered from n = -(2N-1) to 2N-1.
  static WignerCoefficientTable from_values(VelocityGrid vgrid, SpatialGrid xgrid,
                                            std::vector<std::vector<double>> values);

  const VelocityGrid& velocity_grid() const { return vgrid_; }
  const SpatialGrid& spatial_grid() const { return xgrid_; }
  int reach() const { return vgrid_.size() - 1; }

  double at(int n, int j) const { return values_[j][n + reach()]; }
  std::span<const double> node(int j) const { return values_[j]; }

  /// Four-point Lagrange interpolation in x between nodes.
  std::vector<double> interpolate(double x) const;

  double antisymmetry_defect() const;
  bool is_zero() const;

  void write_csv(std::ostream& out) const;

 private:
  VelocityGrid vgrid_;
  SpatialGrid xgrid_;
  std::vector<std::vector<double>> values_;
};

/// Builds the table; only n >= 1 is integrated, negative n are mirrored.
WignerCoefficientTable coefficient_table(const PotentialSpec& potential, const SpatialGrid& xgrid,
                                         const VelocityGrid& vgrid, const QuadratureConfig& quad,
                                         int threads = 1);

/// A(x_j) with entries (pi/Rh) V_w^R_{n-m}(x_j).
ToeplitzOperator assemble_A(const WignerCoefficientTable& table, int j);

/// A(x) from interpolated coefficients, for off-node x.
ToeplitzOperator assemble_A_at(const WignerCoefficientTable& table, double x);

}  // namespace wigner
