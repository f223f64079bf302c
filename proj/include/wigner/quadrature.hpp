#pragma once

#include <span>
#include <vector>

namespace wigner {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Rule with `n` points; results are cached per thread for repeated sizes.
const GaussLegendreRule& gauss_legendre(int n);

/// Composite rule: nodes and weights mapped onto a set of panels.
struct PanelRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Splits [a, b] into `panels` equal panels, further cut at every breakpoint that
/// falls strictly inside, and places an `order`-point Gauss rule on each piece.
PanelRule composite_rule(double a, double b, int panels, int order,
                         std::span<const double> breakpoints = {});

/// Composite trapezoid on uniformly spaced samples.
double trapezoid(std::span<const double> values, double spacing);

/// Knobs shared by every quadrature in the library.
struct QuadratureConfig {
  int order = 16;                      ///< Gauss points per panel
  int check_order = 24;                ///< second rule for self-checks
  double velocity_window = 40.0;       ///< W: boundary transforms integrate over [-W, W]
  double velocity_panel = 0.25;        ///< panel width in v for boundary transforms
  double parseval_window = 24.0;       ///< y-window for the Parseval self-check
  double parseval_tolerance = 1e-8;    ///< relative
  double self_check_tolerance = 1e-10; ///< absolute, two-order comparison
};

}  // namespace wigner
