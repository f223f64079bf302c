#include "wigner/potential.hpp"

#include "wigner/csv.hpp"
#include "wigner/error.hpp"

#include <cmath>

// Boost 1.74 pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include <algorithm>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

namespace wigner {

namespace {

constexpr double kPi = std::numbers::pi;

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

PotentialSpec::PotentialSpec(Variant variant, double length, std::optional<Extension> extension)
    : variant_(std::move(variant)), length_(length) {
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidConfig, "potential: l must be positive");
  const bool tabulated = std::holds_alternative<TabulatedPotential>(variant_);
  extension_ = extension.value_or(tabulated ? Extension::constant : Extension::natural);
  if (tabulated && extension_ == Extension::natural) extension_ = Extension::constant;

  if (auto* b = std::get_if<BarrierPotential>(&variant_)) {
    if (!(b->width > 0.0) || b->smoothing < 0.0 || b->smoothing > b->width)
      throw Error(ErrorCode::InvalidConfig,
                  "barrier: need width > 0 and 0 <= smoothing <= width");
  }
  if (auto* t = std::get_if<TabulatedPotential>(&variant_)) {
    if (t->x.size() != t->values.size() || t->x.size() < 4)
      throw Error(ErrorCode::InvalidConfig, "tabulated potential: need >= 4 matching nodes");
    if (!std::is_sorted(t->x.begin(), t->x.end()) ||
        std::adjacent_find(t->x.begin(), t->x.end()) != t->x.end())
      throw Error(ErrorCode::InvalidConfig, "tabulated potential: nodes must increase strictly");
    for (double v : t->values)
      if (!std::isfinite(v))
        throw Error(ErrorCode::InvalidConfig, "tabulated potential: non-finite value");
    auto xs = t->x;
    auto ys = t->values;
    auto spline = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(
        std::move(xs), std::move(ys));
    spline_ = [spline](double x) { return (*spline)(x); };
  }
}

PotentialSpec PotentialSpec::constant(double value, double length) {
  return PotentialSpec(ConstantPotential{value}, length);
}

PotentialSpec PotentialSpec::sine(double amplitude, double wavenumber, double length) {
  return PotentialSpec(SinePotential{amplitude, wavenumber}, length);
}

PotentialSpec PotentialSpec::barrier(double height, double center, double width, double length,
                                     std::optional<double> smoothing) {
  return PotentialSpec(BarrierPotential{height, center, width, smoothing.value_or(length / 50.0)},
                       length);
}

PotentialSpec PotentialSpec::tabulated(std::vector<double> x, std::vector<double> values,
                                       double length, Extension extension) {
  return PotentialSpec(TabulatedPotential{std::move(x), std::move(values)}, length, extension);
}

double PotentialSpec::evaluate(double x) const {
  return std::visit(
      overloaded{
          [](const ConstantPotential& c) { return c.value; },
          [x](const SinePotential& s) { return s.amplitude * std::sin(s.wavenumber * x); },
          [x](const BarrierPotential& b) {
            const double lo = b.center - 0.5 * b.width, hi = b.center + 0.5 * b.width;
            if (b.smoothing == 0.0) return (x > lo && x < hi) ? b.height : 0.0;
            const double d = b.smoothing;
            return b.height * (smoothstep((x - lo) / d + 0.5) - smoothstep((x - hi) / d + 0.5));
          },
          [this, x](const TabulatedPotential& t) {
            if (x <= t.x.front()) return t.values.front();
            if (x >= t.x.back()) return t.values.back();
            return spline_(x);
          },
      },
      variant_);
}

double PotentialSpec::operator()(double x) const {
  if (x >= 0.0 && x <= length_) return evaluate(x);
  switch (extension_) {
    case Extension::natural:
      return evaluate(x);
    case Extension::constant:
      return evaluate(x < 0.0 ? 0.0 : length_);
    case Extension::none:
      break;
  }
  std::ostringstream msg;
  msg << "potential evaluated at x = " << x << " outside [0, " << length_
      << "] with extension disabled";
  throw Error(ErrorCode::DomainExceeded, msg.str());
}

double PotentialSpec::sup_norm() const {
  return std::visit(
      overloaded{
          [](const ConstantPotential& c) { return std::abs(c.value); },
          [](const SinePotential& s) { return s.wavenumber == 0.0 ? 0.0 : std::abs(s.amplitude); },
          [](const BarrierPotential& b) { return std::abs(b.height); },
          [](const TabulatedPotential& t) {
            double m = 0.0;
            for (double v : t.values) m = std::max(m, std::abs(v));
            return m;
          },
      },
      variant_);
}

std::vector<double> PotentialSpec::breakpoints() const {
  std::vector<double> pts = std::visit(
      overloaded{
          [](const ConstantPotential&) { return std::vector<double>{}; },
          [](const SinePotential&) { return std::vector<double>{}; },
          [](const BarrierPotential& b) {
            const double lo = b.center - 0.5 * b.width, hi = b.center + 0.5 * b.width;
            if (b.smoothing == 0.0) return std::vector<double>{lo, hi};
            const double d = 0.5 * b.smoothing;
            return std::vector<double>{lo - d, lo + d, hi - d, hi + d};
          },
          [](const TabulatedPotential& t) { return t.x; },
      },
      variant_);
  if (extension_ == Extension::constant) {
    pts.push_back(0.0);
    pts.push_back(length_);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

bool PotentialSpec::discontinuous() const {
  const auto* b = std::get_if<BarrierPotential>(&variant_);
  return b && b->smoothing == 0.0 && b->height != 0.0;
}

bool PotentialSpec::is_zero_difference() const {
  if (std::holds_alternative<ConstantPotential>(variant_)) return true;
  if (const auto* s = std::get_if<SinePotential>(&variant_))
    return s->amplitude == 0.0 || s->wavenumber == 0.0;
  if (const auto* b = std::get_if<BarrierPotential>(&variant_)) return b->height == 0.0;
  return false;
}

std::string PotentialSpec::describe() const {
  std::ostringstream out;
  out.precision(17);
  std::visit(overloaded{
                 [&](const ConstantPotential& c) { out << "constant(" << c.value << ")"; },
                 [&](const SinePotential& s) {
                   out << "sine(" << s.amplitude << ", " << s.wavenumber << ")";
                 },
                 [&](const BarrierPotential& b) {
                   out << "barrier(" << b.height << ", " << b.center << ", " << b.width << ", "
                       << b.smoothing << ")";
                 },
                 [&](const TabulatedPotential& t) { out << "tabulated(" << t.x.size() << " nodes)"; },
             },
             variant_);
  return out.str();
}

double potential_difference(const PotentialSpec& potential, double x, double y) {
  return potential(x + 0.5 * y) - potential(x - 0.5 * y);
}

namespace {

// Images in y of the potential breakpoints: x +- y/2 = p.
std::vector<double> difference_breakpoints(const PotentialSpec& potential, double x) {
  std::vector<double> out;
  for (double p : potential.breakpoints()) {
    out.push_back(2.0 * (p - x));
    out.push_back(2.0 * (x - p));
  }
  return out;
}

struct OddSamples {
  PanelRule rule;
  std::vector<double> difference;  // D_V(x, y_k)
  double oddness_defect = 0.0;     // max |D_V(x, y) + D_V(x, -y)|
};

OddSamples sample_difference(const PotentialSpec& potential, double x, double radius, int panels,
                             int order) {
  OddSamples s;
  const std::vector<double> cuts = difference_breakpoints(potential, x);
  s.rule = composite_rule(0.0, radius, panels, order, cuts);
  s.difference.resize(s.rule.size());
  for (std::size_t k = 0; k < s.rule.size(); ++k) {
    const double y = s.rule.nodes[k];
    const double d = potential_difference(potential, x, y);
    s.difference[k] = d;
    s.oddness_defect = std::max(s.oddness_defect, std::abs(d + potential_difference(potential, x, -y)));
  }
  return s;
}

double sine_moment(const OddSamples& s, double frequency) {
  double acc = 0.0;
  for (std::size_t k = 0; k < s.rule.size(); ++k)
    acc += s.rule.weights[k] * s.difference[k] * std::sin(frequency * s.rule.nodes[k]);
  return -acc / kPi;
}

}  // namespace

double wigner_coefficient(const PotentialSpec& potential, double x, int n, const VelocityGrid& grid,
                          const QuadratureConfig& quad) {
  if (std::abs(n) > grid.size() - 1)
    throw Error(ErrorCode::IndexOverflow, "wigner_coefficient: |n| exceeds 2N-1");
  if (n == 0) return 0.0;
  const double r = grid.band_radius();
  const int panels = std::max(4, std::abs(n));
  const OddSamples a = sample_difference(potential, x, r, panels, quad.order);
  const OddSamples b = sample_difference(potential, x, r, panels, quad.check_order);
  // The cosine part over the symmetric ball is the imaginary residue.
  const double residue = std::max(a.oddness_defect, b.oddness_defect) * r / kPi;
  if (residue > 1e-10)
    throw Error(ErrorCode::QuadratureDivergence,
                "wigner_coefficient: imaginary residue " + std::to_string(residue));
  const double freq = grid.dual_point(n);
  const double va = sine_moment(a, freq), vb = sine_moment(b, freq);
  if (std::abs(va - vb) > quad.self_check_tolerance * std::max(1.0, std::abs(vb)))
    throw Error(ErrorCode::QuadratureDivergence,
                "wigner_coefficient: self-check mismatch " + std::to_string(std::abs(va - vb)));
  return vb;
}

WignerCoefficientTable::WignerCoefficientTable(VelocityGrid vgrid, SpatialGrid xgrid)
    : vgrid_(vgrid), xgrid_(xgrid),
      values_(xgrid.size(), std::vector<double>(2 * vgrid.size() - 1, 0.0)) {}

WignerCoefficientTable WignerCoefficientTable::from_values(VelocityGrid vgrid, SpatialGrid xgrid,
                                                           std::vector<std::vector<double>> values) {
  WignerCoefficientTable t(vgrid, xgrid);
  if (static_cast<int>(values.size()) != xgrid.size())
    throw Error(ErrorCode::ShapeMismatch, "coefficient table: node count mismatch");
  for (const auto& row : values)
    if (static_cast<int>(row.size()) != 2 * vgrid.size() - 1)
      throw Error(ErrorCode::ShapeMismatch, "coefficient table: expected 4N-1 coefficients per node");
  t.values_ = std::move(values);
  return t;
}

std::vector<double> WignerCoefficientTable::interpolate(double x) const {
  const int m = xgrid_.steps();
  const double dx = xgrid_.spacing();
  const double s = x / dx;
  const double nearest = std::round(s);
  if (std::abs(s - nearest) < 1e-12 && nearest >= 0 && nearest <= m)
    return values_[static_cast<int>(nearest)];
  const int j0 = std::clamp(static_cast<int>(std::floor(s)) - 1, 0, m - 3);
  const double t = s - j0;
  double w[4];
  for (int a = 0; a < 4; ++a) {
    double p = 1.0;
    for (int b = 0; b < 4; ++b)
      if (b != a) p *= (t - b) / static_cast<double>(a - b);
    w[a] = p;
  }
  std::vector<double> out(values_[0].size(), 0.0);
  for (int a = 0; a < 4; ++a) {
    const auto& row = values_[j0 + a];
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w[a] * row[i];
  }
  return out;
}

double WignerCoefficientTable::antisymmetry_defect() const {
  double worst = 0.0;
  const int r = reach();
  for (const auto& row : values_) {
    worst = std::max(worst, std::abs(row[r]));
    for (int n = 1; n <= r; ++n) worst = std::max(worst, std::abs(row[r + n] + row[r - n]));
  }
  return worst;
}

bool WignerCoefficientTable::is_zero() const {
  for (const auto& row : values_)
    for (double v : row)
      if (v != 0.0) return false;
  return true;
}

void WignerCoefficientTable::write_csv(std::ostream& out) const {
  out << "j,x_j,n,VwR\n";
  const int r = reach();
  for (int j = 0; j < xgrid_.size(); ++j)
    for (int n = -r; n <= r; ++n)
      out << j << ',' << csv::number(xgrid_.node(j)) << ',' << n << ',' << csv::number(at(n, j))
          << '\n';
}

WignerCoefficientTable coefficient_table(const PotentialSpec& potential, const SpatialGrid& xgrid,
                                         const VelocityGrid& vgrid, const QuadratureConfig& quad,
                                         int threads) {
  const int reach = vgrid.size() - 1;
  std::vector<std::vector<double>> values(xgrid.size(), std::vector<double>(2 * reach + 1, 0.0));
  if (potential.is_zero_difference())
    return WignerCoefficientTable::from_values(vgrid, xgrid, std::move(values));

  const double r = vgrid.band_radius();
  const int panels = std::max(4, reach);
  auto build_node = [&](int j) {
    const double x = xgrid.node(j);
    const OddSamples a = sample_difference(potential, x, r, panels, quad.order);
    const OddSamples b = sample_difference(potential, x, r, panels, quad.check_order);
    const double residue = std::max(a.oddness_defect, b.oddness_defect) * r / kPi;
    if (residue > 1e-10)
      throw Error(ErrorCode::QuadratureDivergence,
                  "coefficient table: imaginary residue " + std::to_string(residue));
    auto& row = values[j];
    for (int n = 1; n <= reach; ++n) {
      const double freq = vgrid.dual_point(n);
      const double va = sine_moment(a, freq), vb = sine_moment(b, freq);
      if (std::abs(va - vb) > quad.self_check_tolerance * std::max(1.0, std::abs(vb)))
        throw Error(ErrorCode::QuadratureDivergence,
                    "coefficient table: self-check mismatch " + std::to_string(std::abs(va - vb)) +
                        " at n = " + std::to_string(n) + ", x = " + std::to_string(x));
      row[reach + n] = vb;
      row[reach - n] = -vb;
    }
  };

  const int workers = std::clamp(threads, 1, xgrid.size());
  if (workers == 1) {
    for (int j = 0; j < xgrid.size(); ++j) build_node(j);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int j = w; j < xgrid.size(); j += workers) build_node(j);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return WignerCoefficientTable::from_values(vgrid, xgrid, std::move(values));
}

namespace {

ToeplitzOperator toeplitz_from(std::span<const double> coeffs, double scale) {
  std::vector<double> c(coeffs.begin(), coeffs.end());
  for (double& v : c) v *= scale;
  return ToeplitzOperator(std::move(c));
}

}  // namespace

ToeplitzOperator assemble_A(const WignerCoefficientTable& table, int j) {
  if (j < 0 || j >= table.spatial_grid().size())
    throw Error(ErrorCode::IndexOverflow, "assemble_A: spatial index out of range");
  return toeplitz_from(table.node(j), kPi / table.velocity_grid().band_radius());
}

ToeplitzOperator assemble_A_at(const WignerCoefficientTable& table, double x) {
  const std::vector<double> c = table.interpolate(x);
  return toeplitz_from(c, kPi / table.velocity_grid().band_radius());
}

}  // namespace wigner
