#include "wigner/cli.hpp"

#include "wigner/csv.hpp"
#include "wigner/error.hpp"
#include "wigner/solver.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace wigner {

namespace {

const std::vector<std::string> kCommands{"solve", "converge", "verify", "coeffs"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::InvalidConfig, message);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(value))
    invalid(key + ": expected a number, got '" + text + "'");
  return value;
}

int parse_int(const std::string& key, const std::string& text) {
  const double value = parse_double(key, text);
  if (value != std::floor(value) || std::abs(value) > 1e9)
    invalid(key + ": expected an integer, got '" + text + "'");
  return static_cast<int>(value);
}

// "name(a,b,...)" or "name".
struct Literal {
  std::string name;
  std::vector<std::string> args;
};

Literal parse_literal(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  Literal lit;
  const auto open = t.find('(');
  if (open == std::string::npos) {
    lit.name = t;
    return lit;
  }
  if (t.back() != ')') invalid(key + ": unbalanced parentheses in '" + text + "'");
  lit.name = trim(t.substr(0, open));
  const std::string inner = t.substr(open + 1, t.size() - open - 2);
  if (trim(inner).empty()) return lit;
  std::stringstream ss(inner);
  std::string part;
  while (std::getline(ss, part, ',')) lit.args.push_back(trim(part));
  return lit;
}

std::vector<double> numeric_args(const std::string& key, const Literal& lit, std::size_t min_count,
                                 std::size_t max_count) {
  if (lit.args.size() < min_count || lit.args.size() > max_count)
    invalid(key + ": " + lit.name + " takes " + std::to_string(min_count) +
            (max_count != min_count ? "-" + std::to_string(max_count) : "") + " arguments");
  std::vector<double> out;
  for (const auto& a : lit.args) out.push_back(parse_double(key, a));
  return out;
}

double positive(const std::string& key, double value) {
  if (!(value > 0.0)) invalid(key + " must be positive");
  return value;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (trim(part).empty()) continue;
    out.push_back(positive(key, parse_double(key, part)));
  }
  if (out.empty()) invalid(key + " must list at least one value");
  return out;
}

std::optional<int> parse_auto_int(const std::string& key, const std::string& text, int minimum) {
  if (trim(text) == "auto") return std::nullopt;
  const int value = parse_int(key, text);
  if (value < minimum) invalid(key + " must be at least " + std::to_string(minimum) + " or auto");
  return value;
}

// Two numeric columns x, V; non-numeric lines (headers, comments) are skipped.
std::pair<std::vector<double>, std::vector<double>> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("potential: cannot open table '" + path + "'");
  std::vector<double> x, v;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double a, b;
    if (ss >> a >> b) {
      x.push_back(a);
      v.push_back(b);
    }
  }
  return {x, v};
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

void write_header(std::ostream& out, const RunConfig& config) { csv::comment(out, config.echo()); }

VelocityGrid velocity_grid(const ResolvedConfig& r, double h) {
  return VelocityGrid(h, r.resolved_half_width(h));
}

StudyConfig study_config(const ResolvedConfig& r) {
  StudyConfig s;
  s.v_cut = r.v_cut;
  s.tail_target = r.tail_target;
  s.half_width = r.half_width;
  s.steps = r.steps;
  s.min_steps = r.min_steps;
  s.alpha = r.alpha;
  s.quad = r.quad;
  s.solver = r.solver;
  s.threads = r.threads;
  return s;
}

SemiDiscreteSystem system_for(const ResolvedConfig& r) {
  int n = r.resolved_half_width(r.h);
  if (r.manufactured && !r.half_width)
    n = study_half_width(*r.manufactured, r.h, std::max(r.v_cut, r.manufactured->velocity_extent()),
                         r.tail_target, 512, r.quad);
  const VelocityGrid vgrid(r.h, n);
  const SpatialGrid xgrid(r.length, r.resolved_steps(r.h));
  if (r.manufactured)
    return build_manufactured_system(r.potential, *r.manufactured, vgrid, xgrid, r.quad, r.threads);
  return build_system(r.potential, r.boundary, vgrid, xgrid, r.quad, r.threads);
}

void report_warnings(std::ostream& log, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) log << "warning: " << w << '\n';
}

int execute(const RunConfig& config, const ResolvedConfig& r, std::ostream& log) {
  const std::string& prefix = r.out;
  if (r.command == "coeffs") {
    const VelocityGrid vgrid = velocity_grid(r, r.h);
    const SpatialGrid xgrid(r.length, r.resolved_steps(r.h));
    const WignerCoefficientTable table =
        coefficient_table(r.potential, xgrid, vgrid, r.quad, r.threads);
    auto out = open_output(prefix + "_coefficients.csv");
    write_header(out, config);
    table.write_csv(out);
    log << "wrote " << prefix << "_coefficients.csv\n";
    return 0;
  }
  if (r.command == "converge") {
    const ConvergenceReport report =
        convergence_study(r.potential, *r.manufactured, r.h_list, study_config(r));
    {
      auto out = open_output(prefix + "_convergence.csv");
      write_header(out, config);
      report.write_csv(out);
    }
    {
      auto out = open_output(prefix + "_fit.csv");
      write_header(out, config);
      report.write_fit_csv(out);
    }
    for (const auto& row : report.rows) report_warnings(log, row.diagnostics.warnings);
    const RateFit& fit = report.primary_fit();
    log << "wrote " << prefix << "_convergence.csv and " << prefix << "_fit.csv\n"
        << "monotone = " << (report.monotone() ? "yes" : "no")
        << ", beta_fit = " << fit.beta_fit << ", beta_predicted = " << fit.beta_predicted
        << ", r^2 = " << fit.r_squared << '\n';
    return 0;
  }

  const SemiDiscreteSystem system = system_for(r);
  const BvpResult result = solve_bvp(system, r.solver);
  report_warnings(log, result.diagnostics.warnings);
  {
    auto out = open_output(prefix + "_solution.csv");
    write_header(out, config);
    result.field.write_csv(out);
  }
  {
    auto out = open_output(prefix + "_diagnostics.csv");
    write_header(out, config);
    write_diagnostics_csv(out, result.diagnostics);
  }
  {
    auto out = open_output(prefix + "_system.csv");
    write_header(out, config);
    write_system_csv(out, system);
  }
  log << "wrote " << prefix << "_solution.csv, " << prefix << "_diagnostics.csv and " << prefix
      << "_system.csv\n";
  if (r.command == "verify") {
    const BoundReport bounds = verify_bounds(system, result);
    auto out = open_output(prefix + "_bounds.csv");
    write_header(out, config);
    bounds.write_csv(out);
    log << "wrote " << prefix << "_bounds.csv\n";
    for (const auto& c : bounds.checks)
      if (!c.pass) log << "bound violated: " << c.name << '\n';
    log << "bounds " << (bounds.all_pass() ? "all pass" : "have failures") << '\n';
  }
  return 0;
}

}  // namespace

RunConfig RunConfig::defaults() {
  RunConfig c;
  const QuadratureConfig q;
  const SolverConfig s;
  auto num = [](double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
  };
  c.values = {
      {"potential", "constant(0)"},
      {"extension", "default"},
      {"boundary", "gaussian(1,1)"},
      {"manufactured", "none"},
      {"l", "1"},
      {"h", "0.125"},
      {"h_list", "0.25,0.125,0.0625"},
      {"N", "auto"},
      {"M_x", "auto"},
      {"M_min", "64"},
      {"v_cut", "8"},
      {"alpha", "4"},
      {"tail_target", "1e-12"},
      {"out", "wigner"},
      {"threads", "1"},
      {"quad.order", std::to_string(q.order)},
      {"quad.check_order", std::to_string(q.check_order)},
      {"quad.velocity_window", num(q.velocity_window)},
      {"quad.velocity_panel", num(q.velocity_panel)},
      {"quad.parseval_window", num(q.parseval_window)},
      {"quad.parseval_tolerance", num(q.parseval_tolerance)},
      {"quad.self_check_tolerance", num(q.self_check_tolerance)},
      {"solver.step_tolerance", num(s.step_tolerance)},
      {"solver.round_trip_tolerance", num(s.round_trip_tolerance)},
      {"solver.solve_tolerance", num(s.solve_tolerance)},
  };
  return c;
}

void RunConfig::read(std::istream& in) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      invalid("config line " + std::to_string(number) + ": expected key = value");
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void RunConfig::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open config file '" + path + "'");
  read(in);
}

void RunConfig::set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) invalid("override '" + assignment + "' is not key=value");
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "command") {
    command = value;
    return;
  }
  if (values.empty()) values = defaults().values;
  if (!values.count(key)) invalid("unknown key '" + key + "'");
  values[key] = value;
}

std::string RunConfig::echo() const {
  std::ostringstream out;
  out << "command = " << command;
  const auto all = values.empty() ? defaults().values : values;
  for (const auto& [k, v] : all) out << '\n' << k << " = " << v;
  return out.str();
}

int ResolvedConfig::resolved_half_width(double h_value) const {
  return half_width.value_or(auto_half_width(h_value, v_cut));
}

int ResolvedConfig::resolved_steps(double h_value) const {
  return steps.value_or(auto_steps(length, potential.sup_norm(), h_value, min_steps));
}

PotentialSpec parse_potential(const std::string& text, double length, const std::string& extension) {
  std::optional<Extension> ext;
  if (extension == "natural") ext = Extension::natural;
  else if (extension == "constant") ext = Extension::constant;
  else if (extension == "none") ext = Extension::none;
  else if (extension != "default" && !extension.empty())
    invalid("extension must be natural, constant, none or default");

  const Literal lit = parse_literal("potential", text);
  if (lit.name == "constant") {
    const auto a = numeric_args("potential", lit, 1, 1);
    return PotentialSpec(ConstantPotential{a[0]}, length, ext);
  }
  if (lit.name == "sine") {
    const auto a = numeric_args("potential", lit, 2, 2);
    return PotentialSpec(SinePotential{a[0], a[1]}, length, ext);
  }
  if (lit.name == "barrier") {
    const auto a = numeric_args("potential", lit, 3, 4);
    positive("barrier width", a[2]);
    const double smoothing = a.size() == 4 ? a[3] : length / 50.0;
    if (smoothing < 0.0) invalid("barrier smoothing must be nonnegative");
    return PotentialSpec(BarrierPotential{a[0], a[1], a[2], smoothing}, length, ext);
  }
  if (lit.name == "raw_barrier") {
    const auto a = numeric_args("potential", lit, 3, 3);
    positive("barrier width", a[2]);
    return PotentialSpec(BarrierPotential{a[0], a[1], a[2], 0.0}, length, ext);
  }
  if (lit.name == "tabulated") {
    if (lit.args.size() != 1) invalid("potential: tabulated takes one file path");
    auto [x, v] = read_table(lit.args[0]);
    return PotentialSpec(TabulatedPotential{std::move(x), std::move(v)}, length,
                         ext.value_or(Extension::constant));
  }
  invalid("potential: unknown variant '" + lit.name + "'");
}

BoundaryProfile parse_boundary(const std::string& text) {
  const Literal lit = parse_literal("boundary", text);
  if (lit.name == "gaussian") {
    const auto a = numeric_args("boundary", lit, 2, 2);
    return BoundaryProfile::gaussian(a[0], positive("boundary width", a[1]));
  }
  if (lit.name == "maxwellian") {
    const auto a = numeric_args("boundary", lit, 1, 1);
    return BoundaryProfile::maxwellian(positive("boundary temperature", a[0]));
  }
  if (lit.name == "zero") {
    numeric_args("boundary", lit, 0, 0);
    return BoundaryProfile::zero();
  }
  invalid("boundary: unknown profile '" + lit.name + "'");
}

std::shared_ptr<const ManufacturedSolution> parse_manufactured(const std::string& text, double length,
                                                               double h) {
  const Literal lit = parse_literal("manufactured", text);
  if (lit.name == "none") return nullptr;
  if (lit.name == "gaussian") {
    numeric_args("manufactured", lit, 0, 0);
    return std::make_shared<GaussianProfile>(length);
  }
  if (lit.name == "bandlimited") {
    const auto a = numeric_args("manufactured", lit, 0, 2);
    const double y_max = a.empty() ? 0.25 / h : positive("bandlimited y_max", a[0]);
    int power = 16;
    if (a.size() == 2) {
      if (a[1] != std::floor(a[1]) || a[1] < 2) invalid("bandlimited power must be an integer >= 2");
      power = static_cast<int>(a[1]);
    }
    return std::make_shared<BandLimitedProfile>(length, y_max, power);
  }
  invalid("manufactured: unknown solution '" + lit.name + "'");
}

ResolvedConfig resolve(const RunConfig& config) {
  if (std::find(kCommands.begin(), kCommands.end(), config.command) == kCommands.end())
    invalid("command must be one of solve, converge, verify, coeffs (got '" + config.command + "')");
  const auto values = config.values.empty() ? RunConfig::defaults().values : config.values;
  auto get = [&](const std::string& k) -> const std::string& { return values.at(k); };

  ResolvedConfig r;
  r.command = config.command;
  r.length = positive("l", parse_double("l", get("l")));
  r.h = positive("h", parse_double("h", get("h")));
  r.h_list = parse_list("h_list", get("h_list"));
  r.half_width = parse_auto_int("N", get("N"), 1);
  r.steps = parse_auto_int("M_x", get("M_x"), 3);
  r.min_steps = parse_int("M_min", get("M_min"));
  if (r.min_steps < 3) invalid("M_min must be at least 3");
  r.v_cut = positive("v_cut", parse_double("v_cut", get("v_cut")));
  r.alpha = positive("alpha", parse_double("alpha", get("alpha")));
  r.tail_target = positive("tail_target", parse_double("tail_target", get("tail_target")));
  r.out = get("out");
  if (r.out.empty()) invalid("out must not be empty");
  r.threads = parse_int("threads", get("threads"));
  if (r.threads < 1) invalid("threads must be at least 1");

  r.quad.order = parse_int("quad.order", get("quad.order"));
  r.quad.check_order = parse_int("quad.check_order", get("quad.check_order"));
  if (r.quad.order < 2 || r.quad.check_order < 2 || r.quad.order == r.quad.check_order)
    invalid("quad.order and quad.check_order must be distinct and at least 2");
  r.quad.velocity_window = positive("quad.velocity_window", parse_double("quad.velocity_window", get("quad.velocity_window")));
  r.quad.velocity_panel = positive("quad.velocity_panel", parse_double("quad.velocity_panel", get("quad.velocity_panel")));
  r.quad.parseval_window = positive("quad.parseval_window", parse_double("quad.parseval_window", get("quad.parseval_window")));
  r.quad.parseval_tolerance = positive("quad.parseval_tolerance", parse_double("quad.parseval_tolerance", get("quad.parseval_tolerance")));
  r.quad.self_check_tolerance = positive("quad.self_check_tolerance", parse_double("quad.self_check_tolerance", get("quad.self_check_tolerance")));
  r.solver.step_tolerance = positive("solver.step_tolerance", parse_double("solver.step_tolerance", get("solver.step_tolerance")));
  r.solver.round_trip_tolerance = positive("solver.round_trip_tolerance", parse_double("solver.round_trip_tolerance", get("solver.round_trip_tolerance")));
  r.solver.solve_tolerance = positive("solver.solve_tolerance", parse_double("solver.solve_tolerance", get("solver.solve_tolerance")));

  r.potential = parse_potential(get("potential"), r.length, get("extension"));
  r.boundary = parse_boundary(get("boundary"));
  const double h_ref = r.command == "converge" ? *std::max_element(r.h_list.begin(), r.h_list.end()) : r.h;
  r.manufactured = parse_manufactured(get("manufactured"), r.length, h_ref);
  if (r.command == "converge" && !r.manufactured) r.manufactured = std::make_shared<GaussianProfile>(r.length);
  return r;
}

int run(const RunConfig& config, std::ostream& log, std::ostream& err) {
  ResolvedConfig resolved;
  try {
    resolved = resolve(config);
  } catch (const Error& e) {
    err << e.name() << ": " << e.what() << '\n';
    return 1;
  }
  try {
    return execute(config, resolved, log);
  } catch (const Error& e) {
    err << e.name() << ": " << e.what() << '\n';
    return e.code() == ErrorCode::InvalidConfig ? 1 : 2;
  } catch (const std::exception& e) {
    err << "IOError: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace wigner
