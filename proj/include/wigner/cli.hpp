#pragma once

// Batch front end: flat key = value configuration, validation, and the four commands
// solve, converge, verify and coeffs.

#include "wigner/analysis.hpp"
#include "wigner/manufactured.hpp"
#include "wigner/potential.hpp"
#include "wigner/system.hpp"

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wigner {

/// Raw configuration: the command and every key with its textual value. Later assignments
/// win, so a file followed by overrides behaves as expected.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> values;

  /// Every recognised key with its default.
  static RunConfig defaults();

  /// Reads "key = value" lines; '#' starts a comment. Throws Error(InvalidConfig).
  void read(std::istream& in);
  void read_file(const std::string& path);
  /// Applies one "key=value" override. Throws Error(InvalidConfig) on unknown keys.
  void set(const std::string& assignment);
  void set(const std::string& key, const std::string& value);

  /// "key = value" lines in key order, prefixed by the command.
  std::string echo() const;
};

/// Typed view of a RunConfig after validation.
struct ResolvedConfig {
  std::string command;
  PotentialSpec potential = PotentialSpec::constant(0.0, 1.0);
  BoundaryProfile boundary = BoundaryProfile::zero();
  std::shared_ptr<const ManufacturedSolution> manufactured;
  double length = 1.0;
  double h = 0.125;
  std::vector<double> h_list;
  std::optional<int> half_width;
  std::optional<int> steps;
  int min_steps = 64;
  double v_cut = 8.0;
  double alpha = 4.0;
  double tail_target = 1e-12;
  QuadratureConfig quad;
  SolverConfig solver;
  std::string out = "wigner";
  int threads = 1;

  int resolved_half_width(double h_value) const;
  int resolved_steps(double h_value) const;
};

/// Parses potential, boundary and manufactured literals such as sine(0.1,3) or
/// gaussian(1,0.5). Throws Error(InvalidConfig).
ResolvedConfig resolve(const RunConfig& config);

PotentialSpec parse_potential(const std::string& text, double length,
                              const std::string& extension);
BoundaryProfile parse_boundary(const std::string& text);
std::shared_ptr<const ManufacturedSolution> parse_manufactured(const std::string& text, double length,
                                                               double h);

/// Runs the configured command, writing files under the output prefix and progress lines to
/// `log`. Returns 0 on success, 1 on validation errors and 2 on numerical failures; in both
/// failure cases a single "Code: message" line goes to `err`.
int run(const RunConfig& config, std::ostream& log, std::ostream& err);

}  // namespace wigner
