#include "wigner/cli.hpp"
#include "wigner/error.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wigner;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "wigner_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

RunConfig command(const std::string& cmd, std::initializer_list<std::string> overrides) {
  RunConfig c = RunConfig::defaults();
  c.command = cmd;
  for (const auto& o : overrides) c.set(o);
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config files accept comments and later assignments win") {
  RunConfig c = RunConfig::defaults();
  std::istringstream in("# device\nl = 2   # length\n\nh=0.25\nh = 0.5\n");
  c.read(in);
  CHECK(c.values.at("l") == "2");
  CHECK(c.values.at("h") == "0.5");
  std::istringstream bad("just text\n");
  CHECK_THROWS_AS(c.read(bad), Error);
  CHECK_THROWS_AS(c.set("nonsense=1"), Error);
  CHECK_THROWS_AS(c.set("no equals sign"), Error);
  CHECK_THROWS_AS(c.read_file("/nonexistent/config.txt"), Error);
}

TEST_CASE("literals resolve to typed objects") {
  const auto sine = parse_potential("sine(0.1, 3)", 1.0, "default");
  CHECK(sine.sup_norm() == doctest::Approx(0.1));
  CHECK(parse_potential("barrier(1,0.5,0.2)", 1.0, "none").extension() == Extension::none);
  CHECK(parse_potential("raw_barrier(1,0.5,0.2)", 1.0, "").discontinuous());
  CHECK(parse_potential("constant(2)", 1.0, "natural").is_zero_difference());
  CHECK(parse_boundary("maxwellian(2)")(0.0) > 0.0);
  CHECK(parse_boundary("zero").is_zero());
  CHECK(parse_manufactured("none", 1.0, 0.125) == nullptr);
  CHECK(parse_manufactured("bandlimited", 1.0, 0.125)->transform_support() == doctest::Approx(2.0));
  CHECK(parse_manufactured("bandlimited(1.5, 8)", 1.0, 0.125)->transform_support() == 1.5);

  CHECK_THROWS_AS(parse_potential("sine(0.1)", 1.0, ""), Error);
  CHECK_THROWS_AS(parse_potential("sine(0.1,x)", 1.0, ""), Error);
  CHECK_THROWS_AS(parse_potential("wobble(1)", 1.0, ""), Error);
  CHECK_THROWS_AS(parse_potential("sine(0.1,3", 1.0, ""), Error);
  CHECK_THROWS_AS(parse_potential("constant(1)", 1.0, "sideways"), Error);
  CHECK_THROWS_AS(parse_boundary("gaussian(1,-1)"), Error);
  CHECK_THROWS_AS(parse_manufactured("bandlimited(1,2.5)", 1.0, 0.125), Error);
}

TEST_CASE("tabulated potentials are read from csv") {
  const fs::path p = scratch("table.csv");
  {
    std::ofstream out(p);
    out << "x,V\n0,0\n0.25,0.1\n0.5,0.3\n0.75,0.1\n1,0\n";
  }
  const auto V = parse_potential("tabulated(" + p.string() + ")", 1.0, "default");
  CHECK(V(0.5) == doctest::Approx(0.3));
  CHECK(V.extension() == Extension::constant);
  CHECK_THROWS_AS(parse_potential("tabulated(/nonexistent.csv)", 1.0, ""), Error);
}

TEST_CASE("resolve validates numbers") {
  CHECK_NOTHROW(resolve(command("solve", {})));
  CHECK(resolve(command("solve", {"N=12"})).half_width == 12);
  CHECK_FALSE(resolve(command("solve", {"N=auto"})).half_width.has_value());
  CHECK(resolve(command("converge", {})).manufactured != nullptr);
  for (const char* bad : {"h=0", "h=abc", "N=0", "N=2.5", "M_x=2", "threads=0", "h_list=", "quad.order=24",
                          "l=-1", "tail_target=0"})
    CHECK_THROWS_AS(resolve(command("solve", {bad})), Error);
  CHECK_THROWS_AS(resolve(command("dance", {})), Error);
}

TEST_CASE("exit codes and error lines") {
  std::ostringstream log, err;
  CHECK(run(command("solve", {"h=-1"}), log, err) == 1);
  CHECK(err.str().rfind("InvalidConfig: ", 0) == 0);
  std::ostringstream err2;
  const auto out = scratch("unstable").string();
  // A step far too coarse for the operator norm fails numerically.
  CHECK(run(command("solve", {"potential=sine(50,3)", "h=0.05", "M_x=4", "out=" + out}), log, err2) == 2);
  CHECK(err2.str().find(": ") != std::string::npos);
  CHECK(err2.str().rfind("InvalidConfig", 0) != 0);
}

TEST_CASE("solve and verify write echoed csv files") {
  const std::string prefix = scratch("run").string();
  std::ostringstream log, err;
  REQUIRE(run(command("verify", {"potential=sine(0.1,3)", "out=" + prefix}), log, err) == 0);
  for (const char* suffix : {"_solution.csv", "_diagnostics.csv", "_system.csv", "_bounds.csv"}) {
    const std::string text = slurp(prefix + suffix);
    CHECK(text.rfind("# command = verify\n", 0) == 0);
    CHECK(text.find("# potential = sine(0.1,3)\n") != std::string::npos);
  }
  CHECK(log.str().find("bounds all pass") != std::string::npos);
}

TEST_CASE("coeffs writes the table") {
  const std::string prefix = scratch("coef").string();
  std::ostringstream log, err;
  REQUIRE(run(command("coeffs", {"potential=sine(0.1,3)", "M_x=4", "out=" + prefix}), log, err) == 0);
  const std::string text = slurp(prefix + "_coefficients.csv");
  CHECK(text.rfind("# command = coeffs", 0) == 0);
}

}
