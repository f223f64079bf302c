#include "wigner/cli.hpp"
#include "wigner/error.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  CLI::App app{"Stationary Wigner boundary value solver"};
  std::string command;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out;
  int threads = 0;

  app.add_option("command", command, "solve, converge, verify or coeffs")->required();
  app.add_option("-c,--config", config_path, "key = value configuration file");
  app.add_option("-s,--set", overrides, "key=value override, applied after the file");
  app.add_option("-o,--out", out, "output file prefix");
  app.add_option("-j,--threads", threads, "worker threads");
  CLI11_PARSE(app, argc, argv);

  wigner::RunConfig config = wigner::RunConfig::defaults();
  config.command = command;
  try {
    if (!config_path.empty()) config.read_file(config_path);
    for (const auto& o : overrides) config.set(o);
    if (!out.empty()) config.set("out", out);
    if (threads > 0) config.set("threads", std::to_string(threads));
  } catch (const wigner::Error& e) {
    std::cerr << e.name() << ": " << e.what() << '\n';
    return 1;
  }
  return wigner::run(config, std::cout, std::cerr);
}
