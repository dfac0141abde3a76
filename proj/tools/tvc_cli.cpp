#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tvc/scenario.hpp"

namespace {
constexpr const char* kVersion = "0.1.0";
}

int main(int argc, char** argv) {
  CLI::App app{"tvc: transversal symbol calculus workbench"};
  app.require_subcommand(1);

  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 1;
  std::string log_level = "info";
  app.add_option("--out", out_dir, "output directory override");
  app.add_option("--seed", seed, "RNG seed override")
      ->each([&](const std::string&) { seed_set = true; });
  app.add_option("--threads", threads, "worker threads for task dispatch");
  app.add_option("--log-level", log_level, "log level (error|warn|info|debug)");

  std::string run_path, validate_path;
  auto* run = app.add_subcommand("run", "run a scenario file");
  run->add_option("scenario", run_path, "scenario JSON path")->required();
  auto* val = app.add_subcommand("validate", "validate a scenario file");
  val->add_option("scenario", validate_path, "scenario JSON path")->required();
  auto* lm = app.add_subcommand("list-models", "list built-in models");
  auto* ver = app.add_subcommand("version", "print version");

  CLI11_PARSE(app, argc, argv);

  if (ver->parsed()) {
    std::cout << "tvc " << kVersion << "\n";
    return 0;
  }
  if (lm->parsed()) {
    std::cout << tvc::list_models();
    return 0;
  }
  if (val->parsed()) {
    try {
      std::ifstream f(validate_path);
      if (!f) {
        std::cerr << "error: cannot open " << validate_path << "\n";
        return 2;
      }
      std::stringstream ss;
      ss << f.rdbuf();
      tvc::validate_scenario_text(ss.str());
      std::cout << "ok\n";
      return 0;
    } catch (const std::exception& e) {
      std::cerr << "validation error: " << e.what() << "\n";
      return 2;
    }
  }
  if (run->parsed()) {
    tvc::ScenarioResult res = tvc::run_scenario(run_path, out_dir, seed,
                                                seed_set, threads, log_level);
    if (!res.message.empty()) std::cerr << res.message << "\n";
    for (const auto& a : res.artifacts) std::cout << a << "\n";
    return res.exit_code;
  }
  return 0;
}
