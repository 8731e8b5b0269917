#include <iostream>

#include <CLI11.hpp>

#include "crossing/error.hpp"
#include "run.hpp"

using namespace crossing;
using namespace crossing::kit;

int main(int argc, char** argv) {
  CLI::App app{"Transfer matrices at tangential crossings: predictions, solvers and asymptotic sweeps"};
  app.require_subcommand(1);

  std::string config;
  Overrides ov;
  int jobs = 0;
  for (const char* name : {"predict", "solve-model", "solve-schrodinger", "sweep", "verify"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "JSON run config")->required();
    sub->add_option("--out", ov.out, "CSV output path (overrides output.csv)");
    sub->add_option("--jobs", jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
    sub->add_option("--seed", ov.seed, "seed for randomized property corpora");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }
  if (jobs > 0) ov.jobs = jobs;
  const Mode mode = parse_mode(app.get_subcommands().front()->get_name());
  const int level = log_level_from_env();

  try {
    return run(mode, parse_config(config), ov, std::cout, std::cerr, level);
  } catch (const Error& e) {
    std::cerr << "crossing-kit: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "crossing-kit: " << e.what() << "\n";
    return kNumericalFailure;
  }
}
