#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mutagame/cli.hpp"
#include "mutagame/errors.hpp"

namespace {

void add_run_options(CLI::App* cmd, mutagame::cli::RunOptions& options, std::vector<std::string>& sets) {
  cmd->add_option("--set", sets, "Override a scenario value, e.g. --set discount.delta=0.6")->take_all();
  cmd->add_option("--seed", options.seed, "Master seed");
  cmd->add_option("--replicas", options.replicas, "Replica count");
  cmd->add_option("--threads", options.threads, "Worker threads (0: MUTAGAME_THREADS or all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mutagame: repeated mining games under mutable protocol rules"};
  app.require_subcommand(1);

  std::string scenario;
  std::vector<std::string> sets;
  mutagame::cli::RunOptions options;
  mutagame::cli::SweepSpec sweep;
  std::string preset_name;
  std::string preset_out;

  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("scenario", scenario)->required();

  auto* run = app.add_subcommand("run", "Simulate a replica batch");
  run->add_option("scenario", scenario)->required();
  run->add_option("--out", options.output_dir, "Output directory")->capture_default_str();
  add_run_options(run, options, sets);

  auto* sweep_cmd = app.add_subcommand("sweep", "Run one batch per parameter value");
  sweep_cmd->add_option("scenario", scenario)->required();
  sweep_cmd->add_option("--param", sweep.parameter, "Dotted parameter path")->required();
  sweep_cmd->add_option("--values", sweep.values, "Comma-separated values")->required()->delimiter(',');
  sweep_cmd->add_option("--out", options.output_dir, "Output directory")->capture_default_str();
  add_run_options(sweep_cmd, options, sets);

  auto* analyze = app.add_subcommand("analyze", "Closed-form analysis of a scenario");
  analyze->add_option("scenario", scenario)->required();
  analyze->add_option("--set", sets, "Override a scenario value")->take_all();

  auto* preset = app.add_subcommand("preset", "Print or write a bundled scenario");
  preset->add_option("name", preset_name)->required();
  preset->add_option("--out", preset_out, "Destination file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    for (const auto& s : sets) options.overrides.push_back(mutagame::parse_override(s));
  } catch (const mutagame::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return mutagame::cli::kValidationFailure;
  }

  if (*validate) return mutagame::cli::cmd_validate(scenario, std::cout, std::cerr);
  if (*run) return mutagame::cli::cmd_run(scenario, options, std::cout, std::cerr);
  if (*sweep_cmd) return mutagame::cli::cmd_sweep(scenario, sweep, options, std::cout, std::cerr);
  if (*analyze) return mutagame::cli::cmd_analyze(scenario, options, std::cout, std::cerr);
  return mutagame::cli::cmd_preset(preset_name, preset_out, std::cout, std::cerr);
}
