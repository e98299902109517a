#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "artifact/harness/config.hpp"
#include "artifact/harness/scenarios.hpp"
#include "artifact/harness/table.hpp"
#include "artifact/harness/validate.hpp"

namespace {

using artifact::harness::Config;

struct CommonArgs {
  std::string config_path;
  std::string out;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  int threads = -1;
  bool seed_set = false, trials_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "config file (sectioned key=value)");
  cmd->add_option("--out", args.out, "output CSV path (default: stdout)");
  cmd->add_option("--seed", args.seed, "base seed override")
      ->each([&](const std::string&) { args.seed_set = true; });
  cmd->add_option("--trials", args.trials, "Monte Carlo trial count override")
      ->each([&](const std::string&) { args.trials_set = true; });
  cmd->add_option("--threads", args.threads, "worker thread count (0 = all cores)");
}

Config resolve(const CommonArgs& args) {
  Config cfg = args.config_path.empty() ? Config{}
                                        : artifact::harness::load_config(args.config_path);
  if (args.seed_set) cfg.base_seed = args.seed;
  if (args.trials_set) cfg.trials = args.trials;
  if (args.threads >= 0) cfg.threads = args.threads;
  if (!args.out.empty()) cfg.out = args.out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wireless-powered cognitive radio throughput simulator"};
  app.require_subcommand(1);

  CommonArgs run_args, opt_args, val_args;
  std::string scenario, variant;

  auto* run = app.add_subcommand("run", "run a figure scenario (fig2..fig8)");
  run->add_option("scenario", scenario, "scenario id")->required();
  add_common(run, run_args);

  auto* opt = app.add_subcommand("optimize", "optimize the P0 or P1 design");
  opt->add_option("variant", variant, "p0 or p1")
      ->required()
      ->check(CLI::IsMember({"p0", "p1"}));
  add_common(opt, opt_args);

  auto* val = app.add_subcommand("validate", "run the invariant suite");
  add_common(val, val_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      Config cfg = resolve(run_args);
      cfg.scenario = scenario;
      deliver(artifact::harness::run_scenario(cfg), cfg);
      return 0;
    }
    if (opt->parsed()) {
      Config cfg = resolve(opt_args);
      cfg.scenario = "optimize_" + variant;
      const auto v = variant == "p0" ? artifact::throughput::Variant::P0
                                     : artifact::throughput::Variant::P1;
      deliver(artifact::harness::compare_optimizers(cfg, v), cfg);
      return 0;
    }
    Config cfg = resolve(val_args);
    cfg.scenario = "validate";
    const auto checks = artifact::harness::run_validation(cfg.base_seed);
    deliver(artifact::harness::validation_table(checks), cfg);
    bool ok = true;
    for (const auto& c : checks) {
      if (!c.ok) std::cerr << "FAIL " << c.name << " (" << c.detail << ")\n";
      ok = ok && c.ok;
    }
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
