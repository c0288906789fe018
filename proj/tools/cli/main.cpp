// SPDX-License-Identifier: Apache-2.0
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qshadow/app/commands.hpp"
#include "qshadow/qshadow.hpp"

namespace app = qshadow::app;

int main(int argc, char** argv) {
  CLI::App cli{"qshadow: classical shadows with auxiliary-state ensembles"};
  cli.set_version_flag("--version", std::string(qshadow::kVersion));
  cli.require_subcommand(1);
  cli.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::string out_dir = ".";
  std::string level = "quick";

  cli.add_option("--seed", seed, "Seed overriding the config");
  cli.add_option("--workers", workers, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
  cli.add_option("--out", out_dir, "Output directory");

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Experiment config (JSON)")->required();
  };
  auto* estimate = cli.add_subcommand("estimate", "Median-of-means estimate of Tr(Oρ)");
  add_config(estimate);
  auto* verify = cli.add_subcommand("verify", "Run the acceptance checks");
  verify->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  auto* moments = cli.add_subcommand("moments", "Design distances and conversion bounds");
  add_config(moments);
  auto* distinguish = cli.add_subcommand("distinguish", "Run the expectation/variance test");
  add_config(distinguish);
  auto* sweep = cli.add_subcommand("sweep", "Estimator failure rates over a parameter grid");
  add_config(sweep);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return app::kExitConfig;
  }

  app::CommandOptions options;
  options.out_dir = out_dir;
  options.seed = seed;
  options.workers = workers;
  options.log = &std::cout;

  return app::run_guarded(
      [&]() -> int {
        if (verify->parsed()) return app::cmd_verify(app::parse_verify_level(level), options).exit_code;
        const auto config = app::load_config(config_path);
        if (estimate->parsed()) return app::cmd_estimate(config, options).exit_code;
        if (moments->parsed()) return app::cmd_moments(config, options).exit_code;
        if (distinguish->parsed()) return app::cmd_distinguish(config, options).exit_code;
        return app::cmd_sweep(config, options).exit_code;
      },
      std::cerr);
}
