// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include "qshadow/app/config.hpp"
#include "qshadow/app/json_io.hpp"
#include "qshadow/app/verification.hpp"

namespace qshadow::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDimension = 3;

struct CommandOptions {
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;  ///< overrides the config seed
  unsigned workers = 1;
  std::ostream* log = nullptr;         ///< human-readable progress, optional
};

struct CommandResult {
  int exit_code = kExitOk;
  json report;
  std::filesystem::path report_path;
};

/// Runs the median-of-means estimator; writes the report JSON and, if the
/// config asks for it, a per-shot CSV (shot_id, ensemble_key, x, z, estimate).
CommandResult cmd_estimate(const ExperimentConfig& config, const CommandOptions& options);
/// Runs the acceptance checks and writes verify.json; exit 1 if any fails.
CommandResult cmd_verify(VerifyLevel level, const CommandOptions& options);
/// Moment distances and conversion flags for the configured ensemble and
/// number of copies.
CommandResult cmd_moments(const ExperimentConfig& config, const CommandOptions& options);
/// Sampled distinguisher run compared against the Haar value.
CommandResult cmd_distinguish(const ExperimentConfig& config, const CommandOptions& options);
/// Repeated estimator runs over the grid ε₀ × γ × δ; one CSV row per cell.
CommandResult cmd_sweep(const ExperimentConfig& config, const CommandOptions& options);

/// Runs `body`, mapping failures to the exit-status contract:
/// ConfigError and invalid values -> 2, dimension and size errors -> 3.
int run_guarded(const std::function<int()>& body, std::ostream& err);

/// Per-shot CSV text, preceded by a '#' provenance line.
std::string shots_csv(const EstimateReport& report, const std::string& config_hash);

}  // namespace qshadow::app
