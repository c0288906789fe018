// SPDX-License-Identifier: Apache-2.0
//
// The numbered acceptance checks. Each check is deterministic for a given
// seed; the quick level shrinks sample counts so the whole suite finishes
// in well under a minute.
#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "qshadow/app/json_io.hpp"

namespace qshadow::app {

enum class VerifyLevel { Quick, Full };
VerifyLevel parse_verify_level(const std::string& name);
std::string to_string(VerifyLevel level);

struct CheckResult {
  std::string id;     ///< "AC-1" .. "AC-10"
  std::string title;
  bool passed = false;
  std::string detail;  ///< one-line summary of the deciding numbers
  double seconds = 0.0;
  double budget_seconds = 0.0;
  json metrics = json::object();
};

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Full;
  std::uint64_t seed = 20240601;
  unsigned workers = 1;
};

inline constexpr int kCheckCount = 10;

/// Runs check `index` (1-based).
CheckResult run_check(int index, const VerifyOptions& options);
/// Runs every check in order; `on_result` sees each result as it lands.
std::vector<CheckResult> run_checks(const VerifyOptions& options,
                                    const std::function<void(const CheckResult&)>& on_result = {});

/// "PASS AC-3  <title>  (<seconds> s)  <detail>"
std::string format_result_line(const CheckResult& r);
json results_to_json(const std::vector<CheckResult>& results);

}  // namespace qshadow::app
