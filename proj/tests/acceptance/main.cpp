// SPDX-License-Identifier: Apache-2.0
//
// Full-size acceptance run: one PASS/FAIL line per numbered check.
// Usage: qshadow_acceptance [--quick] [--seed N] [--workers N] [--only K]
#include <cstdlib>
#include <iostream>
#include <string>

#include "qshadow/app/verification.hpp"

int main(int argc, char** argv) {
  qshadow::app::VerifyOptions options;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    auto next = [&]() -> std::string {
      if (i + 1 >= argc) {
        std::cerr << arg << " needs a value\n";
        std::exit(2);
      }
      return argv[++i];
    };
    if (arg == "--quick") {
      options.level = qshadow::app::VerifyLevel::Quick;
    } else if (arg == "--seed") {
      options.seed = std::stoull(next());
    } else if (arg == "--workers") {
      options.workers = static_cast<unsigned>(std::stoul(next()));
    } else if (arg == "--only") {
      only = std::stoi(next());
    } else {
      std::cerr << "unknown argument " << arg << '\n';
      return 2;
    }
  }

  bool all = true;
  auto report = [&](const qshadow::app::CheckResult& r) {
    all = all && r.passed;
    std::cout << qshadow::app::format_result_line(r) << std::endl;
  };
  if (only > 0) {
    report(qshadow::app::run_check(only, options));
  } else {
    qshadow::app::run_checks(options, report);
  }
  std::cout << (all ? "ALL PASS" : "SOME CHECKS FAILED") << std::endl;
  return all ? 0 : 1;
}
