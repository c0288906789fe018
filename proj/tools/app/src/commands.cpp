// SPDX-License-Identifier: Apache-2.0
#include "qshadow/app/commands.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qshadow/qshadow.hpp"

namespace qshadow::app {

namespace {

std::uint64_t effective_seed(const ExperimentConfig& c, const CommandOptions& o) {
  return o.seed.value_or(c.seed);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string provenance_line(const std::string& config_hash, std::uint64_t seed) {
  return "# qshadow " + std::string(kVersion) + " config_hash=" + config_hash +
         " seed=" + std::to_string(seed) + "\n";
}

std::filesystem::path output_path(const CommandOptions& o, const std::string& configured,
                                  const char* fallback) {
  return o.out_dir / (configured.empty() ? std::string(fallback) : configured);
}

void log_line(const CommandOptions& o, const std::string& line) {
  if (o.log) *o.log << line << '\n';
}

// ε for the configured bound kind, measured from the three-copy moment when
// the config says "measured".
double resolve_epsilon(const ExperimentConfig& c, const Ensemble& ens) {
  if (c.epsilon) return *c.epsilon;
  switch (c.bound_kind) {
    case BoundKind::Exact:
      return 0.0;
    case BoundKind::Additive:
      return additive_epsilon(ensemble_moment(ens, 3));
    case BoundKind::Relative:
      return relative_epsilon(ensemble_moment(ens, 3));
    case BoundKind::Pseudo:
      break;
  }
  throw ConfigError("a pseudo-design bound needs an explicit epsilon");
}

EstimatorConfig estimator_config(const ExperimentConfig& c, double gamma, double delta,
                                 double epsilon, const Observable& o) {
  EstimatorConfig cfg = plan(gamma, delta, c.bound_kind, epsilon, o);
  if (c.shots) cfg.l = std::max<std::uint64_t>(1, (*c.shots + cfg.k - 1) / cfg.k);
  return cfg;
}

}  // namespace

std::string shots_csv(const EstimateReport& report, const std::string& config_hash) {
  std::ostringstream out;
  out << provenance_line(config_hash, report.seed);
  out << "shot_id,ensemble_key,x,z,estimate\n";
  for (const auto& s : report.shots) {
    out << s.shot_id << ',' << s.key << ',' << s.mask.x_string() << ',' << s.mask.z_string() << ','
        << num(s.estimate) << '\n';
  }
  return out.str();
}

CommandResult cmd_estimate(const ExperimentConfig& c, const CommandOptions& options) {
  const auto ens = c.ensemble.build(c.qubits);
  const Observable& o = c.require_observable();
  const auto source = c.source();
  const std::uint64_t seed = effective_seed(c, options);
  const double epsilon = resolve_epsilon(c, *ens);
  const EstimatorConfig cfg = estimator_config(c, c.gamma, c.delta, epsilon, o);
  const bool want_csv = !c.outputs.shots_csv.empty();
  log_line(options, "estimate: K=" + std::to_string(cfg.k) + " L=" + std::to_string(cfg.l) + " (" +
                        std::to_string(cfg.total_shots()) + " shots)");

  const auto rep = estimate_observable(source, *ens, o, cfg, RunOptions{seed, options.workers, want_csv});
  const double truth = o.expectation(source.density());

  CommandResult result;
  result.report = {{"command", "estimate"},
                   {"provenance", provenance(c.hash, seed)},
                   {"n", c.qubits},
                   {"ensemble", ens->name()},
                   {"bound_kind", std::string(to_string(cfg.kind))},
                   {"epsilon", cfg.epsilon},
                   {"gamma", cfg.gamma},
                   {"delta", cfg.delta},
                   {"k", rep.k},
                   {"l", rep.l},
                   {"total_shots", rep.total_shots},
                   {"estimate", rep.estimate},
                   {"true_value", truth},
                   {"abs_error", std::abs(rep.estimate - truth)},
                   {"within_gamma_plus_bias", std::abs(rep.estimate - truth) <= cfg.gamma + rep.bias_bound},
                   {"empirical_mean", rep.empirical_mean},
                   {"empirical_variance", rep.empirical_variance},
                   {"bias_bound", rep.bias_bound},
                   {"variance_bound", rep.variance_bound}};
  result.report_path = output_path(options, c.outputs.report, "estimate.json");
  if (want_csv) {
    const auto csv_path = options.out_dir / c.outputs.shots_csv;
    write_text_file(csv_path, shots_csv(rep, c.hash));
    result.report["shots_csv"] = c.outputs.shots_csv;
  }
  write_json_file(result.report_path, result.report);
  log_line(options, "estimate = " + num(rep.estimate) + " (true " + num(truth) + ")");
  return result;
}

CommandResult cmd_verify(VerifyLevel level, const CommandOptions& options) {
  VerifyOptions v;
  v.level = level;
  if (options.seed) v.seed = *options.seed;
  v.workers = options.workers;
  const auto results = run_checks(v, [&](const CheckResult& r) { log_line(options, format_result_line(r)); });
  const json settings = {{"level", to_string(level)}, {"seed", v.seed}};

  CommandResult result;
  result.report = results_to_json(results);
  result.report["command"] = "verify";
  result.report["level"] = to_string(level);
  result.report["provenance"] = provenance(content_hash(settings), v.seed);
  result.report_path = options.out_dir / "verify.json";
  write_json_file(result.report_path, result.report);
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;
  log_line(options, std::to_string(passed) + "/" + std::to_string(results.size()) + " checks passed");
  result.exit_code = passed == results.size() ? kExitOk : kExitCheckFailed;
  return result;
}

CommandResult cmd_moments(const ExperimentConfig& c, const CommandOptions& options) {
  const auto ens = c.ensemble.build(c.qubits);
  const std::uint64_t seed = effective_seed(c, options);
  CommandResult result;
  result.report = {{"command", "moments"},
                   {"provenance", provenance(c.hash, seed)},
                   {"n", c.qubits},
                   {"t", c.copies},
                   {"ensemble", ens->name()},
                   {"sym_dim", sym_dim(c.qubits, c.copies)}};
  if (c.moment_mode == MomentMode::Exact) {
    const auto rep = conversion_report(ensemble_moment(*ens, c.copies));
    result.report["moment"] = "exact";
    result.report["eps_add"] = rep.eps_add;
    result.report["eps_rel"] = rep.eps_rel;
    result.report["relative_to_additive"] = rep.relative_to_additive;
    result.report["additive_to_relative"] = rep.additive_to_relative;
    result.report["additive_to_relative_coarse"] = rep.additive_to_relative_coarse;
    result.report["bounds_ok"] = rep.bounds_ok();
    result.report["ratio"] = rep.eps_add > 0.0 ? json(rep.eps_rel / rep.eps_add) : json(nullptr);
  } else {
    const auto m = ensemble_moment(*ens, c.copies, MomentMode::MonteCarlo, c.moment_samples, Stream(seed));
    result.report["moment"] = "monte_carlo";
    result.report["samples"] = c.moment_samples;
    result.report["eps_add"] = additive_epsilon(m);
  }
  result.report_path = output_path(options, c.outputs.report, "moments.json");
  write_json_file(result.report_path, result.report);
  log_line(options, "eps_add = " + num(result.report["eps_add"].get<double>()));
  return result;
}

CommandResult cmd_distinguish(const ExperimentConfig& c, const CommandOptions& options) {
  const auto ens = c.ensemble.build(c.qubits);
  const Observable& o = c.require_observable();
  const std::uint64_t seed = effective_seed(c, options);
  const std::uint64_t shots = c.shots.value_or(100000);
  const auto rep = run_distinguisher(c.distinguisher, *ens, c.source(), o, shots,
                                     RunOptions{seed, options.workers, false});
  CommandResult result;
  result.report = {{"command", "distinguish"},
                   {"provenance", provenance(c.hash, seed)},
                   {"n", c.qubits},
                   {"ensemble", ens->name()},
                   {"kind", std::string(to_string(rep.kind))},
                   {"shots", rep.shots},
                   {"accepted", rep.accepted},
                   {"p_accept_ensemble", rep.p_accept_ensemble},
                   {"std_error", rep.std_error},
                   {"p_accept_ensemble_exact",
                    rep.p_accept_ensemble_exact ? json(*rep.p_accept_ensemble_exact) : json(nullptr)},
                   {"p_accept_haar", rep.p_accept_haar},
                   {"advantage", rep.advantage},
                   {"implied_bias_bound", rep.implied_bias_bound},
                   {"implied_variance_slack", rep.implied_variance_slack}};
  result.report_path = output_path(options, c.outputs.report, "distinguish.json");
  write_json_file(result.report_path, result.report);
  log_line(options, "p_accept = " + num(rep.p_accept_ensemble) + " vs Haar " + num(rep.p_accept_haar));
  return result;
}

CommandResult cmd_sweep(const ExperimentConfig& c, const CommandOptions& options) {
  const Observable& o = c.require_observable();
  const auto source = c.source();
  const double truth = o.expectation(source.density());
  const std::uint64_t seed = effective_seed(c, options);
  const auto eps0_list = c.sweep.epsilon0.empty() ? std::vector<double>{c.ensemble.epsilon0}
                                                  : c.sweep.epsilon0;
  const auto gammas = c.sweep.gamma.empty() ? std::vector<double>{c.gamma} : c.sweep.gamma;
  const auto deltas = c.sweep.delta.empty() ? std::vector<double>{c.delta} : c.sweep.delta;

  std::ostringstream csv;
  csv << provenance_line(c.hash, seed);
  csv << "epsilon0,gamma,delta,epsilon,k,l,runs,mean_estimate,true_value,bias_bound,failure_rate\n";
  json rows = json::array();
  const Stream root(seed);
  std::uint64_t cell = 0;
  for (double eps0 : eps0_list) {
    const EnsembleSpec spec = c.sweep.epsilon0.empty() ? c.ensemble : c.ensemble.with_epsilon0(eps0);
    const auto ens = spec.build(c.qubits);
    const double epsilon = resolve_epsilon(c, *ens);
    for (double gamma : gammas) {
      for (double delta : deltas) {
        const EstimatorConfig cfg = estimator_config(c, gamma, delta, epsilon, o);
        const Stream cell_root = root.child(cell++);
        std::uint64_t failures = 0;
        double sum = 0.0;
        for (std::uint64_t run = 0; run < c.sweep.runs; ++run) {
          const auto rep = estimate_observable(source, *ens, o, cfg,
                                               RunOptions{cell_root.child(run).next_u64(), options.workers, false});
          sum += rep.estimate;
          if (std::abs(rep.estimate - truth) > gamma + cfg.bias_bound) ++failures;
        }
        const double runs = static_cast<double>(c.sweep.runs);
        const double mean = sum / runs;
        const double rate = static_cast<double>(failures) / runs;
        csv << num(eps0) << ',' << num(gamma) << ',' << num(delta) << ',' << num(epsilon) << ','
            << cfg.k << ',' << cfg.l << ',' << c.sweep.runs << ',' << num(mean) << ',' << num(truth)
            << ',' << num(cfg.bias_bound) << ',' << num(rate) << '\n';
        rows.push_back({{"epsilon0", eps0}, {"gamma", gamma}, {"delta", delta}, {"epsilon", epsilon},
                        {"k", cfg.k}, {"l", cfg.l}, {"runs", c.sweep.runs}, {"mean_estimate", mean},
                        {"true_value", truth}, {"bias_bound", cfg.bias_bound}, {"failure_rate", rate}});
        log_line(options, "cell eps0=" + num(eps0) + " gamma=" + num(gamma) + " delta=" + num(delta) +
                              ": failure rate " + num(rate));
      }
    }
  }
  const auto csv_path = options.out_dir / (c.outputs.shots_csv.empty() ? "sweep.csv" : c.outputs.shots_csv);
  write_text_file(csv_path, csv.str());
  CommandResult result;
  result.report = {{"command", "sweep"},
                   {"provenance", provenance(c.hash, seed)},
                   {"csv", csv_path.filename().string()},
                   {"rows", rows}};
  result.report_path = output_path(options, c.outputs.report, "sweep.json");
  write_json_file(result.report_path, result.report);
  return result;
}

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::DimMismatch:
      case ErrorKind::SizeLimit:
      case ErrorKind::LengthMismatch:
        return kExitDimension;
      default:
        return kExitConfig;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace qshadow::app
