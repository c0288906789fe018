// SPDX-License-Identifier: Apache-2.0
#include "qshadow/app/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "qshadow/oracles/brute_force.hpp"
#include "qshadow/qshadow.hpp"

namespace qshadow::app {

namespace {

struct Sizes {
  int outcome_pairs;
  int moment_pairs;
  int channel_states;
  std::uint64_t variance_shots;
  std::uint64_t estimator_runs;
  std::uint64_t distinguisher_shots;
  std::uint64_t negative_control_shots;
  std::uint64_t mom_trials;
};

Sizes sizes_for(VerifyLevel level) {
  if (level == VerifyLevel::Full) return {20, 20, 10, 100000, 200, 100000, 100000, 500};
  return {5, 5, 3, 20000, 30, 20000, 20000, 150};
}

std::string fmt(const char* pattern, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

std::string g(double v) { return fmt("%.4g", v); }

// Binomial 3σ band around a target rate.
double binomial_band(double p, std::uint64_t trials) {
  return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

CheckResult start_check(const char* id, const char* title) {
  CheckResult r;
  r.id = id;
  r.title = title;
  return r;
}

struct Context {
  const VerifyOptions& options;
  Sizes sizes;
  Stream root;
};

CheckResult outcome_law(Context& ctx) {
  CheckResult r = start_check("AC-1", "outcome law matches the circuit unitary");
  r.budget_seconds = 10.0;
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    const CMatrix u = oracles::bell_circuit_unitary(n);
    Stream rng = ctx.root.child(static_cast<std::uint64_t>(n));
    double worst_n = 0.0;
    for (int i = 0; i < ctx.sizes.outcome_pairs; ++i) {
      const auto rho = random_density(n, 1 + static_cast<int>(rng.below(basis_dim(n))), rng);
      const auto zeta = haar_sample(n, rng);
      const auto fast = outcome_distribution(rho, zeta);
      const auto slow = oracles::circuit_outcome_table(u, rho, zeta);
      for (std::size_t k = 0; k < fast.size(); ++k) {
        worst_n = std::max(worst_n, std::abs(fast[k] - slow[k]));
      }
    }
    r.metrics["max_abs_error_n" + std::to_string(n)] = worst_n;
    worst = std::max(worst, worst_n);
  }
  r.passed = worst <= 1e-10;
  r.detail = "max |Δp| = " + g(worst) + " (limit 1e-10)";
  return r;
}

CMatrix random_complex(std::size_t dim, Stream& rng) {
  CMatrix m(dim, dim);
  for (auto& a : m.entries()) a = rng.complex_normal();
  return m;
}

CheckResult haar_second_moment(Context& ctx) {
  CheckResult r = start_check("AC-2", "Haar two-copy moment identity");
  r.budget_seconds = 5.0;
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const std::size_t d = basis_dim(n);
    const CMatrix h = haar_moment(n, 2).matrix;
    Stream rng = ctx.root.child(static_cast<std::uint64_t>(n));
    for (int i = 0; i < ctx.sizes.moment_pairs; ++i) {
      const CMatrix a = random_complex(d, rng);
      const CMatrix b = random_complex(d, rng);
      const CMatrix ab = kron(a, b);
      const CMatrix partial = partial_trace_second(h * ab, d, d);
      worst = std::max(worst, max_abs_diff(partial, oracles::haar_second_moment_partial_trace(a, b)));
      worst = std::max(worst, std::abs((h * ab).trace() - oracles::haar_second_moment_trace(a, b)));
    }
  }
  r.metrics["max_residual"] = worst;
  r.passed = worst <= 1e-9;
  r.detail = "max residual = " + g(worst) + " (limit 1e-9)";
  return r;
}

CheckResult exact_unbiasedness(Context& ctx) {
  CheckResult r = start_check("AC-3", "stabilizer snapshots reconstruct ρ exactly");
  r.budget_seconds = 30.0;
  const int n = 2;
  const std::size_t d = basis_dim(n);
  const auto ens = stabilizer_ensemble(n);
  Stream rng = ctx.root.child(0);
  double worst_channel = 0.0;
  double worst_snapshot = 0.0;
  for (int i = 0; i < ctx.sizes.channel_states; ++i) {
    const auto rho = random_density(n, 1 + static_cast<int>(rng.below(d)), rng);
    worst_channel = std::max(
        worst_channel, max_abs_diff(depolarizing_inverse(channel_apply(*ens, rho)), rho.matrix()));
    // E[ρ̂] summed outcome by outcome with ρ̂ formed as a matrix.
    CMatrix mean(d, d);
    for (const auto& e : *ens->support()) {
      const auto probs = outcome_distribution(rho, e.state);
      for (std::uint64_t x = 0; x < d; ++x) {
        for (std::uint64_t z = 0; z < d; ++z) {
          const double p = e.weight * probs[x * d + z];
          if (p == 0.0) continue;
          const auto v = apply_pauli(conjugate(e.state), PauliMask{n, x, z});
          CMatrix snap = v.projector() * Complex(static_cast<double>(d) + 1.0);
          snap -= CMatrix::identity(d);
          mean += snap * Complex(p);
        }
      }
    }
    worst_snapshot = std::max(worst_snapshot, max_abs_diff(mean, rho.matrix()));
  }
  r.metrics["max_channel_error"] = worst_channel;
  r.metrics["max_snapshot_mean_error"] = worst_snapshot;
  const double worst = std::max(worst_channel, worst_snapshot);
  r.passed = worst <= 1e-9;
  r.detail = "max |E[ρ̂] - ρ| = " + g(worst) + " (limit 1e-9)";
  return r;
}

CheckResult variance_bound(Context& ctx) {
  CheckResult r = start_check("AC-4", "snapshot variance within 3 Tr(O₀²)");
  r.budget_seconds = 120.0;
  bool ok = true;
  double worst_ratio = 0.0;
  json cases = json::array();
  for (int n = 2; n <= 3; ++n) {
    const auto ens = stabilizer_ensemble(n);
    Stream rng = ctx.root.child(static_cast<std::uint64_t>(n));
    const std::string zs(static_cast<std::size_t>(n), 'Z');
    std::string mixed_label = "X" + std::string(static_cast<std::size_t>(n - 1), 'Y');
    std::vector<std::pair<std::string, Observable>> observables{
        {"pauli " + zs, Observable::pauli(zs)},
        {"pauli " + mixed_label, Observable::pauli(mixed_label)},
        {"gue", Observable::gue(n, rng)},
        {"gue", Observable::gue(n, rng)},
        {"projector", Observable::random_projector(n, 1, rng)},
    };
    for (std::size_t i = 0; i < observables.size(); ++i) {
      const auto& [label, o] = observables[i];
      const auto source = StateSource::mixed(random_density(n, 2, rng));
      const RunOptions run{rng.next_u64(), ctx.options.workers, false};
      const auto stats = empirical_bias_variance(source, *ens, o, ctx.sizes.variance_shots, run);
      const double bound = 3.0 * o.traceless_sq();
      const bool pass = stats.variance <= bound + 3.0 * stats.variance_std_error;
      ok = ok && pass;
      worst_ratio = std::max(worst_ratio, stats.variance / bound);
      cases.push_back({{"n", n},
                       {"observable", label},
                       {"variance", stats.variance},
                       {"variance_std_error", stats.variance_std_error},
                       {"bound", bound},
                       {"passed", pass}});
    }
  }
  r.metrics["cases"] = cases;
  r.passed = ok;
  r.detail = "10 cases, worst Var/(3Tr O₀²) = " + g(worst_ratio);
  return r;
}

// Shared driver for the two end-to-end theorem checks.
struct EndToEnd {
  double epsilon0;
  double epsilon;
  double bias_bound;
  double failure_rate;
  double pooled_bias;
  double pooled_bias_se;
  std::uint64_t shots_per_run;
};

EndToEnd end_to_end(Context& ctx, double epsilon0, BoundKind kind, std::uint64_t stream_index) {
  const int n = 2;
  const double gamma = 0.15;
  const double delta = 0.1;
  const PureState psi = PureState::basis(n, 0);
  const auto ens = adversarial_mixture(epsilon0, psi);
  const Observable o(n, psi.projector());
  const auto rho = DensityMatrix::from_pure(psi);
  const auto source = StateSource::pure(psi);
  const double truth = o.expectation(rho);

  const MomentOperator m3 = ensemble_moment(*ens, 3);
  const double eps = kind == BoundKind::Relative ? relative_epsilon(m3) : additive_epsilon(m3);
  const EstimatorConfig cfg = plan(gamma, delta, kind, eps, o);

  const Stream runs_root = ctx.root.child(stream_index);
  std::uint64_t failures = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t run = 0; run < ctx.sizes.estimator_runs; ++run) {
    const RunOptions opts{runs_root.child(run).next_u64(), ctx.options.workers, false};
    const auto rep = estimate_observable(source, *ens, o, cfg, opts);
    if (std::abs(rep.estimate - truth) > gamma + cfg.bias_bound) ++failures;
    const double shots = static_cast<double>(rep.total_shots);
    sum += rep.empirical_mean * shots;
    sum_sq += (rep.empirical_variance + rep.empirical_mean * rep.empirical_mean) * shots;
  }
  const double total = static_cast<double>(ctx.sizes.estimator_runs * cfg.total_shots());
  const double mean = sum / total;
  const double var = std::max(sum_sq / total - mean * mean, 0.0);
  return {epsilon0,
          eps,
          cfg.bias_bound,
          static_cast<double>(failures) / static_cast<double>(ctx.sizes.estimator_runs),
          mean - truth,
          std::sqrt(var / total),
          cfg.total_shots()};
}

json end_to_end_json(const EndToEnd& e) {
  return {{"epsilon0", e.epsilon0},         {"epsilon", e.epsilon},
          {"bias_bound", e.bias_bound},     {"failure_rate", e.failure_rate},
          {"pooled_bias", e.pooled_bias},   {"pooled_bias_std_error", e.pooled_bias_se},
          {"shots_per_run", e.shots_per_run}};
}

CheckResult additive_end_to_end(Context& ctx) {
  CheckResult r = start_check("AC-5", "additive-design estimator guarantee");
  r.budget_seconds = 300.0;
  const double delta = 0.1;
  const double limit = delta + binomial_band(delta, ctx.sizes.estimator_runs);
  bool ok = true;
  std::string detail;
  json cases = json::array();
  std::uint64_t index = 0;
  for (double eps0 : {0.02, 0.1}) {
    const auto e = end_to_end(ctx, eps0, BoundKind::Additive, index++);
    ok = ok && e.failure_rate <= limit;
    cases.push_back(end_to_end_json(e));
    detail += "ε₀=" + g(eps0) + ": fail " + g(e.failure_rate) + "; ";
  }
  r.metrics["cases"] = cases;
  r.metrics["failure_limit"] = limit;
  r.passed = ok;
  r.detail = detail + "limit " + g(limit);
  return r;
}

CheckResult relative_end_to_end(Context& ctx) {
  CheckResult r = start_check("AC-6", "relative-design estimator guarantee");
  r.budget_seconds = 300.0;
  const double delta = 0.1;
  const double limit = delta + binomial_band(delta, ctx.sizes.estimator_runs);
  bool ok = true;
  std::string detail;
  json cases = json::array();
  std::uint64_t index = 0;
  for (double eps0 : {0.02, 0.1}) {
    const auto e = end_to_end(ctx, eps0, BoundKind::Relative, index++);
    const bool bias_ok = std::abs(e.pooled_bias) <= e.bias_bound + 3.0 * e.pooled_bias_se;
    ok = ok && bias_ok && e.failure_rate <= limit;
    json c = end_to_end_json(e);
    c["bias_within_bound"] = bias_ok;
    cases.push_back(c);
    detail += "ε₀=" + g(eps0) + ": bias " + g(e.pooled_bias) + " ≤ " + g(e.bias_bound) + ", fail " +
              g(e.failure_rate) + "; ";
  }
  r.metrics["cases"] = cases;
  r.metrics["failure_limit"] = limit;
  r.passed = ok;
  r.detail = detail + "limit " + g(limit);
  return r;
}

CheckResult conversions(Context& ctx) {
  CheckResult r = start_check("AC-7", "additive/relative conversion inequalities");
  r.budget_seconds = 60.0;
  Stream rng = ctx.root.child(0);
  int checked = 0;
  int violations = 0;
  for (int n = 1; n <= 2; ++n) {
    for (int t = 1; t <= 3; ++t) {
      for (int i = 0; i < 9; ++i) {
        const int count = 1 + static_cast<int>(rng.below(12));
        std::vector<WeightedState> elements;
        for (int k = 0; k < count; ++k) elements.push_back({haar_sample(n, rng), 0.05 + rng.uniform()});
        const auto rep = conversion_report(ensemble_moment(*finite_ensemble("random", elements), t));
        ++checked;
        if (!rep.bounds_ok()) ++violations;
      }
    }
  }
  double worst_ratio_error = 0.0;
  bool lower_bound_ok = true;
  int mixtures = 0;
  for (int n = 1; n <= 2; ++n) {
    for (int t = 1; t <= 3; ++t) {
      const auto ds = static_cast<double>(sym_dim(n, t));
      if (ds < 3.0) continue;
      for (double eps0 : {0.02, 0.1, 0.5}) {
        const auto rep =
            conversion_report(ensemble_moment(*adversarial_mixture(eps0, haar_sample(n, rng)), t));
        ++mixtures;
        lower_bound_ok = lower_bound_ok && rep.eps_rel >= ds * rep.eps_add / 3.0;
        worst_ratio_error = std::max(worst_ratio_error, std::abs(rep.eps_rel / rep.eps_add - ds / 2.0));
        if (!rep.bounds_ok()) ++violations;
      }
    }
  }
  r.metrics["random_ensembles"] = checked;
  r.metrics["mixtures"] = mixtures;
  r.metrics["violations"] = violations;
  r.metrics["max_ratio_error"] = worst_ratio_error;
  r.passed = checked >= 50 && violations == 0 && lower_bound_ok && worst_ratio_error <= 1e-9;
  r.detail = std::to_string(checked) + " random + " + std::to_string(mixtures) + " mixtures, " +
             std::to_string(violations) + " violations, ratio error " + g(worst_ratio_error);
  return r;
}

CheckResult distinguisher_equivalence(Context& ctx) {
  CheckResult r = start_check("AC-8", "distinguisher sampling, bias link and Haar value");
  r.budget_seconds = 120.0;
  const int n = 2;
  Stream rng = ctx.root.child(0);
  const std::uint64_t shots = ctx.sizes.distinguisher_shots;
  bool sampled_ok = true;
  double worst_z = 0.0;
  json sampled = json::array();
  {
    const auto rho = random_density(n, 2, rng);
    const auto o = Observable::gue(n, rng);
    const auto source = StateSource::mixed(rho);
    for (const auto& ens : {adversarial_mixture(0.1, haar_sample(n, rng)), haar_ensemble(n)}) {
      for (auto kind : {DistinguisherKind::Expectation, DistinguisherKind::Variance}) {
        const auto rep =
            run_distinguisher(kind, *ens, source, o, shots, RunOptions{rng.next_u64(), ctx.options.workers, false});
        const double z = std::abs(rep.p_accept_ensemble - *rep.p_accept_ensemble_exact) / rep.std_error;
        worst_z = std::max(worst_z, z);
        sampled_ok = sampled_ok && z <= 5.0;
        sampled.push_back({{"ensemble", ens->name()},
                           {"kind", std::string(to_string(kind))},
                           {"sampled", rep.p_accept_ensemble},
                           {"exact", *rep.p_accept_ensemble_exact},
                           {"z", z}});
      }
    }
  }

  bool bias_ok = true;
  json bias_cases = json::array();
  for (double eps0 : {0.02, 0.1, 0.5}) {
    const auto ens = adversarial_mixture(eps0, haar_sample(n, rng));
    const auto rho = random_density(n, 2, rng);
    const auto o = Observable::gue(n, rng);
    const auto haar = haar_ensemble(n);
    const double adv_e = std::abs(acceptance_prob(DistinguisherKind::Expectation, *ens, rho, o) -
                                  acceptance_prob(DistinguisherKind::Expectation, *haar, rho, o));
    const double adv_v = std::abs(acceptance_prob(DistinguisherKind::Variance, *ens, rho, o) -
                                  acceptance_prob(DistinguisherKind::Variance, *haar, rho, o));
    const auto bounds = advantage_to_bounds(adv_e, adv_v, o);
    const auto stats = empirical_bias_variance(StateSource::mixed(rho), *ens, o, shots,
                                               RunOptions{rng.next_u64(), ctx.options.workers, false});
    const bool pass = std::abs(stats.bias) <= bounds.bias_bound + 3.0 * stats.bias_std_error;
    bias_ok = bias_ok && pass;
    bias_cases.push_back({{"epsilon0", eps0},
                          {"advantage", bounds.epsilon},
                          {"bias", stats.bias},
                          {"bias_std_error", stats.bias_std_error},
                          {"bound", bounds.bias_bound},
                          {"passed", pass}});
  }

  const auto zero = PureState::basis(1, 0);
  const double haar_value = acceptance_prob(DistinguisherKind::Expectation, *haar_ensemble(1),
                                            DensityMatrix::maximally_mixed(1),
                                            Observable(1, zero.projector()));
  const bool haar_ok = std::abs(haar_value - 0.75) <= 1e-9;

  r.metrics["sampled"] = sampled;
  r.metrics["bias"] = bias_cases;
  r.metrics["haar_expectation_value"] = haar_value;
  r.passed = sampled_ok && bias_ok && haar_ok;
  r.detail = "worst |z| = " + g(worst_z) + ", bias cases " + (bias_ok ? "ok" : "FAIL") +
             ", Haar value " + fmt("%.12f", haar_value);
  return r;
}

CheckResult negative_control(Context& ctx) {
  CheckResult r = start_check("AC-9", "real auxiliary states cannot see Y");
  r.budget_seconds = 30.0;
  const double h = std::sqrt(0.5);
  const PureState i_state(1, {h, Complex(0.0, h)});
  const auto ens = real_haar_ensemble(1);
  const auto y = Observable::pauli("Y");
  const auto stats = empirical_bias_variance(StateSource::pure(i_state), *ens, y,
                                             ctx.sizes.negative_control_shots,
                                             RunOptions{ctx.root.child(0).next_u64(), ctx.options.workers, false});
  const CMatrix out = channel_apply(*ens, DensityMatrix::from_pure(i_state));
  const double y_component = std::abs((y.matrix() * out).trace());
  r.metrics["true_value"] = stats.true_value;
  r.metrics["estimator_mean"] = stats.mean;
  r.metrics["channel_y_component"] = y_component;
  r.passed = std::abs(stats.mean) <= 0.05 && y_component <= 1e-9;
  r.detail = "mean " + g(stats.mean) + " vs truth " + g(stats.true_value) + ", |Tr(Y Φ(ρ))| = " +
             g(y_component);
  return r;
}

CheckResult median_of_means_calibration(Context& ctx) {
  CheckResult r = start_check("AC-10", "median-of-means failure rate");
  r.budget_seconds = 60.0;
  // Lomax(shape 3, scale 3): mean 1.5, variance 6.75, infinite third moment.
  const double shape = 3.0;
  const double scale = 3.0;
  const double mean = scale / (shape - 1.0);
  const double variance = scale * scale * shape / ((shape - 1.0) * (shape - 1.0) * (shape - 2.0));
  const double delta = 0.05;
  const double gamma = 0.5;
  const std::uint64_t k = median_block_count(delta);
  const std::uint64_t l = median_block_length(gamma, variance);
  const std::uint64_t trials = ctx.sizes.mom_trials;
  std::vector<double> values(k * l);
  std::uint64_t failures = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Stream rng = ctx.root.child(t);
    for (auto& v : values) v = scale * (std::pow(1.0 - rng.uniform(), -1.0 / shape) - 1.0);
    if (std::abs(median_of_means(values, k, l) - mean) > gamma) ++failures;
  }
  const double rate = static_cast<double>(failures) / static_cast<double>(trials);
  const double limit = delta + binomial_band(delta, trials);
  r.metrics["k"] = k;
  r.metrics["l"] = l;
  r.metrics["trials"] = trials;
  r.metrics["failure_rate"] = rate;
  r.metrics["limit"] = limit;
  r.passed = rate <= limit;
  r.detail = "K=" + std::to_string(k) + " L=" + std::to_string(l) + ", failure " + g(rate) +
             " (limit " + g(limit) + ")";
  return r;
}

using CheckFn = CheckResult (*)(Context&);
constexpr CheckFn kChecks[kCheckCount] = {
    outcome_law,  haar_second_moment,        exact_unbiasedness, variance_bound,
    additive_end_to_end, relative_end_to_end, conversions,       distinguisher_equivalence,
    negative_control,    median_of_means_calibration,
};

}  // namespace

VerifyLevel parse_verify_level(const std::string& name) {
  if (name == "quick") return VerifyLevel::Quick;
  if (name == "full") return VerifyLevel::Full;
  throw ConfigError("level must be quick or full, got \"" + name + "\"");
}

std::string to_string(VerifyLevel level) { return level == VerifyLevel::Quick ? "quick" : "full"; }

CheckResult run_check(int index, const VerifyOptions& options) {
  if (index < 1 || index > kCheckCount) throw ConfigError("no check AC-" + std::to_string(index));
  Context ctx{options, sizes_for(options.level),
              Stream(options.seed).child(static_cast<std::uint64_t>(index))};
  const auto start = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = kChecks[index - 1](ctx);
  } catch (const std::exception& e) {
    r.id = "AC-" + std::to_string(index);
    r.title = "check raised an error";
    r.passed = false;
    r.detail = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  // Runtime budgets apply to the full-size runs.
  if (options.level == VerifyLevel::Full && r.budget_seconds > 0.0 && r.seconds > r.budget_seconds) {
    r.passed = false;
    r.detail += "; over the " + g(r.budget_seconds) + " s budget";
  }
  return r;
}

std::vector<CheckResult> run_checks(const VerifyOptions& options,
                                    const std::function<void(const CheckResult&)>& on_result) {
  std::vector<CheckResult> out;
  for (int i = 1; i <= kCheckCount; ++i) {
    out.push_back(run_check(i, options));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_result_line(const CheckResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%s %-6s %7.2f s  ", r.passed ? "PASS" : "FAIL", r.id.c_str(),
                r.seconds);
  return std::string(head) + r.title + ": " + r.detail;
}

json results_to_json(const std::vector<CheckResult>& results) {
  json checks = json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    checks.push_back({{"id", r.id},
                      {"title", r.title},
                      {"passed", r.passed},
                      {"detail", r.detail},
                      {"metrics", r.metrics}});
  }
  return {{"passed", all}, {"checks", checks}};
}

}  // namespace qshadow::app
