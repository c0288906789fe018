// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "qshadow/shadows.hpp"

namespace {

using namespace qshadow;

EnsemblePtr pick(int which, int n) {
  switch (which) {
    case 0: return haar_ensemble(n);
    case 1: return stabilizer_ensemble(n);
    default: return adversarial_mixture(0.1, PureState::basis(n, 0));
  }
}

// One full shot: draw ζ, prepare ρ, simulate the circuit, evaluate the estimate.
void BM_Shot(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto ens = pick(static_cast<int>(state.range(1)), n);
  Stream rng(1);
  const auto source = StateSource::mixed(random_density(n, 2, rng));
  const auto o = Observable::gue(n, rng);
  ShotWorkspace work(n);
  for (auto _ : state) {
    const Snapshot snap = generate_snapshot(source, *ens, rng, work);
    benchmark::DoNotOptimize(shadow_estimate(o, work.zeta(), snap.mask, work.scratch()));
  }
  state.SetItemsProcessed(state.iterations());
  state.SetLabel(ens->name());
}
BENCHMARK(BM_Shot)->ArgsProduct({{1, 2, 4, 6}, {0, 2}});
BENCHMARK(BM_Shot)->ArgsProduct({{1, 2, 3}, {1}});

void BM_EstimateObservable(benchmark::State& state) {
  const int n = 2;
  const auto ens = haar_ensemble(n);
  const auto source = StateSource::pure(PureState::basis(n, 0));
  const auto o = Observable::pauli("ZZ");
  EstimatorConfig cfg = plan(0.5, 0.1, BoundKind::Exact, 0.0, o);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_observable(source, *ens, o, cfg, RunOptions{seed++, 1, false}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.total_shots()));
}
BENCHMARK(BM_EstimateObservable)->Unit(benchmark::kMillisecond);

void BM_OutcomeDistribution(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Stream rng(2);
  const auto rho = random_density(n, 2, rng);
  const auto zeta = haar_sample(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(outcome_distribution(rho, zeta));
}
BENCHMARK(BM_OutcomeDistribution)->DenseRange(1, 5);

}  // namespace
