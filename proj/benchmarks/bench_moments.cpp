// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "qshadow/moments.hpp"

namespace {

using namespace qshadow;

void BM_HaarMoment(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int t = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(haar_moment(n, t));
}
BENCHMARK(BM_HaarMoment)->Args({1, 3})->Args({2, 2})->Args({2, 3})->Args({3, 3})->Unit(benchmark::kMillisecond);

void BM_StabilizerMoment(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto ens = stabilizer_ensemble(n);
  for (auto _ : state) benchmark::DoNotOptimize(ensemble_moment(*ens, 3));
}
BENCHMARK(BM_StabilizerMoment)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

void BM_ConversionReport(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int t = static_cast<int>(state.range(1));
  const auto m = ensemble_moment(*adversarial_mixture(0.1, PureState::basis(n, 0)), t);
  for (auto _ : state) benchmark::DoNotOptimize(conversion_report(m));
}
BENCHMARK(BM_ConversionReport)->Args({1, 3})->Args({2, 2})->Args({2, 3})->Unit(benchmark::kMillisecond);

}  // namespace
