// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "qshadow/linalg.hpp"
#include "qshadow/rng.hpp"

namespace {

qshadow::CMatrix random_hermitian(std::size_t dim, std::uint64_t seed) {
  qshadow::Stream rng(seed);
  qshadow::CMatrix g(dim, dim);
  for (auto& a : g.entries()) a = rng.complex_normal();
  qshadow::CMatrix h = g + g.adjoint();
  h *= 0.5;
  return h;
}

void BM_HermitianEig(benchmark::State& state) {
  const auto m = random_hermitian(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(qshadow::hermitian_eig(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HermitianEig)->RangeMultiplier(4)->Range(4, 256)->Complexity(benchmark::oNCubed);

void BM_HermitianEigenvalues(benchmark::State& state) {
  const auto m = random_hermitian(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(qshadow::hermitian_eigenvalues(m));
}
BENCHMARK(BM_HermitianEigenvalues)->RangeMultiplier(4)->Range(16, 256);

void BM_Kron(benchmark::State& state) {
  const auto a = random_hermitian(static_cast<std::size_t>(state.range(0)), 3);
  const auto b = random_hermitian(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(qshadow::kron(a, b));
}
BENCHMARK(BM_Kron)->RangeMultiplier(2)->Range(2, 32);

void BM_TraceNorm(benchmark::State& state) {
  const auto m = random_hermitian(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(qshadow::trace_norm(m));
}
BENCHMARK(BM_TraceNorm)->RangeMultiplier(4)->Range(16, 256);

}  // namespace
