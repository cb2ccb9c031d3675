#include <benchmark/benchmark.h>

#include "roeflow/roeflow.hpp"

using namespace roeflow;

namespace {

void BM_QuasiLocalityExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  const auto a = random_complex(make_space(path_space(n)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(ql_value(a, 1.0, QLMode::exact));
}
BENCHMARK(BM_QuasiLocalityExact)->DenseRange(6, 14, 2);

void BM_QuasiLocalityLower(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  const auto a = random_complex(make_space(path_space(n)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(ql_value(a, 1.0, QLMode::lower));
}
BENCHMARK(BM_QuasiLocalityLower)->DenseRange(6, 14, 2);

void BM_BruteSignAverage(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(5);
  const auto a = random_complex(make_space(path_space(n)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(sign_average(a));
}
BENCHMARK(BM_BruteSignAverage)->DenseRange(4, 12, 2);

void BM_CoarsenessExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(6);
  const auto space = make_space(cycle_space(n));
  const auto h = random_hermitian_banded(space, 1.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(coarseness_modulus(h, 1.0, CoarsenessMode::exact));
}
BENCHMARK(BM_CoarsenessExact)->DenseRange(4, 8, 2);

void BM_CoarsenessHeuristic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(6);
  const auto space = make_space(cycle_space(n));
  const auto h = random_hermitian_banded(space, 1.0, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(coarseness_modulus(h, 1.0, CoarsenessMode::heuristic));
  }
}
BENCHMARK(BM_CoarsenessHeuristic)->DenseRange(4, 16, 4);

}  // namespace
