#include <benchmark/benchmark.h>

#include "roeflow/roeflow.hpp"

using namespace roeflow;

namespace {

void BM_JacobiEigensystem(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const auto space = make_space(cycle_space(n));
  const auto h = random_hermitian_banded(space, static_cast<double>(n), rng);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_JacobiEigensystem)->RangeMultiplier(2)->Range(8, 128)->Complexity(benchmark::oNCubed);

void BM_OperatorNorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  const auto a = random_complex(make_space(path_space(n)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(operator_norm(a));
}
BENCHMARK(BM_OperatorNorm)->RangeMultiplier(2)->Range(8, 128);

void BM_DiscontinuitySweep(benchmark::State& state) {
  const auto blocks = static_cast<std::size_t>(state.range(0));
  const auto fam = make_regular_family(blocks, 3, {8}, 3);
  std::vector<double> times(33);
  for (std::size_t j = 0; j < times.size(); ++j) times[j] = -1.0 + 2.0 * j / 32.0;
  for (auto _ : state) benchmark::DoNotOptimize(discontinuity_sweep(fam, times));
}
BENCHMARK(BM_DiscontinuitySweep)->Arg(2)->Arg(4)->Arg(8);

}  // namespace
