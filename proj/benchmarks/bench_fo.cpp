#include <benchmark/benchmark.h>

#include <random>

#include "ntcc/fo/factor_oracle.hpp"

namespace {

void BM_FoAdd(benchmark::State& state) {
  std::mt19937 rng(1);
  std::vector<int> word(static_cast<std::size_t>(state.range(0)));
  for (auto& c : word) c = static_cast<int>(rng() % 4);
  for (auto _ : state) {
    ntcc::fo::FactorOracle fo;
    for (int c : word) fo.add(c);
    benchmark::DoNotOptimize(fo.size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FoAdd)->RangeMultiplier(4)->Range(1 << 8, 1 << 16)->Complexity(benchmark::oN);

}  // namespace
