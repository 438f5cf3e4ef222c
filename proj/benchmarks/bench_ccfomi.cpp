#include <benchmark/benchmark.h>

#include "ntcc/models/ccfomi.hpp"

namespace {

// Whole runs of the improvisation model; reports the engine's own per-unit timing.
void BM_CcfomiUnit(benchmark::State& state) {
  const int units = 50;
  const auto cfg = ntcc::models::ccfomi_bench_config(static_cast<int>(state.range(0)), units, 0);
  double mean_us = 0;
  double scheduled = 0;
  for (auto _ : state) {
    const auto r = ntcc::models::ccfomi_run(cfg);
    mean_us = r.mean_elapsed_us;
    scheduled = r.mean_scheduled;
  }
  state.counters["us_per_unit"] = mean_us;
  state.counters["processes_per_unit"] = scheduled;
}
BENCHMARK(BM_CcfomiUnit)->Arg(220)->Arg(880)->Unit(benchmark::kMillisecond);

}  // namespace
