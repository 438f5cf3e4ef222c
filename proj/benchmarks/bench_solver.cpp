#include <benchmark/benchmark.h>

#include "ntcc/fd/constraints.hpp"
#include "ntcc/search/search.hpp"

namespace {

using namespace ntcc;

fd::Space queens(int n) {
  fd::Space s;
  std::vector<fd::VarId> q;
  for (int i = 0; i < n; ++i) q.push_back(s.new_int_var(0, n - 1));
  fd::distinct(s, q);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      fd::linear(s, {{1, q[i]}, {-1, q[j]}}, fd::Rel::Ne, i - j);
      fd::linear(s, {{1, q[i]}, {-1, q[j]}}, fd::Rel::Ne, j - i);
    }
  search::branch(s, q, fd::VarSelect::SmallestDomain);
  return s;
}

void BM_QueensFirst(benchmark::State& state) {
  const auto root = queens(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    search::DepthFirstSearch dfs(root);
    benchmark::DoNotOptimize(dfs.next());
  }
}
BENCHMARK(BM_QueensFirst)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_QueensAll(benchmark::State& state) {
  const auto root = queens(static_cast<int>(state.range(0)));
  std::size_t n = 0;
  for (auto _ : state) n = search::all_solutions(root).size();
  state.counters["solutions"] = static_cast<double>(n);
}
BENCHMARK(BM_QueensAll)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
