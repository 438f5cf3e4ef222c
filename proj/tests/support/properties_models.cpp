#include <algorithm>
#include <random>
#include <set>

#include "ntcc/fo/factor_oracle.hpp"
#include "ntcc/models/ccfomi.hpp"
#include "ntcc/models/graph_path.hpp"
#include "ntcc/models/knets.hpp"
#include "oracles.hpp"
#include "properties.hpp"

namespace props {

using namespace ntcc::models;

Result graph_path_vs_bfs(int graphs, unsigned seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution edge(0.15);
  int found = 0;
  for (int g = 0; g < graphs; ++g) {
    const int n = 2 + static_cast<int>(rng() % 11);
    GraphSpec spec;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && edge(rng)) spec.edges.emplace_back(i, j);
    spec.a = static_cast<int>(rng() % static_cast<unsigned>(n));
    spec.b = static_cast<int>(rng() % static_cast<unsigned>(n));
    const auto r = graph_path_run(spec);
    const bool reach = oracle::bfs_reachable(spec.edges, spec.a, spec.b);
    if (r.found != reach) return {false, "graph " + std::to_string(g) + ": found=" + std::to_string(r.found)};
    if (!r.found) continue;
    ++found;
    if (r.path.front() != spec.a || r.path.back() != spec.b) return {false, "graph " + std::to_string(g) + ": bad ends"};
    for (std::size_t k = 0; k + 1 < r.path.size(); ++k) {
      const std::pair<int, int> e{r.path[k], r.path[k + 1]};
      if (std::find(spec.edges.begin(), spec.edges.end(), e) == spec.edges.end())
        return {false, "graph " + std::to_string(g) + ": missing edge"};
    }
  }
  return {true, std::to_string(graphs) + " graphs, " + std::to_string(found) + " with paths, 0 mismatches"};
}

Result knets_vs_brute(int max_n, int max_k) {
  std::mt19937 rng(17);
  int problems = 0;
  for (int n = 2; n <= max_n; ++n) {
    for (int k = 0; k <= max_k; ++k) {
      KnetProblem p;
      for (int i = 0; i < n; ++i) p.pitches.push_back(static_cast<int>(rng() % 12));
      p.k = k;
      const auto sols = knets_solve(p);
      const auto brute = oracle::knets_brute(n, k);
      ++problems;
      if (sols.size() != brute.size())
        return {false, "n=" + std::to_string(n) + " K=" + std::to_string(k) + ": " + std::to_string(sols.size()) +
                           " vs " + std::to_string(brute.size())};
      for (std::size_t s = 0; s < sols.size(); ++s) {
        if (sols[s].matrix != brute[s]) return {false, "n=" + std::to_string(n) + " K=" + std::to_string(k) + ": order"};
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            const auto& label = sols[s].labels[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const int a = p.pitches[static_cast<std::size_t>(i)];
            const int b = p.pitches[static_cast<std::size_t>(j)];
            const int x = sols[s].matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const bool ok = x == 0   ? label == "--"
                            : x == 1 ? label[0] == 'T' && (a + std::stoi(label.substr(1))) % 12 == b
                                     : label[0] == 'I' && (a + b) % 12 == std::stoi(label.substr(1));
            if (!ok) return {false, "label " + label + " does not fit its pitches"};
          }
      }
    }
  }
  return {true, std::to_string(problems) + " problems match brute force"};
}

Result ccfomi_vs_fo(int scripts, unsigned seed) {
  std::mt19937 rng(seed);
  for (int t = 0; t < scripts; ++t) {
    const int notes = 1 + static_cast<int>(rng() % 8);
    const int alpha = 1 + static_cast<int>(rng() % 4);
    CcfomiConfig cfg;
    std::vector<int> played;
    while (static_cast<int>(played.size()) < notes) {
      if (rng() % 10 < 3) {
        cfg.script.emplace_back();
        continue;
      }
      played.push_back(60 + 2 * static_cast<int>(rng() % static_cast<unsigned>(alpha)));
      cfg.script.emplace_back(played.back());
    }
    cfg.n = 1 + static_cast<int>(rng() % static_cast<unsigned>(notes));
    cfg.q = (rng() % 100) / 100.0;
    cfg.horizon = static_cast<int>(cfg.script.size()) + 2;
    cfg.seed = rng();
    const auto res = ccfomi_run(cfg);
    const ntcc::fo::FactorOracle ref(played);
    if (!(res.learned == to_learned(ref))) return {false, "script " + std::to_string(t) + ": learned oracle differs"};
    for (const auto& s : res.improvisation)
      if (ref.transition(s.from, s.pitch) != s.to) return {false, "script " + std::to_string(t) + ": bad transition"};
  }
  return {true, std::to_string(scripts) + " scripts learned exactly"};
}

}  // namespace props
