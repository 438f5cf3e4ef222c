#include "ntcc/models/knets.hpp"

#include <json.hpp>

#include "ntcc/errors.hpp"
#include "ntcc/fd/constraints.hpp"
#include "ntcc/search/search.hpp"

namespace ntcc::models {

namespace {

bool connected(const std::vector<std::vector<int>>& m) {
  const std::size_t n = m.size();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> todo{0};
  seen[0] = 1;
  while (!todo.empty()) {
    const std::size_t i = todo.back();
    todo.pop_back();
    for (std::size_t j = 0; j < n; ++j)
      if (m[i][j] != 0 && !seen[j]) {
        seen[j] = 1;
        todo.push_back(j);
      }
  }
  for (char s : seen)
    if (!s) return false;
  return true;
}

}  // namespace

std::string knet_label(const std::vector<int>& pitches, int i, int j, int kind) {
  const int a = pitches.at(static_cast<std::size_t>(i));
  const int b = pitches.at(static_cast<std::size_t>(j));
  if (kind == 1) return "T" + std::to_string(((b - a) % 12 + 12) % 12);
  if (kind == 2) return "I" + std::to_string((a + b) % 12);
  return "--";
}

std::vector<KnetSolution> knets_solve(const KnetProblem& problem, std::size_t limit) {
  const int n = static_cast<int>(problem.pitches.size());
  if (n < 2) throw ConfigError("k-nets need at least two pitches");
  for (int p : problem.pitches)
    if (p < 0 || p > 11) throw ConfigError("pitch classes must lie in 0..11");
  if (problem.k < 0) throw ConfigError("the inversion count must be non-negative");

  fd::Space root;
  std::vector<fd::VarId> x;
  for (int c = 0; c < n * n; ++c) x.push_back(root.new_int_var(0, 2));
  auto at = [&](int i, int j) { return x[static_cast<std::size_t>(i * n + j)]; };
  std::vector<fd::VarId> upper;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) fd::rel(root, at(i, j), fd::Rel::Eq, 0);
      else if (i < j) fd::rel(root, at(i, j), fd::Rel::Eq, at(j, i));
    }
    for (int j = i + 1; j < n; ++j) upper.push_back(at(i, j));
  }
  fd::count(root, x, fd::Rel::Ne, 0, fd::Rel::Ge, 2 * n);
  fd::count(root, x, fd::Rel::Eq, 2, fd::Rel::Eq, 2 * problem.k);
  search::branch(root, upper);

  std::vector<KnetSolution> out;
  search::DepthFirstSearch dfs(root);
  while (auto s = dfs.next()) {
    KnetSolution sol;
    sol.matrix.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    sol.labels.assign(static_cast<std::size_t>(n), std::vector<std::string>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const int v = s->value(at(i, j));
        sol.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
        sol.labels[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = knet_label(problem.pitches, i, j, v);
      }
    if (problem.connected && !connected(sol.matrix)) continue;
    out.push_back(std::move(sol));
    if (limit && out.size() >= limit) break;
  }
  return out;
}

std::string knet_rows(const KnetSolution& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.labels.size(); ++i) {
    out += i ? " (" : "(";
    for (std::size_t j = 0; j < s.labels[i].size(); ++j) out += (j ? " \"" : "\"") + s.labels[i][j] + "\"";
    out += ')';
  }
  return out + ")";
}

std::string knets_json(const std::vector<KnetSolution>& sols) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : sols) arr.push_back({{"matrix", s.matrix}, {"labels", s.labels}});
  return arr.dump();
}

}  // namespace ntcc::models
