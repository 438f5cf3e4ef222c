#include "ntcc/search/search.hpp"

#include "ntcc/errors.hpp"
#include "ntcc/fd/constraints.hpp"

namespace ntcc::search {

void branch(fd::Space& home, std::vector<fd::VarId> vars, fd::VarSelect vs, fd::ValSelect val) {
  for (const auto& v : vars) {
    if (v.is_set()) throw KindError("branching over set variables is not supported");
  }
  home.set_branching(fd::Branching{std::move(vars), vs, val});
}

namespace {

// Index of the variable to branch on, or -1 when all are assigned.
int select(const fd::Space& s, const fd::Branching& b) {
  int best = -1;
  std::uint64_t best_size = 0;
  for (std::size_t i = 0; i < b.vars.size(); ++i) {
    const auto& d = s.int_domain(b.vars[i]);
    if (d.assigned()) continue;
    if (b.var_select == fd::VarSelect::InOrder) return static_cast<int>(i);
    if (best < 0 || d.size() < best_size) {
      best = static_cast<int>(i);
      best_size = d.size();
    }
  }
  return best;
}

}  // namespace

DepthFirstSearch::DepthFirstSearch(const fd::Space& root, Options opts) : opts_(opts) {
  stack_.push_back(root.clone());
}

std::optional<fd::Space> DepthFirstSearch::next() {
  if (opts_.solution_limit && stats_.solutions >= opts_.solution_limit) {
    limit_reached_ = true;
    return std::nullopt;
  }
  while (!stack_.empty()) {
    if (opts_.node_limit && stats_.nodes >= opts_.node_limit) {
      limit_reached_ = true;
      return std::nullopt;
    }
    fd::Space s = std::move(stack_.back());
    stack_.pop_back();
    ++stats_.nodes;
    constrain(s);
    if (s.propagate() == fd::SpaceStatus::Failed) {
      ++stats_.failures;
      continue;
    }
    const auto& br = s.branching();
    const int i = br ? select(s, *br) : -1;
    if (i < 0) {
      ++stats_.solutions;
      on_solution(s);
      return s;
    }
    const fd::VarId x = br->vars[static_cast<std::size_t>(i)];
    const auto& d = s.int_domain(x);
    const int v = br->val_select == fd::ValSelect::Min ? d.min() : d.max();
    fd::Space right = s.clone();
    fd::rel(right, x, fd::Rel::Ne, v);
    fd::rel(s, x, fd::Rel::Eq, v);
    stack_.push_back(std::move(right));
    stack_.push_back(std::move(s));
  }
  return std::nullopt;
}

BranchAndBound::BranchAndBound(const fd::Space& root, fd::VarId cost, Options opts)
    : DepthFirstSearch(root, opts), cost_(cost) {
  if (cost.is_set()) throw KindError("cost must be an integer variable");
}

void BranchAndBound::constrain(fd::Space& s) {
  if (best_) fd::rel(s, cost_, fd::Rel::Lt, *best_);
}

void BranchAndBound::on_solution(const fd::Space& s) {
  const auto& d = s.int_domain(cost_);
  // An unbranched cost variable is bounded by its minimum.
  best_ = d.min();
}

std::vector<fd::Space> all_solutions(const fd::Space& root, Options opts) {
  DepthFirstSearch dfs(root, opts);
  std::vector<fd::Space> out;
  while (auto s = dfs.next()) out.push_back(std::move(*s));
  return out;
}

std::optional<fd::Space> minimize(const fd::Space& root, fd::VarId cost, Options opts) {
  BranchAndBound bab(root, cost, opts);
  std::optional<fd::Space> best;
  while (auto s = bab.next()) best = std::move(*s);
  return best;
}

}  // namespace ntcc::search
