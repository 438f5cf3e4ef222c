#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ntcc/fd/space.hpp"

namespace ntcc::search {

struct Options {
  std::size_t node_limit = 0;      // 0: unlimited
  std::size_t solution_limit = 0;  // 0: unlimited
};

struct Stats {
  std::size_t nodes = 0;
  std::size_t failures = 0;
  std::size_t solutions = 0;
};

/// Records a branching on the space; the engines below consume it.
void branch(fd::Space& home, std::vector<fd::VarId> vars, fd::VarSelect vs = fd::VarSelect::InOrder,
            fd::ValSelect val = fd::ValSelect::Min);

/// Copy-based depth-first search. The left alternative x = v is explored
/// before the right alternative x != v.
class DepthFirstSearch {
 public:
  explicit DepthFirstSearch(const fd::Space& root, Options opts = {});

  /// Next solution in leftmost-first order, or nullopt when exhausted (or a
  /// limit was hit).
  std::optional<fd::Space> next();

  const Stats& stats() const noexcept { return stats_; }
  bool limit_reached() const noexcept { return limit_reached_; }

 protected:
  /// Hook applied to every node before propagation.
  virtual void constrain(fd::Space&) {}
  virtual void on_solution(const fd::Space&) {}

 public:
  virtual ~DepthFirstSearch() = default;

 private:
  std::vector<fd::Space> stack_;
  Options opts_;
  Stats stats_;
  bool limit_reached_ = false;
};

/// Branch and bound minimizing `cost`: each emitted solution is strictly
/// cheaper than the previous one; the last is optimal.
class BranchAndBound : public DepthFirstSearch {
 public:
  BranchAndBound(const fd::Space& root, fd::VarId cost, Options opts = {});
  std::optional<int> best_cost() const noexcept { return best_; }

 protected:
  void constrain(fd::Space& s) override;
  void on_solution(const fd::Space& s) override;

 private:
  fd::VarId cost_;
  std::optional<int> best_;
};

std::vector<fd::Space> all_solutions(const fd::Space& root, Options opts = {});
/// Optimal solution of a minimization, or nullopt if infeasible.
std::optional<fd::Space> minimize(const fd::Space& root, fd::VarId cost, Options opts = {});

}  // namespace ntcc::search
