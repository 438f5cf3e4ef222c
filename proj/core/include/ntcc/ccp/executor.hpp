#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ntcc/ccp/registry.hpp"
#include "ntcc/fd/constraints.hpp"
#include "ntcc/process.hpp"

namespace ntcc::ccp {

/// Σ terms + constant over resolved store variables.
struct LinearForm {
  std::vector<fd::Term> terms;
  std::int64_t constant = 0;
};

/// Fresh ids and domains for executed `local` binders. Shared by all the
/// stores of one run so ids stay unique across time units.
struct LocalTable {
  std::vector<LocalDecl> decls;
  int fresh(const LocalDecl& d) {
    decls.push_back(d);
    return static_cast<int>(decls.size()) - 1;
  }
};

struct ExecCounters {
  std::size_t executed = 0;  // process terms dispatched
  std::size_t fired = 0;     // asks and choices whose continuation ran
};

/// Executes untimed process terms against one Space.
///
/// Tell posts a propagator; When reifies its guard and installs an ask
/// propagator; Par executes children in order; Local allocates fresh
/// variables. No fixpoint is forced. Timed forms are delegated to
/// execute_timed(), which rejects them here.
class Executor {
 public:
  Executor(const VariableRegistry& reg, fd::Space& space, LocalTable& locals);
  virtual ~Executor() = default;
  Executor(const Executor&) = delete;
  Executor& operator=(const Executor&) = delete;

  void execute(const P& p);

  void tell(const Constraint& c);
  /// Installs an ask: `cont` runs once the guard is entailed.
  void post_ask(const Guard& g, const P& cont);
  /// Installs a parallel conditional over already-ordered branches: the
  /// first branch whose guard is entailed runs, the others are dropped.
  void post_choice(std::vector<std::pair<Guard, P>> branches);

  fd::BoolExpr guard_expr(const Guard& g);
  LinearForm linearize(const Expr& e);
  /// Resolves a variable reference (Var or Local) to its store variable.
  fd::VarId resolve(const Expr& e);

  fd::Space& space() noexcept { return binding_.space(); }
  Binding& binding() noexcept { return binding_; }
  const VariableRegistry& registry() const noexcept { return binding_.registry(); }
  const ExecCounters& counters() const noexcept { return counters_; }
  void note_fired() noexcept { ++counters_.fired; }

 protected:
  virtual void execute_timed(const P& p);
  /// Called for every constraint before it is posted.
  virtual void on_tell(const Constraint&) {}

 private:
  fd::VarId int_operand(const Expr& e);
  bool is_set_ref(const Expr& e);
  std::pair<std::int64_t, std::int64_t> range_bounds(const Expr& e);

  Binding binding_;
  LocalTable* locals_;
  std::vector<std::optional<fd::VarId>> local_ids_;
  ExecCounters counters_;
};

/// Read-only result of a CCP run.
struct StoreSnapshot {
  std::vector<std::pair<std::string, VarValue>> vars;
  bool failed = false;
  /// Guards of asks (and choices) still suspended at quiescence.
  std::vector<std::string> blocked;
  std::size_t fired = 0;
  std::size_t executed = 0;

  const VarValue& at(const std::string& name) const;
};

/// Fresh store, execute, fixpoint, snapshot. Failure is reported in the
/// snapshot rather than raised.
StoreSnapshot run_ccp(const VariableRegistry& reg, const P& proc);

/// Snapshot of an executor's store after its fixpoint.
StoreSnapshot snapshot_of(Executor& ex, bool failed);

}  // namespace ntcc::ccp
