#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ntcc/ccp/executor.hpp"
#include "ntcc/ccp/registry.hpp"
#include "ntcc/process.hpp"

namespace ntcc {

/// A resolved program: declarations, procedures and the main process.
struct Program {
  ccp::VariableRegistry registry;
  ProcedureTable procedures;
  P main;
  /// Allows unguarded recursive calls (bounded by a per-unit budget).
  bool general_recursion = false;
};

/// Seeded generator with a portable uniform draw (std::uniform_*
/// distributions differ between standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : gen_(seed) {}
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform double in [0, 1).
  double unit();
  bool bernoulli(double p) { return unit() < p; }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 gen_;
};

struct EngineOptions {
  int horizon = 1;
  std::uint64_t seed = 0;
  bool general_recursion = false;
  /// Maximum process terms executed per unit; 0 disables the check.
  std::size_t process_budget = 5'000'000;
  /// When set, every unit lasts at least this many milliseconds.
  std::optional<int> fixed_unit_ms;
};

struct UnitReport {
  int tu = 0;
  std::vector<std::pair<std::string, ccp::VarValue>> vars;
  std::size_t executed = 0;  // process terms dispatched in this unit
  std::size_t fired = 0;     // asks and choices that ran their continuation
  std::size_t blocked = 0;   // asks and choices still suspended at the fixpoint
  std::int64_t elapsed_us = 0;
  bool overrun = false;      // fixed-unit mode: work exceeded the unit length
};

struct Trace {
  std::vector<UnitReport> units;
  /// Cell values carried past the last unit, keyed by variable name.
  std::map<std::string, int> final_cells;
  std::size_t dropped = 0;
};

/// Tells supplied by the environment at the start of a unit.
using InputHook = std::function<std::vector<Constraint>(int tu)>;
using OutputHook = std::function<void(const UnitReport&)>;

struct Violation {
  std::string rule;
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Static checks for process patterns the engine cannot run faithfully.
/// Rules: inconsistent-replicated-choice, persistent-structured-rhs,
/// undeclared-dimension, unguarded-recursion (skipped for programs that
/// enable general recursion).
std::vector<Violation> validate(const Program& prog);
std::vector<Violation> validate(const P& proc, const ProcedureTable& procs = {},
                                const ccp::VariableRegistry* reg = nullptr);

/// The timed interpreter. Each time unit gets a fresh store; processes
/// communicate across units through next, bang, unless, persistent tells
/// and cells.
class Engine {
 public:
  Engine(Program prog, EngineOptions opts);
  ~Engine();
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  void set_input(InputHook hook) { input_ = std::move(hook); }
  void set_output(OutputHook hook) { output_ = std::move(hook); }

  int current_unit() const noexcept { return tu_; }
  bool done() const noexcept { return tu_ >= opts_.horizon; }

  /// Runs one unit. Throws InconsistentUnit when its final fixpoint fails.
  UnitReport run_time_unit();
  /// Runs the remaining units.
  Trace simulate();

  const Program& program() const noexcept { return prog_; }
  const EngineOptions& options() const noexcept { return opts_; }
  Rng& rng() noexcept { return rng_; }

  /// Current value of a cell (after the carry-over of the last unit run).
  std::optional<int> cell(const std::string& name) const;
  std::map<std::string, int> cells() const;

  // Queue accounting: enqueued_for(t) == drained_at(t) for t < horizon.
  std::size_t enqueued_for(int tu) const;
  std::size_t drained_at(int tu) const;
  std::size_t dropped() const noexcept { return dropped_; }

 private:
  friend class UnitExecutor;

  struct CellState {
    int value = 0;
    std::optional<int> next;
    bool changed = false;
  };

  void enqueue(int tu, P p);

  Program prog_;
  EngineOptions opts_;
  Rng rng_;
  InputHook input_;
  OutputHook output_;
  int tu_ = 0;
  ccp::LocalTable locals_;
  std::vector<std::vector<P>> queues_;
  std::vector<std::size_t> enqueued_;
  std::vector<std::size_t> drained_;
  std::size_t dropped_ = 0;
  std::vector<Constraint> persistent_;
  std::map<std::size_t, CellState> cells_;
};

}  // namespace ntcc
