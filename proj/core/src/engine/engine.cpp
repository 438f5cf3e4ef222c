#include "ntcc/engine.hpp"

#include <chrono>
#include <set>
#include <sstream>
#include <thread>

#include "ntcc/errors.hpp"

namespace ntcc {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw ConfigError("Rng::below(0)");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return x % n;
}

double Rng::unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

/// Executor for one time unit; dispatches the timed forms.
class UnitExecutor final : public ccp::Executor {
 public:
  UnitExecutor(Engine& eng, fd::Space& space)
      : ccp::Executor(eng.prog_.registry, space, eng.locals_), eng_(eng), tu_(eng.tu_) {}

  struct PendingUnless {
    fd::VarId b;
    P body;
  };

  std::vector<PendingUnless> unless;
  std::vector<Constraint> persistent;
  std::vector<Constraint> told;


  void tell_slot(std::size_t slot, int value) {
    Expr x;
    x.kind = Expr::Kind::Sym;
    x.name = registry().slot_name(slot);
    on_tell(eq(std::move(x), lit(value)));
    fd::rel(space(), binding().get(slot), fd::Rel::Eq, value);
  }

 protected:
  void on_tell(const Constraint& c) override { told.push_back(c); }

  void execute_timed(const P& p) override {
    const std::size_t budget = eng_.opts_.process_budget;
    if (budget && counters().executed > budget) {
      throw ProcessBudgetExceeded("more than " + std::to_string(budget) + " processes executed in time unit " +
                                  std::to_string(tu_));
    }
    const Process& q = *p;
    switch (q.kind) {
      case Process::Kind::Next:
        eng_.enqueue(tu_ + q.delay, q.body());
        return;
      case Process::Kind::Bang:
        execute(q.body());
        eng_.enqueue(tu_ + 1, p);
        return;
      case Process::Kind::Star: {
        const auto span = static_cast<std::uint64_t>(std::max(eng_.opts_.horizon - tu_, 1));
        const int u = tu_ + static_cast<int>(eng_.rng_.below(span));
        if (u == tu_) execute(q.body());
        else eng_.enqueue(u, q.body());
        return;
      }
      case Process::Kind::Unless: {
        const Guard g = fold(q.guard);
        if (g.kind == Guard::Kind::True) return;
        if (g.kind == Guard::Kind::False) {
          eng_.enqueue(tu_ + 1, q.body());
          return;
        }
        unless.push_back({fd::reify(space(), guard_expr(g)), q.body()});
        return;
      }
      case Process::Kind::Sum: {
        std::vector<std::pair<Guard, P>> branches;
        for (std::size_t i = 0; i < q.kids.size(); ++i) branches.emplace_back(q.guards[i], q.kids[i]);
        eng_.rng_.shuffle(branches);
        post_choice(std::move(branches));
        return;
      }
      case Process::Kind::Call:
        execute(instantiate(q));
        return;
      case Process::Kind::PersistentTell:
        tell(q.constraint);
        persistent.push_back(q.constraint);
        return;
      case Process::Kind::CellNew: {
        const std::size_t slot = cell_slot(q.args[0]);
        const int z = ground(q.args[1]);
        auto& c = eng_.cells_[slot];
        c.value = z;
        c.next.reset();
        tell(eq(q.args[0], lit(z)));
        return;
      }
      case Process::Kind::CellAssign: {
        auto& c = existing_cell(q.args[0]);
        if (c.changed) throw DoubleAssign("cell '" + to_sexp(q.args[0]) + "' changed twice in time unit " + std::to_string(tu_));
        c.next = apply(q, q.args[1], c.value);
        c.changed = true;
        return;
      }
      case Process::Kind::CellExch: {
        auto& x = existing_cell(q.args[0]);
        auto& y = existing_cell(q.args[1]);
        if (x.changed || y.changed) {
          throw DoubleAssign("cell exchange on '" + to_sexp(q.args[0]) + "'/'" + to_sexp(q.args[1]) +
                             "' conflicts with another change in time unit " + std::to_string(tu_));
        }
        const int old = x.value;
        x.next = apply(q, q.args[2], old);
        y.next = old;
        x.changed = true;
        y.changed = true;
        return;
      }
      default:
        ccp::Executor::execute_timed(p);
    }
  }

 private:
  int ground(const Expr& e) {
    const std::int64_t v = evaluate(fold(e));
    if (v < fd::kIntMin || v > fd::kIntMax) throw BoundsError("value " + std::to_string(v) + " out of range");
    return static_cast<int>(v);
  }

  int apply(const Process& q, const Expr& fn, int value) {
    const std::int64_t v = evaluate(fn, {{q.name, value}});
    if (v < fd::kIntMin || v > fd::kIntMax) throw BoundsError("cell value " + std::to_string(v) + " out of range");
    return static_cast<int>(v);
  }

  std::size_t cell_slot(const Expr& target) {
    if (target.kind != Expr::Kind::Var && target.kind != Expr::Kind::Sym) {
      throw KindError("cell target '" + to_sexp(target) + "' must be a declared variable");
    }
    std::vector<std::int64_t> idx;
    for (const auto& k : target.kids) idx.push_back(evaluate(fold(k)));
    return registry().slot(target.name, idx);
  }

  Engine::CellState& existing_cell(const Expr& target) {
    const std::size_t slot = cell_slot(target);
    auto it = eng_.cells_.find(slot);
    if (it == eng_.cells_.end()) throw UnknownCell("no cell '" + registry().slot_name(slot) + "'");
    return it->second;
  }

  P instantiate(const Process& q) {
    auto it = eng_.prog_.procedures.find(q.name);
    if (it == eng_.prog_.procedures.end()) throw UnknownProcedure("unknown procedure '" + q.name + "'");
    const ProcedureDef& def = it->second;
    if (def.params.size() != q.args.size()) {
      throw ArityError("procedure '" + q.name + "' takes " + std::to_string(def.params.size()) + " argument(s), got " +
                       std::to_string(q.args.size()));
    }
    Bindings b;
    for (std::size_t i = 0; i < q.args.size(); ++i) {
      Expr a = fold(q.args[i]);
      if (def.params[i].is_var) {
        if (a.kind != Expr::Kind::Var && a.kind != Expr::Kind::Local && a.kind != Expr::Kind::Sym) {
          throw ArityError("procedure '" + q.name + "': argument " + std::to_string(i + 1) + " must be a variable");
        }
        for (auto& k : a.kids) k = lit(evaluate(fold(k)));
        b.params[def.params[i].name] = std::move(a);
      } else {
        b.params[def.params[i].name] = lit(evaluate(a));
      }
    }
    return substitute(def.body, b);
  }

  Engine& eng_;
  int tu_;
};

Engine::Engine(Program prog, EngineOptions opts) : prog_(std::move(prog)), opts_(opts), rng_(opts.seed) {
  if (opts_.horizon < 1) throw ConfigError("horizon must be at least 1");
  if (opts_.fixed_unit_ms && *opts_.fixed_unit_ms < 0) throw ConfigError("fixed unit length must be non-negative");
  opts_.general_recursion = opts_.general_recursion || prog_.general_recursion;
  if (!opts_.general_recursion) {
    for (const auto& v : validate(prog_)) {
      if (v.rule == "unguarded-recursion") throw ConfigError(v.message);
    }
  }
  queues_.resize(static_cast<std::size_t>(opts_.horizon));
  enqueued_.assign(static_cast<std::size_t>(opts_.horizon), 0);
  drained_.assign(static_cast<std::size_t>(opts_.horizon), 0);
}

Engine::~Engine() = default;

void Engine::enqueue(int tu, P p) {
  if (tu >= opts_.horizon) {
    ++dropped_;
    return;
  }
  queues_[static_cast<std::size_t>(tu)].push_back(std::move(p));
  ++enqueued_[static_cast<std::size_t>(tu)];
}

std::size_t Engine::enqueued_for(int tu) const { return enqueued_.at(static_cast<std::size_t>(tu)); }
std::size_t Engine::drained_at(int tu) const { return drained_.at(static_cast<std::size_t>(tu)); }

std::optional<int> Engine::cell(const std::string& name) const {
  auto it = cells_.find(prog_.registry.slot(name));
  if (it == cells_.end()) return std::nullopt;
  return it->second.value;
}

std::map<std::string, int> Engine::cells() const {
  std::map<std::string, int> out;
  for (const auto& [slot, c] : cells_) out[prog_.registry.slot_name(slot)] = c.value;
  return out;
}

namespace {

// Replaces the variables on the value side of a persistent tell by their
// values in the final store. Returns nullopt if one of them is unassigned.
std::optional<Constraint> freeze(ccp::Executor& ex, const Constraint& c) {
  Constraint out = c;
  Expr& side = c.kind == Constraint::Kind::Rel ? out.rhs : out.lhs;
  if (side.kind == Expr::Kind::Range) return out;
  const Expr folded = fold(side);
  if (folded.is_const()) {
    side = folded;
    return out;
  }
  const ccp::LinearForm l = ex.linearize(folded);
  std::int64_t v = l.constant;
  for (const auto& t : l.terms) {
    const auto& d = ex.space().int_domain(t.var);
    if (!d.assigned()) return std::nullopt;
    v += static_cast<std::int64_t>(t.coeff) * d.value();
  }
  side = lit(v);
  // Indices on the variable side are ground already; fold them for stable text.
  Expr& target = c.kind == Constraint::Kind::Rel ? out.lhs : out.rhs;
  target = fold(target);
  return out;
}

std::string describe_told(const std::vector<Constraint>& told) {
  std::ostringstream os;
  const std::size_t shown = std::min<std::size_t>(told.size(), 16);
  for (std::size_t i = 0; i < shown; ++i) os << (i ? " " : "") << to_sexp(told[i]);
  if (told.size() > shown) os << " ... (" << told.size() - shown << " more)";
  return os.str();
}

}  // namespace

UnitReport Engine::run_time_unit() {
  if (done()) throw ConfigError("simulation already reached its horizon");
  const auto start = std::chrono::steady_clock::now();
  const int t = tu_;

  // Steps 1-2: fresh store; variables materialize on first use.
  fd::Space space;
  UnitExecutor ex(*this, space);

  // Step 3: environment input.
  if (input_) {
    for (const auto& c : input_(t)) ex.tell(c);
  }
  // Cells carried into this unit.
  for (auto& [slot, c] : cells_) {
    c.changed = false;
    ex.tell_slot(slot, c.value);
  }
  // Step 6: persistent tells registered by earlier units.
  const std::vector<Constraint> carried = std::move(persistent_);
  persistent_.clear();
  for (const auto& c : carried) ex.tell(c);

  // Step 4: the main process.
  if (t == 0) ex.execute(prog_.main);

  // Step 7: this unit's process queue. Processes enqueued for this unit
  // while draining (none can be, delays are >= 1) would be picked up too.
  auto& queue = queues_[static_cast<std::size_t>(t)];
  for (std::size_t i = 0; i < queue.size(); ++i) {
    ++drained_[static_cast<std::size_t>(t)];
    P p = queue[i];
    ex.execute(p);
  }
  queue.clear();
  queue.shrink_to_fit();

  // Step 8: fixpoint.
  if (space.propagate() == fd::SpaceStatus::Failed) {
    throw InconsistentUnit(t, describe_told(ex.told));
  }

  // Step 9: unless processes whose guard is not entailed run next unit.
  for (const auto& u : ex.unless) {
    const auto& d = space.int_domain(u.b);
    if (!(d.assigned() && d.value() == 1)) enqueue(t + 1, u.body);
  }

  // Step 10: persistent tells and cell carry-over for the next unit.
  std::set<std::string> seen;
  for (const auto& c : carried) {
    if (seen.insert(to_sexp(c)).second) persistent_.push_back(c);
  }
  for (const auto& c : ex.persistent) {
    if (auto f = freeze(ex, c)) {
      if (seen.insert(to_sexp(*f)).second) persistent_.push_back(std::move(*f));
    }
  }
  for (auto& [slot, c] : cells_) {
    if (c.next) c.value = *c.next;
    c.next.reset();
    c.changed = false;
  }

  // Step 11: report.
  UnitReport rep;
  rep.tu = t;
  rep.vars = ex.binding().snapshot();
  rep.executed = ex.counters().executed;
  rep.fired = ex.counters().fired;
  rep.blocked = space.live("ask").size() + space.live("choice").size();
  auto work_end = std::chrono::steady_clock::now();
  rep.elapsed_us = std::chrono::duration_cast<std::chrono::microseconds>(work_end - start).count();
  if (opts_.fixed_unit_ms) {
    const auto deadline = start + std::chrono::milliseconds(*opts_.fixed_unit_ms);
    if (work_end > deadline) rep.overrun = true;
    else std::this_thread::sleep_until(deadline);
  }
  ++tu_;
  if (output_) output_(rep);
  // Step 12: the store is discarded with `space`.
  return rep;
}

Trace Engine::simulate() {
  Trace tr;
  while (!done()) tr.units.push_back(run_time_unit());
  tr.final_cells = cells();
  tr.dropped = dropped_;
  return tr;
}

}  // namespace ntcc
