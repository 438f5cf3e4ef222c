#include "ntcc/ccp/executor.hpp"

#include <memory>
#include <sstream>

#include "ntcc/errors.hpp"

namespace ntcc::ccp {

namespace {

/// Waits for the truth variable of a reified guard; runs the continuation
/// inside the ongoing propagation once it becomes 1.
class AskPropagator final : public fd::Propagator {
 public:
  AskPropagator(Executor* ex, fd::VarId b, P cont, std::string text)
      : ex_(ex), b_(b), cont_(std::move(cont)), text_(std::move(text)) {}

  std::vector<fd::VarId> subscriptions() const override { return {b_}; }
  std::unique_ptr<fd::Propagator> copy() const override { return std::make_unique<AskPropagator>(*this); }
  std::string_view kind() const override { return "ask"; }
  std::string describe() const override { return text_; }

  fd::PropStatus propagate(fd::Space& home) override {
    const auto& d = home.int_domain(b_);
    if (!d.assigned()) return fd::PropStatus::Fix;
    if (d.value() == 1) {
      ex_->note_fired();
      ex_->execute(cont_);
    }
    return fd::PropStatus::Subsumed;
  }

 private:
  Executor* ex_;
  fd::VarId b_;
  P cont_;
  std::string text_;
};

/// Parallel conditional: the first branch (in the stored order) whose truth
/// variable is 1 runs; all-false subsumes without effect.
class ChoicePropagator final : public fd::Propagator {
 public:
  ChoicePropagator(Executor* ex, std::vector<std::pair<fd::VarId, P>> branches, std::string text)
      : ex_(ex), branches_(std::move(branches)), text_(std::move(text)) {}

  std::vector<fd::VarId> subscriptions() const override {
    std::vector<fd::VarId> out;
    for (const auto& [b, p] : branches_) out.push_back(b);
    return out;
  }
  std::unique_ptr<fd::Propagator> copy() const override { return std::make_unique<ChoicePropagator>(*this); }
  std::string_view kind() const override { return "choice"; }
  std::string describe() const override { return text_; }

  fd::PropStatus propagate(fd::Space& home) override {
    bool all_false = true;
    for (const auto& [b, p] : branches_) {
      const auto& d = home.int_domain(b);
      if (d.assigned() && d.value() == 1) {
        ex_->note_fired();
        ex_->execute(p);
        return fd::PropStatus::Subsumed;
      }
      if (!d.assigned()) all_false = false;
    }
    return all_false ? fd::PropStatus::Subsumed : fd::PropStatus::Fix;
  }

 private:
  Executor* ex_;
  std::vector<std::pair<fd::VarId, P>> branches_;
  std::string text_;
};

LinearForm minus(LinearForm a, const LinearForm& b) {
  for (const auto& t : b.terms) a.terms.push_back({-t.coeff, t.var});
  a.constant -= b.constant;
  return a;
}

int narrow_coeff(std::int64_t c) {
  if (c < -(std::int64_t{1} << 30) || c > (std::int64_t{1} << 30)) {
    throw EvaluationError("coefficient " + std::to_string(c) + " too large");
  }
  return static_cast<int>(c);
}

}  // namespace

Executor::Executor(const VariableRegistry& reg, fd::Space& space, LocalTable& locals)
    : binding_(reg, space), locals_(&locals) {}

void Executor::execute(const P& p) {
  ++counters_.executed;
  const Process& q = *p;
  switch (q.kind) {
    case Process::Kind::Skip:
      return;
    case Process::Kind::Tell:
      tell(q.constraint);
      return;
    case Process::Kind::When:
      post_ask(q.guard, q.body());
      return;
    case Process::Kind::Par:
      for (const auto& k : q.kids) execute(k);
      return;
    case Process::Kind::Local: {
      Bindings b;
      for (const auto& d : q.locals) {
        if (d.lo > d.hi) throw BoundsError("local '" + d.name + "': empty domain");
        b.locals[d.name] = locals_->fresh(d);
      }
      execute(substitute(q.body(), b));
      return;
    }
    default:
      execute_timed(p);
      return;
  }
}

void Executor::execute_timed(const P& p) {
  throw UnsupportedProcess("process '" + std::string(to_string(p->kind)) + "' needs the timed engine");
}

fd::VarId Executor::resolve(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Var:
    case Expr::Kind::Sym: {
      std::vector<std::int64_t> idx;
      idx.reserve(e.kids.size());
      for (const auto& k : e.kids) idx.push_back(evaluate(fold(k)));
      return binding_.get(registry().slot(e.name, idx));
    }
    case Expr::Kind::Local: {
      if (e.local_id < 0) throw UndeclaredVariable("local '" + e.name + "' used outside its scope");
      const auto id = static_cast<std::size_t>(e.local_id);
      if (id >= locals_->decls.size()) throw UndeclaredVariable("unknown local '" + e.name + "'");
      if (local_ids_.size() <= id) local_ids_.resize(id + 1);
      if (!local_ids_[id]) {
        const LocalDecl& d = locals_->decls[id];
        local_ids_[id] = space().new_int_var(d.lo, d.hi);
      }
      return *local_ids_[id];
    }
    case Expr::Kind::Param:
      throw EvaluationError("unbound parameter '" + e.name + "'");
    default:
      throw KindError("'" + to_sexp(e) + "' is not a variable");
  }
}

bool Executor::is_set_ref(const Expr& e) {
  if (e.kind != Expr::Kind::Var && e.kind != Expr::Kind::Sym) return false;
  const VarDecl* d = registry().find(e.name);
  return d && d->kind == fd::VarKind::Set;
}

LinearForm Executor::linearize(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Const:
      return {{}, e.value};
    case Expr::Kind::Var:
    case Expr::Kind::Sym:
    case Expr::Kind::Local:
    case Expr::Kind::Param: {
      const fd::VarId v = resolve(e);
      if (v.is_set()) throw KindError("set variable '" + e.name + "' used in arithmetic");
      return {{{1, v}}, 0};
    }
    case Expr::Kind::Add: {
      LinearForm a = linearize(e.kids[0]);
      LinearForm b = linearize(e.kids[1]);
      a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
      a.constant += b.constant;
      return a;
    }
    case Expr::Kind::Sub:
      return minus(linearize(e.kids[0]), linearize(e.kids[1]));
    case Expr::Kind::Neg:
      return minus({}, linearize(e.kids[0]));
    case Expr::Kind::Mul: {
      LinearForm a = linearize(e.kids[0]);
      LinearForm b = linearize(e.kids[1]);
      if (!a.terms.empty() && !b.terms.empty()) throw EvaluationError("nonlinear product '" + to_sexp(e) + "'");
      if (a.terms.empty()) std::swap(a, b);
      const std::int64_t k = b.constant;
      for (auto& t : a.terms) t.coeff = narrow_coeff(static_cast<std::int64_t>(t.coeff) * k);
      a.constant *= k;
      return a;
    }
    case Expr::Kind::Range:
      throw KindError("range '" + to_sexp(e) + "' used as an integer");
  }
  return {};
}

std::pair<std::int64_t, std::int64_t> Executor::range_bounds(const Expr& e) {
  return {evaluate(fold(e.kids[0])), evaluate(fold(e.kids[1]))};
}

fd::VarId Executor::int_operand(const Expr& e) {
  if (e.kind == Expr::Kind::Var || e.kind == Expr::Kind::Local || e.kind == Expr::Kind::Sym) {
    const fd::VarId v = resolve(e);
    if (v.is_set()) throw KindError("set variable '" + e.name + "' used as an element");
    return v;
  }
  LinearForm l = linearize(e);
  if (l.terms.empty()) {
    if (l.constant < fd::kIntMin || l.constant > fd::kIntMax) throw BoundsError("constant out of range");
    return space().constant(static_cast<int>(l.constant));
  }
  const fd::VarId aux = space().new_int_var(fd::kIntMin, fd::kIntMax);
  l.terms.push_back({-1, aux});
  fd::linear(space(), l.terms, fd::Rel::Eq, -l.constant);
  return aux;
}

void Executor::tell(const Constraint& c0) {
  on_tell(c0);
  const Constraint c{c0.kind, fold(c0.lhs), c0.rel, fold(c0.rhs), c0.span};
  if (c.kind == Constraint::Kind::Rel) {
    if (c.rhs.kind == Expr::Kind::Range) {
      if (c.rel != fd::Rel::Eq) throw KindError("only '=' relates a set to a range");
      const fd::VarId s = resolve(c.lhs);
      if (!s.is_set()) throw KindError("'" + to_sexp(c.lhs) + "' is not a set variable");
      const auto [lo, hi] = range_bounds(c.rhs);
      fd::set_dom_eq(space(), s, static_cast<int>(lo), static_cast<int>(hi));
      return;
    }
    if (is_set_ref(c.lhs) || is_set_ref(c.rhs)) throw KindError("relations between set variables are not supported");
    const LinearForm l = minus(linearize(c.lhs), linearize(c.rhs));
    fd::linear(space(), l.terms, c.rel, -l.constant);
    return;
  }
  const bool positive = c.kind == Constraint::Kind::In;
  if (c.rhs.kind == Expr::Kind::Range) {
    const auto [lo, hi] = range_bounds(c.rhs);
    const LinearForm l = linearize(c.lhs);
    if (positive) {
      fd::linear(space(), l.terms, fd::Rel::Ge, lo - l.constant);
      fd::linear(space(), l.terms, fd::Rel::Le, hi - l.constant);
    } else {
      fd::post(space(), fd::BoolExpr::disj({fd::BoolExpr::linear(l.terms, fd::Rel::Lt, lo - l.constant),
                                            fd::BoolExpr::linear(l.terms, fd::Rel::Gt, hi - l.constant)}));
    }
    return;
  }
  const fd::VarId s = resolve(c.rhs);
  if (!s.is_set()) throw KindError("'" + to_sexp(c.rhs) + "' is not a set variable");
  if (c.lhs.is_const()) {
    if (positive) fd::include(space(), s, static_cast<int>(c.lhs.value));
    else fd::exclude(space(), s, static_cast<int>(c.lhs.value));
    return;
  }
  const fd::VarId x = int_operand(c.lhs);
  if (positive) fd::member(space(), x, s);
  else fd::not_member(space(), x, s);
}

fd::BoolExpr Executor::guard_expr(const Guard& g) {
  switch (g.kind) {
    case Guard::Kind::True: return fd::BoolExpr::constant(true);
    case Guard::Kind::False: return fd::BoolExpr::constant(false);
    case Guard::Kind::And:
    case Guard::Kind::Or: {
      std::vector<fd::BoolExpr> kids;
      for (const auto& k : g.kids) kids.push_back(guard_expr(k));
      return g.kind == Guard::Kind::And ? fd::BoolExpr::conj(std::move(kids)) : fd::BoolExpr::disj(std::move(kids));
    }
    case Guard::Kind::Not:
      return fd::BoolExpr::negation(guard_expr(g.kids.at(0)));
    case Guard::Kind::Leaf:
      break;
  }
  const Constraint c{g.leaf.kind, fold(g.leaf.lhs), g.leaf.rel, fold(g.leaf.rhs), g.leaf.span};
  if (c.kind == Constraint::Kind::Rel) {
    if (c.rhs.kind == Expr::Kind::Range || is_set_ref(c.lhs) || is_set_ref(c.rhs)) {
      throw UnsupportedProcess("guard '" + to_sexp(g) + "' compares set variables");
    }
    const LinearForm l = minus(linearize(c.lhs), linearize(c.rhs));
    return fd::BoolExpr::linear(l.terms, c.rel, -l.constant);
  }
  const bool negated = c.kind == Constraint::Kind::NotIn;
  if (c.rhs.kind == Expr::Kind::Range) {
    const auto [lo, hi] = range_bounds(c.rhs);
    const LinearForm l = linearize(c.lhs);
    fd::BoolExpr inside = fd::BoolExpr::conj({fd::BoolExpr::linear(l.terms, fd::Rel::Ge, lo - l.constant),
                                              fd::BoolExpr::linear(l.terms, fd::Rel::Le, hi - l.constant)});
    return negated ? fd::BoolExpr::negation(std::move(inside)) : inside;
  }
  const fd::VarId s = resolve(c.rhs);
  if (!s.is_set()) throw KindError("'" + to_sexp(c.rhs) + "' is not a set variable");
  return fd::BoolExpr::member(int_operand(c.lhs), s, negated);
}

void Executor::post_ask(const Guard& g, const P& cont) {
  const Guard f = fold(g);
  if (f.kind == Guard::Kind::True) {
    note_fired();
    execute(cont);
    return;
  }
  if (f.kind == Guard::Kind::False) return;
  const fd::VarId b = fd::reify(space(), guard_expr(f));
  space().post(std::make_unique<AskPropagator>(this, b, cont, to_sexp(f)));
}

void Executor::post_choice(std::vector<std::pair<Guard, P>> branches) {
  std::vector<std::pair<fd::VarId, P>> resolved;
  std::ostringstream text;
  text << "(sum";
  for (auto& [g, p] : branches) {
    const Guard f = fold(g);
    fd::VarId b;
    if (f.kind == Guard::Kind::True || f.kind == Guard::Kind::False) {
      b = space().constant(f.kind == Guard::Kind::True ? 1 : 0);
    } else {
      b = fd::reify(space(), guard_expr(f));
    }
    text << ' ' << to_sexp(f);
    resolved.emplace_back(b, std::move(p));
  }
  text << ')';
  space().post(std::make_unique<ChoicePropagator>(this, std::move(resolved), text.str()));
}

const VarValue& StoreSnapshot::at(const std::string& name) const {
  for (const auto& [n, v] : vars) {
    if (n == name) return v;
  }
  throw UndeclaredVariable("no variable '" + name + "' in snapshot");
}

StoreSnapshot snapshot_of(Executor& ex, bool failed) {
  StoreSnapshot out;
  out.vars = ex.binding().snapshot();
  out.failed = failed;
  out.blocked = ex.space().live("ask");
  for (auto& s : ex.space().live("choice")) out.blocked.push_back(std::move(s));
  out.fired = ex.counters().fired;
  out.executed = ex.counters().executed;
  return out;
}

StoreSnapshot run_ccp(const VariableRegistry& reg, const P& proc) {
  fd::Space space;
  LocalTable locals;
  Executor ex(reg, space, locals);
  ex.execute(proc);
  const bool failed = space.propagate() == fd::SpaceStatus::Failed;
  return snapshot_of(ex, failed);
}

}  // namespace ntcc::ccp
