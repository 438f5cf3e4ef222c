#include "ntcc/process.hpp"

#include <sstream>

#include "ntcc/errors.hpp"

namespace ntcc {

namespace {

std::shared_ptr<Process> make(Process::Kind kind) {
  auto p = std::make_shared<Process>();
  p->kind = kind;
  return p;
}

Expr binary(Expr::Kind kind, Expr a, Expr b) {
  Expr e;
  e.kind = kind;
  e.kids.push_back(std::move(a));
  e.kids.push_back(std::move(b));
  return e;
}

}  // namespace

P::P() : p_(make(Process::Kind::Skip)) {}

bool operator==(const P& a, const P& b) { return a.p_ == b.p_ || *a.p_ == *b.p_; }

std::string_view to_string(Process::Kind kind) {
  switch (kind) {
    case Process::Kind::Skip: return "skip";
    case Process::Kind::Tell: return "tell";
    case Process::Kind::When: return "when";
    case Process::Kind::Par: return "par";
    case Process::Kind::Local: return "local";
    case Process::Kind::Next: return "next";
    case Process::Kind::Unless: return "unless";
    case Process::Kind::Bang: return "bang";
    case Process::Kind::Star: return "star";
    case Process::Kind::Sum: return "sum";
    case Process::Kind::Call: return "call";
    case Process::Kind::CellNew: return "cell";
    case Process::Kind::CellAssign: return "assign";
    case Process::Kind::CellExch: return "exch";
    case Process::Kind::PersistentTell: return "ptell";
  }
  return "?";
}

Expr lit(std::int64_t v) {
  Expr e;
  e.value = v;
  return e;
}

Expr param(std::string name) {
  Expr e;
  e.kind = Expr::Kind::Param;
  e.name = std::move(name);
  return e;
}

Expr var(std::string name, std::vector<Expr> indices) {
  Expr e;
  e.kind = Expr::Kind::Var;
  e.name = std::move(name);
  e.kids = std::move(indices);
  return e;
}

Expr local_ref(std::string name) {
  Expr e;
  e.kind = Expr::Kind::Local;
  e.name = std::move(name);
  return e;
}

Expr range(Expr lo, Expr hi) { return binary(Expr::Kind::Range, std::move(lo), std::move(hi)); }
Expr operator+(Expr a, Expr b) { return binary(Expr::Kind::Add, std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return binary(Expr::Kind::Sub, std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return binary(Expr::Kind::Mul, std::move(a), std::move(b)); }

Expr operator-(Expr a) {
  Expr e;
  e.kind = Expr::Kind::Neg;
  e.kids.push_back(std::move(a));
  return e;
}

Constraint rel(Expr lhs, fd::Rel r, Expr rhs) {
  Constraint c;
  c.lhs = std::move(lhs);
  c.rel = r;
  c.rhs = std::move(rhs);
  return c;
}

Constraint eq(Expr lhs, Expr rhs) { return rel(std::move(lhs), fd::Rel::Eq, std::move(rhs)); }
Constraint ne(Expr lhs, Expr rhs) { return rel(std::move(lhs), fd::Rel::Ne, std::move(rhs)); }
Constraint lt(Expr lhs, Expr rhs) { return rel(std::move(lhs), fd::Rel::Lt, std::move(rhs)); }
Constraint le(Expr lhs, Expr rhs) { return rel(std::move(lhs), fd::Rel::Le, std::move(rhs)); }
Constraint gt(Expr lhs, Expr rhs) { return rel(std::move(lhs), fd::Rel::Gt, std::move(rhs)); }
Constraint ge(Expr lhs, Expr rhs) { return rel(std::move(lhs), fd::Rel::Ge, std::move(rhs)); }

Constraint in(Expr elem, Expr set) {
  Constraint c;
  c.kind = Constraint::Kind::In;
  c.lhs = std::move(elem);
  c.rhs = std::move(set);
  return c;
}

Constraint notin(Expr elem, Expr set) {
  Constraint c = in(std::move(elem), std::move(set));
  c.kind = Constraint::Kind::NotIn;
  return c;
}

Guard guard(Constraint c) {
  Guard g;
  g.kind = Guard::Kind::Leaf;
  g.leaf = std::move(c);
  return g;
}

Guard g_true() { return Guard{}; }

Guard g_false() {
  Guard g;
  g.kind = Guard::Kind::False;
  return g;
}

Guard g_and(std::vector<Guard> kids) {
  Guard g;
  g.kind = Guard::Kind::And;
  g.kids = std::move(kids);
  return g;
}

Guard g_or(std::vector<Guard> kids) {
  Guard g;
  g.kind = Guard::Kind::Or;
  g.kids = std::move(kids);
  return g;
}

Guard g_not(Guard kid) {
  Guard g;
  g.kind = Guard::Kind::Not;
  g.kids.push_back(std::move(kid));
  return g;
}

P skip() { return P(make(Process::Kind::Skip)); }

P tell(Constraint c) {
  auto p = make(Process::Kind::Tell);
  p->constraint = std::move(c);
  return P(std::move(p));
}

P when(Guard g, P body) {
  auto p = make(Process::Kind::When);
  p->guard = std::move(g);
  p->kids.push_back(std::move(body));
  return P(std::move(p));
}

P par(std::vector<P> kids) {
  auto p = make(Process::Kind::Par);
  p->kids = std::move(kids);
  return P(std::move(p));
}

P local(std::vector<LocalDecl> decls, P body) {
  auto p = make(Process::Kind::Local);
  p->locals = std::move(decls);
  p->kids.push_back(std::move(body));
  return P(std::move(p));
}

P next(P body, int delay) {
  if (delay < 1) throw ArityError("next: delay must be at least 1");
  auto p = make(Process::Kind::Next);
  p->delay = delay;
  p->kids.push_back(std::move(body));
  return P(std::move(p));
}

P unless(Guard g, P body) {
  auto p = make(Process::Kind::Unless);
  p->guard = std::move(g);
  p->kids.push_back(std::move(body));
  return P(std::move(p));
}

P bang(P body) {
  auto p = make(Process::Kind::Bang);
  p->kids.push_back(std::move(body));
  return P(std::move(p));
}

P star(P body) {
  auto p = make(Process::Kind::Star);
  p->kids.push_back(std::move(body));
  return P(std::move(p));
}

P sum(std::vector<std::pair<Guard, P>> branches) {
  if (branches.empty()) throw ArityError("sum: at least one branch is required");
  auto p = make(Process::Kind::Sum);
  for (auto& [g, q] : branches) {
    p->guards.push_back(std::move(g));
    p->kids.push_back(std::move(q));
  }
  return P(std::move(p));
}

P choice(std::vector<P> kids) {
  std::vector<std::pair<Guard, P>> branches;
  for (auto& k : kids) branches.emplace_back(g_true(), std::move(k));
  return sum(std::move(branches));
}

P call(std::string name, std::vector<Expr> args) {
  auto p = make(Process::Kind::Call);
  p->name = std::move(name);
  p->args = std::move(args);
  return P(std::move(p));
}

P cell_new(Expr target, Expr init) {
  auto p = make(Process::Kind::CellNew);
  p->args = {std::move(target), std::move(init)};
  return P(std::move(p));
}

P cell_assign(Expr target, std::string param_name, Expr fn) {
  auto p = make(Process::Kind::CellAssign);
  p->name = std::move(param_name);
  p->args = {std::move(target), std::move(fn)};
  return P(std::move(p));
}

P cell_exch(Expr x, Expr y, std::string param_name, Expr fn) {
  auto p = make(Process::Kind::CellExch);
  p->name = std::move(param_name);
  p->args = {std::move(x), std::move(y), std::move(fn)};
  return P(std::move(p));
}

P ptell(Constraint c) {
  auto p = make(Process::Kind::PersistentTell);
  p->constraint = std::move(c);
  return P(std::move(p));
}

// --- folding / substitution -------------------------------------------------

namespace {

std::int64_t checked(std::int64_t v) {
  if (v < -(std::int64_t{1} << 40) || v > (std::int64_t{1} << 40)) {
    throw EvaluationError("integer expression overflows: " + std::to_string(v));
  }
  return v;
}

// Folds the node itself assuming its kids are already folded.
Expr fold_node(Expr e) {
  auto all_const = [&] {
    for (const auto& k : e.kids) {
      if (!k.is_const()) return false;
    }
    return true;
  };
  switch (e.kind) {
    case Expr::Kind::Add:
      if (all_const()) return lit(checked(e.kids[0].value + e.kids[1].value));
      break;
    case Expr::Kind::Sub:
      if (all_const()) return lit(checked(e.kids[0].value - e.kids[1].value));
      break;
    case Expr::Kind::Mul:
      if (all_const()) return lit(checked(e.kids[0].value * e.kids[1].value));
      break;
    case Expr::Kind::Neg:
      if (all_const()) return lit(-e.kids[0].value);
      break;
    default:
      break;
  }
  return e;
}

struct Rewriter {
  const Bindings* b = nullptr;
  // Names currently shadowed by an inner binder (lambda parameter or local).
  std::vector<std::string> hidden_params;
  std::vector<std::string> hidden_locals;

  static bool contains(const std::vector<std::string>& v, const std::string& s) {
    for (const auto& x : v) {
      if (x == s) return true;
    }
    return false;
  }

  // Returns nullopt when nothing changed.
  std::optional<Expr> expr(const Expr& e) {
    if (e.kind == Expr::Kind::Param && b && !contains(hidden_params, e.name)) {
      auto it = b->params.find(e.name);
      if (it != b->params.end()) return it->second;
    }
    if (e.kind == Expr::Kind::Local && e.local_id < 0 && b && !contains(hidden_locals, e.name)) {
      auto it = b->locals.find(e.name);
      if (it != b->locals.end()) {
        Expr out = e;
        out.local_id = it->second;
        return out;
      }
    }
    std::optional<Expr> out;
    for (std::size_t i = 0; i < e.kids.size(); ++i) {
      auto k = expr(e.kids[i]);
      if (!k) continue;
      if (!out) out = e;
      out->kids[i] = std::move(*k);
    }
    if (out) return fold_node(std::move(*out));
    Expr folded = fold_node(e);
    if (folded.kind != e.kind) return folded;
    return std::nullopt;
  }

  Expr expr_or(const Expr& e, bool& changed) {
    auto r = expr(e);
    if (!r) return e;
    changed = true;
    return std::move(*r);
  }

  std::optional<Constraint> constraint(const Constraint& c) {
    bool changed = false;
    Expr l = expr_or(c.lhs, changed);
    Expr r = expr_or(c.rhs, changed);
    if (!changed) return std::nullopt;
    Constraint out = c;
    out.lhs = std::move(l);
    out.rhs = std::move(r);
    return out;
  }

  std::optional<Guard> guard(const Guard& g) {
    std::optional<Guard> out;
    if (g.kind == Guard::Kind::Leaf) {
      auto c = constraint(g.leaf);
      if (c) {
        out = g;
        out->leaf = std::move(*c);
      }
    } else {
      for (std::size_t i = 0; i < g.kids.size(); ++i) {
        auto k = guard(g.kids[i]);
        if (!k) continue;
        if (!out) out = g;
        out->kids[i] = std::move(*k);
      }
    }
    if (out) return fold(*out);
    Guard folded = fold(g);
    if (!(folded == g)) return folded;
    return std::nullopt;
  }

  std::optional<P> process(const P& p) {
    const Process& q = *p;
    std::optional<Process> out;
    auto touch = [&]() -> Process& {
      if (!out) out = q;
      return *out;
    };

    if (q.kind == Process::Kind::Tell || q.kind == Process::Kind::PersistentTell) {
      if (auto c = constraint(q.constraint)) touch().constraint = std::move(*c);
    }
    if (q.kind == Process::Kind::When || q.kind == Process::Kind::Unless) {
      if (auto g = guard(q.guard)) touch().guard = std::move(*g);
    }
    for (std::size_t i = 0; i < q.guards.size(); ++i) {
      if (auto g = guard(q.guards[i])) touch().guards[i] = std::move(*g);
    }

    const bool lambda = q.kind == Process::Kind::CellAssign || q.kind == Process::Kind::CellExch;
    for (std::size_t i = 0; i < q.args.size(); ++i) {
      const bool fn = lambda && i + 1 == q.args.size();
      if (fn) hidden_params.push_back(q.name);
      auto a = expr(q.args[i]);
      if (fn) hidden_params.pop_back();
      if (a) touch().args[i] = std::move(*a);
    }

    std::size_t pushed = 0;
    if (q.kind == Process::Kind::Local) {
      for (const auto& d : q.locals) {
        hidden_locals.push_back(d.name);
        ++pushed;
      }
    }
    for (std::size_t i = 0; i < q.kids.size(); ++i) {
      if (auto k = process(q.kids[i])) touch().kids[i] = std::move(*k);
    }
    for (std::size_t i = 0; i < pushed; ++i) hidden_locals.pop_back();

    if (!out) return std::nullopt;
    return P(std::make_shared<const Process>(std::move(*out)));
  }
};

}  // namespace

Expr fold(const Expr& e) {
  Rewriter r;
  auto out = r.expr(e);
  return out ? *out : e;
}

Guard fold(const Guard& g) {
  switch (g.kind) {
    case Guard::Kind::Leaf: {
      const auto& c = g.leaf;
      if (c.kind == Constraint::Kind::Rel && c.lhs.is_const() && c.rhs.is_const()) {
        return fd::holds(c.lhs.value, c.rel, c.rhs.value) ? g_true() : g_false();
      }
      if (c.kind != Constraint::Kind::Rel && c.lhs.is_const() && c.rhs.kind == Expr::Kind::Range &&
          c.rhs.kids[0].is_const() && c.rhs.kids[1].is_const()) {
        const bool inside = c.lhs.value >= c.rhs.kids[0].value && c.lhs.value <= c.rhs.kids[1].value;
        return inside == (c.kind == Constraint::Kind::In) ? g_true() : g_false();
      }
      return g;
    }
    case Guard::Kind::And:
    case Guard::Kind::Or: {
      const bool is_and = g.kind == Guard::Kind::And;
      const Guard::Kind absorbing = is_and ? Guard::Kind::False : Guard::Kind::True;
      std::vector<Guard> kept;
      for (const auto& k : g.kids) {
        Guard f = fold(k);
        if (f.kind == absorbing) return f;
        if (f.kind == (is_and ? Guard::Kind::True : Guard::Kind::False)) continue;
        kept.push_back(std::move(f));
      }
      if (kept.empty()) return is_and ? g_true() : g_false();
      Guard out = g;
      out.kids = std::move(kept);
      return out;
    }
    case Guard::Kind::Not: {
      Guard k = fold(g.kids.at(0));
      if (k.kind == Guard::Kind::True) return g_false();
      if (k.kind == Guard::Kind::False) return g_true();
      Guard out = g;
      out.kids[0] = std::move(k);
      return out;
    }
    default:
      return g;
  }
}

Expr substitute(const Expr& e, const Bindings& b) {
  Rewriter r{&b, {}, {}};
  auto out = r.expr(e);
  return out ? *out : e;
}

Constraint substitute(const Constraint& c, const Bindings& b) {
  Rewriter r{&b, {}, {}};
  auto out = r.constraint(c);
  return out ? *out : c;
}

Guard substitute(const Guard& g, const Bindings& b) {
  Rewriter r{&b, {}, {}};
  auto out = r.guard(g);
  return out ? *out : g;
}

P substitute(const P& p, const Bindings& b) {
  Rewriter r{&b, {}, {}};
  auto out = r.process(p);
  return out ? *out : p;
}

std::int64_t evaluate(const Expr& e, const std::map<std::string, std::int64_t>& env) {
  switch (e.kind) {
    case Expr::Kind::Const: return e.value;
    case Expr::Kind::Param:
    case Expr::Kind::Sym: {
      auto it = env.find(e.name);
      if (it == env.end()) throw EvaluationError("unbound name '" + e.name + "' in expression");
      return it->second;
    }
    case Expr::Kind::Add: return checked(evaluate(e.kids[0], env) + evaluate(e.kids[1], env));
    case Expr::Kind::Sub: return checked(evaluate(e.kids[0], env) - evaluate(e.kids[1], env));
    case Expr::Kind::Mul: return checked(evaluate(e.kids[0], env) * evaluate(e.kids[1], env));
    case Expr::Kind::Neg: return -evaluate(e.kids[0], env);
    default:
      throw EvaluationError("expression '" + to_sexp(e) + "' is not a ground integer");
  }
}

// --- printing -----------------------------------------------------------------

namespace {

void print(std::ostream& os, const Expr& e);

void print_index(std::ostream& os, const Expr& e) {
  os << '[';
  print(os, e);
  os << ']';
}

void print(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Const: os << e.value; return;
    case Expr::Kind::Param: os << e.name; return;
    case Expr::Kind::Local: os << e.name; return;
    case Expr::Kind::Sym:
    case Expr::Kind::Var:
      os << e.name;
      for (const auto& k : e.kids) print_index(os, k);
      return;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Mul:
      os << '(' << (e.kind == Expr::Kind::Add ? '+' : e.kind == Expr::Kind::Sub ? '-' : '*') << ' ';
      print(os, e.kids[0]);
      os << ' ';
      print(os, e.kids[1]);
      os << ')';
      return;
    case Expr::Kind::Neg:
      os << "(- ";
      print(os, e.kids[0]);
      os << ')';
      return;
    case Expr::Kind::Range:
      os << "(range ";
      print(os, e.kids[0]);
      os << ' ';
      print(os, e.kids[1]);
      os << ')';
      return;
  }
}

std::string_view guard_rel(fd::Rel r) {
  switch (r) {
    case fd::Rel::Eq: return "=";
    case fd::Rel::Ne: return "!=";
    case fd::Rel::Lt: return "v<";
    case fd::Rel::Le: return "v<=";
    case fd::Rel::Gt: return "v>";
    case fd::Rel::Ge: return "v>=";
  }
  return "?";
}

void print(std::ostream& os, const Constraint& c, bool in_guard) {
  os << '(';
  if (c.kind == Constraint::Kind::Rel) os << (in_guard ? guard_rel(c.rel) : fd::to_string(c.rel));
  else os << (c.kind == Constraint::Kind::In ? "in" : "notin");
  os << ' ';
  print(os, c.lhs);
  os << ' ';
  print(os, c.rhs);
  os << ')';
}

void print(std::ostream& os, const Guard& g) {
  switch (g.kind) {
    case Guard::Kind::True: os << "true"; return;
    case Guard::Kind::False: os << "false"; return;
    case Guard::Kind::Leaf: print(os, g.leaf, true); return;
    case Guard::Kind::And:
    case Guard::Kind::Or:
    case Guard::Kind::Not:
      os << '(' << (g.kind == Guard::Kind::And ? "and" : g.kind == Guard::Kind::Or ? "or" : "not");
      for (const auto& k : g.kids) {
        os << ' ';
        print(os, k);
      }
      os << ')';
      return;
  }
}

void print(std::ostream& os, const P& p) {
  const Process& q = *p;
  auto lambda = [&](const Expr& fn) {
    os << " (lambda (" << q.name << ") ";
    print(os, fn);
    os << ')';
  };
  switch (q.kind) {
    case Process::Kind::Skip: os << "(skip)"; return;
    case Process::Kind::Tell:
    case Process::Kind::PersistentTell:
      os << (q.kind == Process::Kind::Tell ? "(tell " : "(ptell ");
      print(os, q.constraint, false);
      os << ')';
      return;
    case Process::Kind::When:
    case Process::Kind::Unless:
      os << (q.kind == Process::Kind::When ? "(when " : "(unless ");
      print(os, q.guard);
      os << ' ';
      print(os, q.body());
      os << ')';
      return;
    case Process::Kind::Par:
      os << "(||";
      for (const auto& k : q.kids) {
        os << ' ';
        print(os, k);
      }
      os << ')';
      return;
    case Process::Kind::Local:
      os << "(local (";
      for (std::size_t i = 0; i < q.locals.size(); ++i) {
        const auto& d = q.locals[i];
        if (i) os << ' ';
        if (d.lo == LocalDecl::kDefaultLo && d.hi == LocalDecl::kDefaultHi) os << d.name;
        else os << '(' << d.name << ' ' << d.lo << ' ' << d.hi << ')';
      }
      os << ") ";
      print(os, q.body());
      os << ')';
      return;
    case Process::Kind::Next:
      if (q.delay == 1) os << "(next ";
      else os << "(nextn " << q.delay << ' ';
      print(os, q.body());
      os << ')';
      return;
    case Process::Kind::Bang:
    case Process::Kind::Star:
      os << (q.kind == Process::Kind::Bang ? "(! " : "(* ");
      print(os, q.body());
      os << ')';
      return;
    case Process::Kind::Sum: {
      bool all_true = true;
      for (const auto& g : q.guards) all_true = all_true && g.kind == Guard::Kind::True;
      if (all_true) {
        os << "(+";
        for (const auto& k : q.kids) {
          os << ' ';
          print(os, k);
        }
      } else {
        os << "(sum";
        for (std::size_t i = 0; i < q.kids.size(); ++i) {
          os << " (";
          print(os, q.guards[i]);
          os << ' ';
          print(os, q.kids[i]);
          os << ')';
        }
      }
      os << ')';
      return;
    }
    case Process::Kind::Call:
      os << "(call " << q.name;
      for (const auto& a : q.args) {
        os << ' ';
        print(os, a);
      }
      os << ')';
      return;
    case Process::Kind::CellNew:
      os << "(cell ";
      print(os, q.args[0]);
      os << ' ';
      print(os, q.args[1]);
      os << ')';
      return;
    case Process::Kind::CellAssign:
      os << "(assign ";
      print(os, q.args[0]);
      lambda(q.args[1]);
      os << ')';
      return;
    case Process::Kind::CellExch:
      os << "(exch ";
      print(os, q.args[0]);
      os << ' ';
      print(os, q.args[1]);
      lambda(q.args[2]);
      os << ')';
      return;
  }
}

template <class T>
std::string render(const T& v) {
  std::ostringstream os;
  print(os, v);
  return os.str();
}

}  // namespace

std::string to_sexp(const Expr& e) { return render(e); }

std::string to_sexp(const Constraint& c) {
  std::ostringstream os;
  print(os, c, false);
  return os.str();
}

std::string to_sexp(const Guard& g) { return render(g); }
std::string to_sexp(const P& p) { return render(p); }

}  // namespace ntcc
