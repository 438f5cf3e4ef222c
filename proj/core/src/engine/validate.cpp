#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "ntcc/engine.hpp"

namespace ntcc {

namespace {

void walk_expr(const Expr& e, const std::function<void(const Expr&)>& f) {
  f(e);
  for (const auto& k : e.kids) walk_expr(k, f);
}

void walk_constraint(const Constraint& c, const std::function<void(const Expr&)>& f) {
  walk_expr(c.lhs, f);
  walk_expr(c.rhs, f);
}

void walk_guard(const Guard& g, const std::function<void(const Expr&)>& f) {
  if (g.kind == Guard::Kind::Leaf) walk_constraint(g.leaf, f);
  for (const auto& k : g.kids) walk_guard(k, f);
}

void walk_exprs(const P& p, const std::function<void(const Expr&)>& f) {
  const Process& q = *p;
  if (q.kind == Process::Kind::Tell || q.kind == Process::Kind::PersistentTell) walk_constraint(q.constraint, f);
  if (q.kind == Process::Kind::When || q.kind == Process::Kind::Unless) walk_guard(q.guard, f);
  for (const auto& g : q.guards) walk_guard(g, f);
  for (const auto& a : q.args) walk_expr(a, f);
  for (const auto& k : q.kids) walk_exprs(k, f);
}

void walk_procs(const P& p, const std::function<void(const Process&)>& f) {
  f(*p);
  for (const auto& k : p->kids) walk_procs(k, f);
}

bool mentions_variable(const Expr& e) {
  bool found = false;
  walk_expr(e, [&](const Expr& x) {
    if (x.kind == Expr::Kind::Var || x.kind == Expr::Kind::Sym || x.kind == Expr::Kind::Local) found = true;
  });
  return found;
}

void check_replicated_choice(const Process& q, const std::string& where, std::vector<Violation>& out) {
  if (q.kind != Process::Kind::Bang) return;
  const Process* x = &*q.body();
  // a single ! makes one choice per unit; nesting puts several copies in the same unit
  if (x->kind != Process::Kind::Bang) return;
  while (x->kind == Process::Kind::Bang) x = &*x->body();
  if (x->kind != Process::Kind::Sum) return;
  std::map<std::string, int> tells;
  for (const auto& k : x->kids) {
    if (k->kind == Process::Kind::Tell && k->constraint.kind == Constraint::Kind::Rel &&
        k->constraint.rel == fd::Rel::Eq) {
      ++tells[to_sexp(k->constraint.lhs)];
    }
  }
  for (const auto& [name, n] : tells) {
    if (n >= 2) {
      out.push_back({"inconsistent-replicated-choice",
                     where + ": replicated choice between tells on '" + name + "' makes the simulation inconsistent"});
    }
  }
}

void check_persistent(const Process& q, const std::string& where, std::vector<Violation>& out) {
  if (q.kind != Process::Kind::PersistentTell) return;
  const Constraint& c = q.constraint;
  const bool structured_member = c.kind != Constraint::Kind::Rel && c.rhs.kind != Expr::Kind::Range &&
                                 mentions_variable(c.lhs);
  const bool inequality = c.kind == Constraint::Kind::Rel && c.rel != fd::Rel::Eq && mentions_variable(c.rhs);
  if (structured_member || inequality) {
    out.push_back({"persistent-structured-rhs",
                   where + ": persistent tell " + to_sexp(c) + " would need the domain of a variable copied to the next unit"});
  }
}

// Procedures called from p without passing through a next or unless.
void unguarded_calls(const P& p, std::set<std::string>& out) {
  const Process& q = *p;
  if (q.kind == Process::Kind::Next || q.kind == Process::Kind::Unless) return;
  if (q.kind == Process::Kind::Call) out.insert(q.name);
  for (const auto& k : q.kids) unguarded_calls(k, out);
}

}  // namespace

std::vector<Violation> validate(const P& proc, const ProcedureTable& procs, const ccp::VariableRegistry* reg) {
  std::vector<Violation> out;
  std::vector<std::pair<std::string, const P*>> roots;
  roots.emplace_back("main", &proc);
  for (const auto& [name, def] : procs) roots.emplace_back("procedure " + name, &def.body);

  for (const auto& [where, root] : roots) {
    walk_procs(*root, [&](const Process& q) {
      check_replicated_choice(q, where, out);
      check_persistent(q, where, out);
    });
    if (!reg) continue;
    std::set<std::string> reported;
    walk_exprs(*root, [&](const Expr& e) {
      if (e.kind != Expr::Kind::Var && e.kind != Expr::Kind::Sym) return;
      const ccp::VarDecl* d = reg->find(e.name);
      if (!d || d->dims.size() == e.kids.size()) return;
      if (!reported.insert(e.name).second) return;
      out.push_back({"undeclared-dimension", where + ": '" + e.name + "' is accessed with " +
                                                 std::to_string(e.kids.size()) + " index(es) but declared with " +
                                                 std::to_string(d->dims.size()) + " dimension(s)"});
    });
  }

  std::map<std::string, std::set<std::string>> graph;
  for (const auto& [name, def] : procs) unguarded_calls(def.body, graph[name]);
  for (const auto& [name, def] : procs) {
    // Depth-first reachability from the callees of `name` back to `name`.
    std::set<std::string> seen;
    std::vector<std::string> stack(graph[name].begin(), graph[name].end());
    bool cyclic = false;
    while (!stack.empty() && !cyclic) {
      std::string cur = stack.back();
      stack.pop_back();
      if (cur == name) cyclic = true;
      if (!seen.insert(cur).second) continue;
      auto it = graph.find(cur);
      if (it != graph.end()) stack.insert(stack.end(), it->second.begin(), it->second.end());
    }
    if (cyclic) {
      out.push_back({"unguarded-recursion",
                     "procedure " + name + " reaches a recursive call that is not under next or unless"});
    }
  }
  std::vector<Violation> unique;
  for (auto& v : out)
    if (std::find(unique.begin(), unique.end(), v) == unique.end()) unique.push_back(std::move(v));
  return unique;
}

std::vector<Violation> validate(const Program& prog) {
  auto out = validate(prog.main, prog.procedures, &prog.registry);
  if (prog.general_recursion)
    std::erase_if(out, [](const Violation& v) { return v.rule == "unguarded-recursion"; });
  return out;
}

}  // namespace ntcc
