#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include "ntcc/dsl/spec.hpp"
#include "ntcc/errors.hpp"

namespace ntcc::dsl {

namespace {

std::string where(const SourceSpan& s) {
  if (s.line == 0) return {};
  return " at " + std::to_string(s.line) + ":" + std::to_string(s.column);
}

class Resolver {
 public:
  Resolver(const ccp::VariableRegistry& reg, const std::map<std::string, std::size_t>& arities)
      : reg_(reg), arities_(arities) {}

  P proc(const P& p, std::vector<std::string> params) {
    params_ = std::move(params);
    locals_.clear();
    return resolve(p);
  }

 private:
  bool bound(const std::vector<std::string>& names, const std::string& n) const {
    return std::find(names.begin(), names.end(), n) != names.end();
  }

  Expr resolve(const Expr& e) {
    Expr out = e;
    switch (e.kind) {
      case Expr::Kind::Sym:
      case Expr::Kind::Var: {
        const bool scoped = e.kind == Expr::Kind::Sym && (bound(locals_, e.name) || bound(params_, e.name));
        if (scoped) {
          if (!e.kids.empty()) throw DimensionError("'" + e.name + "' is not an array" + where(e.span));
          out = bound(locals_, e.name) ? local_ref(e.name) : param(e.name);
          out.span = e.span;
          return out;
        }
        const ccp::VarDecl* d = reg_.find(e.name);
        if (!d) throw UnknownName("unknown name '" + e.name + "'" + where(e.span));
        if (d->dims.size() != e.kids.size())
          throw DimensionError("'" + e.name + "' has " + std::to_string(d->dims.size()) + " dimension(s), used with " +
                               std::to_string(e.kids.size()) + where(e.span));
        out.kind = Expr::Kind::Var;
        for (auto& k : out.kids) k = fold(resolve(k));
        return out;
      }
      default:
        for (auto& k : out.kids) k = resolve(k);
        return out;
    }
  }

  Constraint resolve(const Constraint& c) {
    Constraint out = c;
    out.lhs = resolve(c.lhs);
    out.rhs = resolve(c.rhs);
    return out;
  }

  Guard resolve(const Guard& g) {
    Guard out = g;
    if (g.kind == Guard::Kind::Leaf) out.leaf = resolve(g.leaf);
    for (auto& k : out.kids) k = resolve(k);
    return out;
  }

  P resolve(const P& p) {
    auto q = std::make_shared<Process>(*p);
    switch (q->kind) {
      case Process::Kind::Tell:
      case Process::Kind::PersistentTell:
        q->constraint = resolve(q->constraint);
        break;
      case Process::Kind::When:
      case Process::Kind::Unless:
        q->guard = resolve(q->guard);
        break;
      case Process::Kind::Sum:
        for (auto& g : q->guards) g = resolve(g);
        break;
      case Process::Kind::Call: {
        auto it = arities_.find(q->name);
        if (it == arities_.end()) throw UnknownName("unknown procedure '" + q->name + "'" + where(q->span));
        if (it->second != q->args.size())
          throw ArityError("procedure '" + q->name + "' takes " + std::to_string(it->second) + " argument(s), got " +
                           std::to_string(q->args.size()) + where(q->span));
        for (auto& a : q->args) a = resolve(a);
        break;
      }
      case Process::Kind::CellNew:
        for (auto& a : q->args) a = resolve(a);
        break;
      case Process::Kind::CellAssign:
      case Process::Kind::CellExch: {
        for (std::size_t i = 0; i + 1 < q->args.size(); ++i) q->args[i] = resolve(q->args[i]);
        params_.push_back(q->name);
        q->args.back() = resolve(q->args.back());
        params_.pop_back();
        break;
      }
      case Process::Kind::Local: {
        const std::size_t mark = locals_.size();
        for (const auto& d : q->locals) locals_.push_back(d.name);
        q->kids[0] = resolve(q->kids[0]);
        locals_.resize(mark);
        return P(std::move(q));
      }
      default:
        break;
    }
    for (auto& k : q->kids) k = resolve(k);
    return P(std::move(q));
  }

  const ccp::VariableRegistry& reg_;
  const std::map<std::string, std::size_t>& arities_;
  std::vector<std::string> params_;
  std::vector<std::string> locals_;
};

void collect_calls(const P& p, std::set<std::string>& out) {
  if (p->kind == Process::Kind::Call) out.insert(p->name);
  for (const auto& k : p->kids) collect_calls(k, out);
}

std::string rule_of(const std::exception& e) {
  if (dynamic_cast<const UnknownName*>(&e)) return "unknown-name";
  if (dynamic_cast<const ArityError*>(&e)) return "arity";
  if (dynamic_cast<const DimensionError*>(&e)) return "undeclared-dimension";
  return "error";
}

}  // namespace

Program elaborate(const SpecAst& ast, const std::vector<std::int64_t>& main_args) {
  Program prog;
  prog.general_recursion = ast.general_recursion;
  for (const auto& d : ast.vars) prog.registry.declare(d);

  std::map<std::string, std::size_t> arities;
  for (const auto& def : ast.procs) arities[def.name] = def.params.size();

  Resolver r(prog.registry, arities);
  for (const auto& def : ast.procs) {
    std::vector<std::string> names;
    for (const auto& p : def.params) names.push_back(p.name);
    ProcedureDef out = def;
    out.body = r.proc(def.body, names);
    prog.procedures[def.name] = std::move(out);
  }

  if (!ast.has_main) {
    prog.main = skip();
    return prog;
  }
  if (main_args.size() != ast.main_params.size())
    throw ArityError("main takes " + std::to_string(ast.main_params.size()) + " argument(s), got " +
                     std::to_string(main_args.size()));
  prog.main = r.proc(ast.main, ast.main_params);
  if (!ast.main_params.empty()) {
    Bindings b;
    for (std::size_t i = 0; i < main_args.size(); ++i) b.params[ast.main_params[i]] = lit(main_args[i]);
    prog.main = substitute(prog.main, b);
  }
  return prog;
}

SpecAst from_program(const Program& prog) {
  SpecAst ast;
  ast.vars = prog.registry.decls();
  for (const auto& [name, def] : prog.procedures) ast.procs.push_back(def);
  ast.has_main = true;
  ast.main = prog.main;
  ast.general_recursion = prog.general_recursion;
  return ast;
}

std::vector<Finding> lint(const SpecAst& ast) {
  std::vector<Finding> out;
  Program prog;
  try {
    prog = elaborate(ast, std::vector<std::int64_t>(ast.main_params.size(), 0));
  } catch (const Error& e) {
    out.push_back({rule_of(e), e.what(), {}, true});
    return out;
  }
  for (const auto& v : validate(prog)) out.push_back({v.rule, v.message, {}, true});

  // Procedures reachable from main; without a main, any reference counts.
  std::set<std::string> used;
  if (ast.has_main) {
    std::vector<std::string> todo;
    std::set<std::string> first;
    collect_calls(prog.main, first);
    todo.assign(first.begin(), first.end());
    while (!todo.empty()) {
      const std::string name = todo.back();
      todo.pop_back();
      if (!used.insert(name).second) continue;
      std::set<std::string> next;
      collect_calls(prog.procedures.at(name).body, next);
      todo.insert(todo.end(), next.begin(), next.end());
    }
  } else {
    for (const auto& def : ast.procs) {
      std::set<std::string> calls;
      collect_calls(def.body, calls);
      calls.erase(def.name);
      used.insert(calls.begin(), calls.end());
    }
  }
  for (const auto& def : ast.procs)
    if (!used.count(def.name))
      out.push_back({"unused-defproc", "procedure '" + def.name + "' is never called" + where(def.span), def.span, false});
  return out;
}

}  // namespace ntcc::dsl
