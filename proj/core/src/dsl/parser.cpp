#include <charconv>
#include <map>
#include <memory>
#include <set>

#include "ntcc/dsl/sexp.hpp"
#include "ntcc/dsl/spec.hpp"
#include "ntcc/errors.hpp"

namespace ntcc::dsl {

namespace {

[[noreturn]] void fail(const Sexp& at, const std::string& what) {
  throw SyntaxError(what, at.span.line, at.span.column);
}

P spanned(P p, SourceSpan span) {
  auto copy = std::make_shared<Process>(*p);
  copy->span = span;
  return P(std::move(copy));
}

bool parse_int(const std::string& text, std::int64_t& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [p, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && p == last;
}

const std::set<std::string, std::less<>> kKeywords = {
    "skip", "tell", "ptell", "when", "unless", "next", "nextn", "nextnp", "||", "par", "local", "!",
    "*",    "+",    "sum",   "call", "cell",   "assign", "exch", "lambda", "declare-var", "defproc",
    "main", "option"};

class Parser {
 public:
  SpecAst run(std::string_view text) {
    SpecAst ast;
    for (const auto& form : read_all(text)) top(ast, form);
    for (const auto& [name, at] : sugar_calls_)
      if (!procs_.count(name)) fail(at, "unknown form '" + name + "'");
    return ast;
  }

 private:
  void top(SpecAst& ast, const Sexp& f) {
    const auto head = f.head();
    if (head == "declare-var") return declare(ast, f);
    if (head == "defproc") return defproc(ast, f);
    if (head == "option") {
      if (f.items.size() != 2 || !f.items[1].is_atom("general-recursion")) fail(f, "unknown option");
      ast.general_recursion = true;
      return;
    }
    if (head == "main") {
      if (ast.has_main) fail(f, "main defined twice");
      if (f.items.size() == 3) {
        if (!f.items[1].is_list()) fail(f.items[1], "main parameters must be a list");
        for (const auto& p : f.items[1].items) ast.main_params.push_back(name_of(p));
      } else if (f.items.size() != 2) {
        fail(f, "main takes a body, optionally preceded by a parameter list");
      }
      ast.has_main = true;
      ast.main_span = f.span;
      ast.main = process(f.items.back());
      return;
    }
    fail(f, "expected declare-var, defproc, main or option");
  }

  static std::string name_of(const Sexp& s) {
    std::int64_t dummy = 0;
    if (!s.is_atom() || !s.indices.empty() || parse_int(s.text, dummy)) fail(s, "expected a name");
    return s.text;
  }

  static int int_of(const Sexp& s) {
    std::int64_t v = 0;
    if (!s.is_atom() || !s.indices.empty() || !parse_int(s.text, v)) fail(s, "expected an integer");
    if (v < INT32_MIN || v > INT32_MAX) fail(s, "integer out of range");
    return static_cast<int>(v);
  }

  void declare(SpecAst& ast, const Sexp& f) {
    if (f.items.size() < 3) fail(f, "declare-var needs a name and a kind");
    ccp::VarDecl d;
    d.span = f.span;
    d.name = name_of(f.items[1]);
    const auto& kind = f.items[2];
    std::size_t i = 3;
    if (kind.is_atom("bool")) {
      d.kind = fd::VarKind::Bool;
      d.lo = 0;
      d.hi = 1;
    } else if (kind.is_atom("int") || kind.is_atom("set")) {
      d.kind = kind.is_atom("int") ? fd::VarKind::Int : fd::VarKind::Set;
      if (f.items.size() < 5) fail(f, "declare-var " + kind.text + " needs lo and hi");
      d.lo = int_of(f.items[3]);
      d.hi = int_of(f.items[4]);
      i = 5;
    } else {
      fail(kind, "unknown variable kind");
    }
    if (i < f.items.size()) {
      const auto& dim = f.items[i];
      if (dim.head() != "dim" || dim.items.size() < 2) fail(dim, "expected (dim d ...)");
      for (std::size_t k = 1; k < dim.items.size(); ++k) d.dims.push_back(int_of(dim.items[k]));
      ++i;
    }
    if (i != f.items.size()) fail(f.items[i], "unexpected item in declare-var");
    for (const auto& v : ast.vars)
      if (v.name == d.name) fail(f, "variable '" + d.name + "' declared twice");
    ast.vars.push_back(std::move(d));
  }

  void defproc(SpecAst& ast, const Sexp& f) {
    if (f.items.size() != 4 || !f.items[2].is_list()) fail(f, "expected (defproc Name (params) body)");
    ProcedureDef def;
    def.span = f.span;
    def.name = name_of(f.items[1]);
    if (kKeywords.count(def.name)) fail(f.items[1], "'" + def.name + "' is reserved");
    if (procs_.count(def.name)) fail(f, "procedure '" + def.name + "' defined twice");
    for (const auto& p : f.items[2].items) {
      if (p.head() == "var") {
        if (p.items.size() != 2) fail(p, "expected (var name)");
        def.params.push_back({name_of(p.items[1]), true});
      } else {
        def.params.push_back({name_of(p), false});
      }
    }
    procs_.insert(def.name);
    def.body = process(f.items[3]);
    ast.procs.push_back(std::move(def));
  }

  Expr expr(const Sexp& s) {
    Expr e;
    if (s.is_atom()) {
      std::int64_t v = 0;
      if (s.indices.empty() && parse_int(s.text, v)) {
        e = lit(v);
      } else {
        if (parse_int(s.text, v)) fail(s, "indexed integer");
        e.kind = Expr::Kind::Sym;
        e.name = s.text;
        for (const auto& i : s.indices) e.kids.push_back(expr(i));
      }
      e.span = s.span;
      return e;
    }
    const auto head = s.head();
    const std::size_t n = s.items.size();
    if (head == "range") {
      if (n != 3) fail(s, "range takes two operands");
      e = range(expr(s.items[1]), expr(s.items[2]));
    } else if (head == "-" && n == 2) {
      e = -expr(s.items[1]);
    } else if (head == "+" || head == "-" || head == "*") {
      if (n < 3) fail(s, "'" + std::string(head) + "' needs at least two operands");
      e = expr(s.items[1]);
      for (std::size_t i = 2; i < n; ++i) {
        Expr r = expr(s.items[i]);
        e = head == "+" ? e + r : head == "-" ? e - r : e * r;
      }
    } else {
      fail(s, "expected an expression");
    }
    e.span = s.span;
    return e;
  }

  static bool rel_of(std::string_view op, fd::Rel& r) {
    if (op.starts_with("v")) op.remove_prefix(1);
    if (op == "=") r = fd::Rel::Eq;
    else if (op == "!=") r = fd::Rel::Ne;
    else if (op == "<") r = fd::Rel::Lt;
    else if (op == "<=") r = fd::Rel::Le;
    else if (op == ">") r = fd::Rel::Gt;
    else if (op == ">=") r = fd::Rel::Ge;
    else return false;
    return true;
  }

  Constraint constraint(const Sexp& s) {
    const auto head = s.head();
    if (s.items.size() != 3) fail(s, "expected a binary constraint");
    Constraint c;
    fd::Rel r{};
    if (head == "in") c = in(expr(s.items[1]), expr(s.items[2]));
    else if (head == "notin") c = notin(expr(s.items[1]), expr(s.items[2]));
    else if (rel_of(head, r)) c = rel(expr(s.items[1]), r, expr(s.items[2]));
    else fail(s, "unknown constraint '" + std::string(head) + "'");
    c.span = s.span;
    return c;
  }

  Guard guard_of(const Sexp& s) {
    Guard g;
    if (s.is_atom("true")) g = g_true();
    else if (s.is_atom("false")) g = g_false();
    else if (s.head() == "and" || s.head() == "or") {
      std::vector<Guard> kids;
      for (std::size_t i = 1; i < s.items.size(); ++i) kids.push_back(guard_of(s.items[i]));
      g = s.head() == "and" ? g_and(std::move(kids)) : g_or(std::move(kids));
    } else if (s.head() == "not") {
      if (s.items.size() != 2) fail(s, "not takes one guard");
      g = g_not(guard_of(s.items[1]));
    } else if (s.is_list()) {
      g = guard(constraint(s));
    } else {
      fail(s, "expected a guard");
    }
    g.span = s.span;
    return g;
  }

  void arity(const Sexp& s, std::size_t n) {
    if (s.items.size() != n)
      fail(s, "'" + std::string(s.head()) + "' takes " + std::to_string(n - 1) + " argument(s)");
  }

  std::vector<P> kids_from(const Sexp& s, std::size_t first) {
    std::vector<P> kids;
    for (std::size_t i = first; i < s.items.size(); ++i) kids.push_back(process(s.items[i]));
    return kids;
  }

  std::pair<std::string, Expr> lambda(const Sexp& s) {
    if (s.head() != "lambda" || s.items.size() != 3 || !s.items[1].is_list() || s.items[1].items.size() != 1)
      fail(s, "expected (lambda (v) e)");
    return {name_of(s.items[1].items[0]), expr(s.items[2])};
  }

  P process(const Sexp& s) {
    if (!s.is_list() || s.items.empty()) fail(s, "expected a process");
    const std::string head(s.head());
    if (head.empty()) fail(s, "expected a process");
    P p;
    if (head == "skip") {
      arity(s, 1);
      p = skip();
    } else if (head == "tell" || head == "ptell") {
      arity(s, 2);
      p = head == "tell" ? tell(constraint(s.items[1])) : ptell(constraint(s.items[1]));
    } else if (head == "when" || head == "unless") {
      arity(s, 3);
      Guard g = guard_of(s.items[1]);
      p = head == "when" ? when(std::move(g), process(s.items[2])) : unless(std::move(g), process(s.items[2]));
    } else if (head == "next" || head == "nextnp") {
      arity(s, 2);
      p = next(process(s.items[1]));
    } else if (head == "nextn") {
      arity(s, 3);
      const int k = int_of(s.items[1]);
      if (k < 1) fail(s.items[1], "nextn delay must be at least 1");
      p = next(process(s.items[2]), k);
    } else if (head == "||" || head == "par") {
      p = par(kids_from(s, 1));
    } else if (head == "local") {
      arity(s, 3);
      if (!s.items[1].is_list()) fail(s.items[1], "expected a list of locals");
      std::vector<LocalDecl> decls;
      for (const auto& d : s.items[1].items) {
        if (d.is_list()) {
          if (d.items.size() != 3) fail(d, "expected (name lo hi)");
          decls.push_back({name_of(d.items[0]), int_of(d.items[1]), int_of(d.items[2])});
        } else {
          decls.push_back({name_of(d)});
        }
      }
      p = local(std::move(decls), process(s.items[2]));
    } else if (head == "!" || head == "*") {
      arity(s, 2);
      p = head == "!" ? bang(process(s.items[1])) : star(process(s.items[1]));
    } else if (head == "+") {
      p = choice(kids_from(s, 1));
    } else if (head == "sum") {
      std::vector<std::pair<Guard, P>> branches;
      for (std::size_t i = 1; i < s.items.size(); ++i) {
        const auto& b = s.items[i];
        if (!b.is_list() || b.items.size() != 2) fail(b, "expected (guard process)");
        Guard g = guard_of(b.items[0]);
        branches.emplace_back(std::move(g), process(b.items[1]));
      }
      p = sum(std::move(branches));
    } else if (head == "cell") {
      arity(s, 3);
      p = cell_new(expr(s.items[1]), expr(s.items[2]));
    } else if (head == "assign") {
      arity(s, 3);
      auto [v, fn] = lambda(s.items[2]);
      p = cell_assign(expr(s.items[1]), v, fn);
    } else if (head == "exch") {
      arity(s, 4);
      auto [v, fn] = lambda(s.items[3]);
      p = cell_exch(expr(s.items[1]), expr(s.items[2]), v, fn);
    } else {
      std::size_t first = 1;
      std::string name = head;
      if (head == "call") {
        if (s.items.size() < 2) fail(s, "call needs a procedure name");
        name = name_of(s.items[1]);
        first = 2;
      } else if (kKeywords.count(head)) {
        fail(s, "misplaced '" + head + "'");
      } else {
        sugar_calls_.emplace(name, s);
      }
      std::vector<Expr> args;
      for (std::size_t i = first; i < s.items.size(); ++i) args.push_back(expr(s.items[i]));
      p = call(std::move(name), std::move(args));
    }
    return spanned(std::move(p), s.span);
  }

  std::set<std::string> procs_;
  std::multimap<std::string, Sexp> sugar_calls_;
};

void print_decl(std::string& out, const ccp::VarDecl& d) {
  out += "(declare-var " + d.name + ' ' + std::string(fd::to_string(d.kind));
  if (d.kind != fd::VarKind::Bool) out += ' ' + std::to_string(d.lo) + ' ' + std::to_string(d.hi);
  if (!d.dims.empty()) {
    out += " (dim";
    for (int k : d.dims) out += ' ' + std::to_string(k);
    out += ')';
  }
  out += ")\n";
}

std::string pretty_process(const P& p, std::size_t indent) {
  const auto forms = read_all(to_sexp(p));
  return pretty(forms.at(0), 100, indent);
}

}  // namespace

SpecAst parse(std::string_view text) { return Parser().run(text); }

std::string print(const SpecAst& ast) {
  std::string out;
  if (ast.general_recursion) out += "(option general-recursion)\n";
  for (const auto& d : ast.vars) print_decl(out, d);
  for (const auto& def : ast.procs) {
    if (!out.empty()) out += '\n';
    out += "(defproc " + def.name + " (";
    for (std::size_t i = 0; i < def.params.size(); ++i) {
      if (i) out += ' ';
      out += def.params[i].is_var ? "(var " + def.params[i].name + ")" : def.params[i].name;
    }
    out += ")\n  " + pretty_process(def.body, 2) + ")\n";
  }
  if (ast.has_main) {
    if (!out.empty()) out += '\n';
    out += "(main";
    if (!ast.main_params.empty()) {
      out += " (";
      for (std::size_t i = 0; i < ast.main_params.size(); ++i) out += (i ? " " : "") + ast.main_params[i];
      out += ')';
    }
    out += "\n  " + pretty_process(ast.main, 2) + ")\n";
  }
  return out;
}

}  // namespace ntcc::dsl
