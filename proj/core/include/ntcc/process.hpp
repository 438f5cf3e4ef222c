#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ntcc/fd/constraints.hpp"

namespace ntcc {

/// Source position of a parsed node. Spans never take part in equality.
struct SourceSpan {
  std::size_t line = 0;
  std::size_t column = 0;
  friend bool operator==(const SourceSpan&, const SourceSpan&) { return true; }
};

/// Integer expression appearing in constraints, indices and call arguments.
struct Expr {
  enum class Kind : std::uint8_t {
    Const,  // value
    Sym,    // unresolved name (parser output), kids = indices
    Param,  // procedure or lambda parameter
    Var,    // declared variable, kids = indices
    Local,  // local variable; id < 0 until the enclosing local is executed
    Add,
    Sub,
    Mul,
    Neg,
    Range,  // kids = {lo, hi}; only valid as a set operand
  };

  Kind kind = Kind::Const;
  std::int64_t value = 0;
  std::string name;
  int local_id = -1;
  std::vector<Expr> kids;
  SourceSpan span;

  bool is_const() const noexcept { return kind == Kind::Const; }
  friend bool operator==(const Expr&, const Expr&) = default;
};

/// Atomic constraint: `lhs rel rhs`, or membership `lhs ∈ rhs` / `lhs ∉ rhs`.
/// An Eq relation whose rhs is a Range constrains a set variable to exactly
/// that range.
struct Constraint {
  enum class Kind : std::uint8_t { Rel, In, NotIn };
  Kind kind = Kind::Rel;
  Expr lhs;
  fd::Rel rel = fd::Rel::Eq;
  Expr rhs;
  SourceSpan span;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct Guard {
  enum class Kind : std::uint8_t { True, False, Leaf, And, Or, Not };
  Kind kind = Kind::True;
  Constraint leaf;
  std::vector<Guard> kids;
  SourceSpan span;
  friend bool operator==(const Guard&, const Guard&) = default;
};

struct LocalDecl {
  static constexpr int kDefaultLo = 0;
  static constexpr int kDefaultHi = 65535;
  std::string name;
  int lo = kDefaultLo;
  int hi = kDefaultHi;
  friend bool operator==(const LocalDecl&, const LocalDecl&) = default;
};

struct Process;

/// Immutable, shareable handle to a process term. Equality is structural.
class P {
 public:
  P();
  explicit P(std::shared_ptr<const Process> p) : p_(std::move(p)) {}

  const Process& operator*() const noexcept { return *p_; }
  const Process* operator->() const noexcept { return p_.get(); }
  const Process* get() const noexcept { return p_.get(); }

  friend bool operator==(const P& a, const P& b);

 private:
  std::shared_ptr<const Process> p_;
};

struct Process {
  enum class Kind : std::uint8_t {
    Skip,
    Tell,
    When,
    Par,
    Local,
    Next,
    Unless,
    Bang,
    Star,
    Sum,
    Call,
    CellNew,
    CellAssign,
    CellExch,
    PersistentTell,
  };

  Kind kind = Kind::Skip;
  Constraint constraint;          // Tell, PersistentTell
  Guard guard;                    // When, Unless
  std::vector<Guard> guards;      // Sum: guards[i] selects kids[i]
  std::vector<P> kids;            // Par children; the body of every unary form is kids[0]
  std::vector<LocalDecl> locals;  // Local
  int delay = 1;                  // Next
  std::string name;               // Call: procedure; cell ops: lambda parameter
  std::vector<Expr> args;         // Call arguments; cells: {target, init|fn} or {x, y, fn}
  SourceSpan span;

  const P& body() const { return kids.at(0); }
  friend bool operator==(const Process&, const Process&) = default;
};

std::string_view to_string(Process::Kind kind);

/// A procedure parameter: an integer value or a variable reference.
struct ParamDecl {
  std::string name;
  bool is_var = false;
  friend bool operator==(const ParamDecl&, const ParamDecl&) = default;
};

struct ProcedureDef {
  std::string name;
  std::vector<ParamDecl> params;
  P body;
  SourceSpan span;
  friend bool operator==(const ProcedureDef&, const ProcedureDef&) = default;
};

using ProcedureTable = std::map<std::string, ProcedureDef>;

// --- Host construction API ------------------------------------------------

Expr lit(std::int64_t v);
Expr param(std::string name);
Expr var(std::string name, std::vector<Expr> indices = {});
Expr local_ref(std::string name);
Expr range(Expr lo, Expr hi);
Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator-(Expr a);

Constraint rel(Expr lhs, fd::Rel r, Expr rhs);
Constraint eq(Expr lhs, Expr rhs);
Constraint ne(Expr lhs, Expr rhs);
Constraint lt(Expr lhs, Expr rhs);
Constraint le(Expr lhs, Expr rhs);
Constraint gt(Expr lhs, Expr rhs);
Constraint ge(Expr lhs, Expr rhs);
Constraint in(Expr elem, Expr set);
Constraint notin(Expr elem, Expr set);

Guard guard(Constraint c);
Guard g_true();
Guard g_false();
Guard g_and(std::vector<Guard> kids);
Guard g_or(std::vector<Guard> kids);
Guard g_not(Guard kid);

P skip();
P tell(Constraint c);
P when(Guard g, P body);
P par(std::vector<P> kids);
P local(std::vector<LocalDecl> decls, P body);
P next(P body, int delay = 1);
P unless(Guard g, P body);
P bang(P body);
P star(P body);
P sum(std::vector<std::pair<Guard, P>> branches);
/// Sum whose guards are all true (the `+` operator).
P choice(std::vector<P> kids);
P call(std::string name, std::vector<Expr> args = {});
P cell_new(Expr target, Expr init);
P cell_assign(Expr target, std::string param, Expr fn);
P cell_exch(Expr x, Expr y, std::string param, Expr fn);
P ptell(Constraint c);

// --- Rewriting ------------------------------------------------------------

/// Replacement tables used when instantiating procedure bodies and locals.
struct Bindings {
  std::map<std::string, Expr> params;  // Param(name) -> expression
  std::map<std::string, int> locals;   // Local(name, -1) -> fresh id
};

/// Folds constant arithmetic. Non-constant operands are left in place.
Expr fold(const Expr& e);
Guard fold(const Guard& g);

Expr substitute(const Expr& e, const Bindings& b);
Constraint substitute(const Constraint& c, const Bindings& b);
Guard substitute(const Guard& g, const Bindings& b);
/// Substitutes and folds; subtrees that do not change are shared.
P substitute(const P& p, const Bindings& b);

/// Evaluates a ground expression. Params may be supplied through `env`.
std::int64_t evaluate(const Expr& e, const std::map<std::string, std::int64_t>& env = {});

// --- Printing (canonical S-expression syntax) -------------------------------

std::string to_sexp(const Expr& e);
std::string to_sexp(const Constraint& c);
/// Guards print relations with the v>= / v> / v<= / v< spelling.
std::string to_sexp(const Guard& g);
std::string to_sexp(const P& p);

}  // namespace ntcc
