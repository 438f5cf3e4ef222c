#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ntcc/fd/space.hpp"

namespace ntcc::fd {

enum class Rel : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view to_string(Rel r);
Rel negate(Rel r);
/// Relation obtained by swapping operands: (a r b) == (b swap(r) a).
Rel swap(Rel r);
bool holds(std::int64_t lhs, Rel r, std::int64_t rhs);

struct Term {
  int coeff = 1;
  VarId var;
  friend bool operator==(const Term&, const Term&) = default;
};

// Posting. Every function registers propagators and schedules them; errors
// in the store surface at the next propagate().

void rel(Space& home, VarId x, Rel r, int c);
void rel(Space& home, VarId x, Rel r, VarId y);
/// Σ terms r c
void linear(Space& home, std::vector<Term> terms, Rel r, std::int64_t c);
void linear(Space& home, std::span<const int> coeffs, std::span<const VarId> vars, Rel r, std::int64_t c);
void distinct(Space& home, std::span<const VarId> vars);
/// |{ i : vars[i] elem_rel value }| r c, decomposed into reified relations and a sum.
void count(Space& home, std::span<const VarId> vars, Rel elem_rel, int value, Rel r, int c);

/// S = {lo..hi}
void set_dom_eq(Space& home, VarId s, int lo, int hi);
void include(Space& home, VarId s, int value);
void exclude(Space& home, VarId s, int value);
/// x ∈ S for an integer variable x.
void member(Space& home, VarId x, VarId s);
void not_member(Space& home, VarId x, VarId s);
/// C = A \ B
void set_minus(Space& home, VarId a, VarId b, VarId c);

// Reification. Each returns (or constrains) a boolean b with b ⇔ constraint.

VarId reify_linear(Space& home, std::vector<Term> terms, Rel r, std::int64_t c);
void reify_linear(Space& home, std::vector<Term> terms, Rel r, std::int64_t c, VarId b);
VarId reify_rel(Space& home, VarId x, Rel r, int c);
VarId reify_rel(Space& home, VarId x, Rel r, VarId y);
VarId reify_member(Space& home, VarId x, VarId s);
VarId reify_and(Space& home, std::span<const VarId> bs);
VarId reify_or(Space& home, std::span<const VarId> bs);
VarId reify_not(Space& home, VarId b);

/// Boolean constraint expression over resolved variables.
struct BoolExpr {
  enum class Kind : std::uint8_t { Const, Linear, Member, And, Or, Not };

  Kind kind = Kind::Const;
  bool value = true;                // Const
  std::vector<Term> terms;          // Linear: Σ terms rel rhs
  Rel rel = Rel::Eq;
  std::int64_t rhs = 0;
  VarId elem;                       // Member: elem ∈ set (elem may be a constant var)
  VarId set;
  bool negated = false;             // Member: elem ∉ set
  std::vector<BoolExpr> kids;       // And / Or / Not

  static BoolExpr constant(bool v);
  static BoolExpr linear(std::vector<Term> terms, Rel r, std::int64_t rhs);
  static BoolExpr member(VarId elem, VarId set, bool negated = false);
  static BoolExpr conj(std::vector<BoolExpr> kids);
  static BoolExpr disj(std::vector<BoolExpr> kids);
  static BoolExpr negation(BoolExpr kid);
};

/// Reifies a boolean expression; the result is 1 once the expression is
/// entailed by the domains and 0 once it is disentailed.
VarId reify(Space& home, const BoolExpr& e);
/// Posts the expression itself (b = 1).
void post(Space& home, const BoolExpr& e);

}  // namespace ntcc::fd
