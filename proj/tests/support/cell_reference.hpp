#pragma once

// Cells written directly as processes, as in the calculus' own definition:
//
//   Cell(i, z)          = tell(c[i] = z) || unless change[i] = 1 next Cell(i, z)
//   Assign(i, g)        = tell(change[i] = 1) || sum_v when c[i] = v do next Cell(i, g(v))
//   Exch(i, j, g)       = tell(change[i] = 1) || tell(change[j] = 1)
//                         || sum_v when c[i] = v do next (Cell(i, g(v)) || Cell(j, v))
//
// The enumeration over v runs over the declared value range of c, and
// `unless g next P` is the unless agent itself: P runs in the next unit.

#include <string>
#include <vector>

#include "ntcc/engine.hpp"

namespace cell_ref {

inline constexpr int kMaxValue = 60;

/// Registry shared by the reference encoding and the engine-level cells.
inline ntcc::ccp::VariableRegistry registry(int cells) {
  ntcc::ccp::VariableRegistry reg;
  reg.declare_int("c", 0, kMaxValue, {cells});
  reg.declare_bool("change", {cells});
  return reg;
}

inline ntcc::ProcedureTable procedures() {
  using namespace ntcc;
  ProcedureTable t;
  t["Cell"] = ProcedureDef{"Cell",
                           {{"i"}, {"z"}},
                           par({tell(eq(var("c", {param("i")}), param("z"))),
                                unless(guard(eq(var("change", {param("i")}), lit(1))),
                                       call("Cell", {param("i"), param("z")}))}),
                           {}};
  return t;
}

/// g(v) = mul * v + add, written both as a lambda body and as a function.
struct Fn {
  int mul = 1;
  int add = 0;
  ntcc::Expr body(const std::string& p) const { return ntcc::lit(mul) * ntcc::param(p) + ntcc::lit(add); }
  int operator()(int v) const { return mul * v + add; }
};

inline ntcc::P ref_new(int i, int z) { return ntcc::call("Cell", {ntcc::lit(i), ntcc::lit(z)}); }

inline ntcc::P ref_assign(int i, Fn g) {
  using namespace ntcc;
  std::vector<P> kids{tell(eq(var("change", {lit(i)}), lit(1)))};
  for (int v = 0; v <= kMaxValue; ++v) {
    const int gv = g(v);
    if (gv < 0 || gv > kMaxValue) continue;
    kids.push_back(when(guard(eq(var("c", {lit(i)}), lit(v))), next(call("Cell", {lit(i), lit(gv)}))));
  }
  return par(std::move(kids));
}

inline ntcc::P ref_exch(int i, int j, Fn g) {
  using namespace ntcc;
  std::vector<P> kids{tell(eq(var("change", {lit(i)}), lit(1))), tell(eq(var("change", {lit(j)}), lit(1)))};
  for (int v = 0; v <= kMaxValue; ++v) {
    const int gv = g(v);
    if (gv < 0 || gv > kMaxValue) continue;
    kids.push_back(when(guard(eq(var("c", {lit(i)}), lit(v))),
                        next(par({call("Cell", {lit(i), lit(gv)}), call("Cell", {lit(j), lit(v)})}))));
  }
  return par(std::move(kids));
}

inline ntcc::P eng_new(int i, int z) { return ntcc::cell_new(ntcc::var("c", {ntcc::lit(i)}), ntcc::lit(z)); }

inline ntcc::P eng_assign(int i, Fn g) { return ntcc::cell_assign(ntcc::var("c", {ntcc::lit(i)}), "v", g.body("v")); }

inline ntcc::P eng_exch(int i, int j, Fn g) {
  return ntcc::cell_exch(ntcc::var("c", {ntcc::lit(i)}), ntcc::var("c", {ntcc::lit(j)}), "v", g.body("v"));
}

}  // namespace cell_ref
