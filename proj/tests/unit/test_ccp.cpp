#include <doctest.h>

#include <algorithm>
#include <random>

#include "ntcc/ccp/executor.hpp"
#include "ntcc/errors.hpp"

using namespace ntcc;
using ccp::run_ccp;
using ccp::VariableRegistry;

namespace {

VariableRegistry small_registry() {
  VariableRegistry reg;
  reg.declare_int("x", 0, 11);
  reg.declare_int("y", 0, 11);
  reg.declare_bool("f", {4});
  reg.declare_set("S", 0, 9);
  return reg;
}

Expr f(int i) { return var("f", {lit(i)}); }

}  // namespace

TEST_SUITE("ccp") {

TEST_CASE("tell, par, skip") {
  auto reg = small_registry();
  auto snap = run_ccp(reg, par({tell(eq(var("x"), lit(5))), tell(eq(var("y"), lit(7)))}));
  CHECK_FALSE(snap.failed);
  CHECK(snap.at("x").value == 5);
  CHECK(snap.at("y").value == 7);

  auto empty = run_ccp(reg, skip());
  CHECK_FALSE(empty.at("x").assigned);
  CHECK(empty.blocked.empty());
  CHECK(run_ccp(reg, par({})).executed == 1);
}

TEST_CASE("local variables stay private") {
  auto reg = small_registry();
  auto snap = run_ccp(reg, local({{"v"}}, par({tell(eq(local_ref("v"), lit(1))),
                                              when(guard(eq(local_ref("v"), lit(1))), tell(eq(var("x"), lit(2))))})));
  CHECK(snap.at("x").value == 2);
  CHECK(snap.vars.size() == 4 + 4 - 1);  // x, y, f[0..3], S
}

TEST_CASE("asks") {
  auto reg = small_registry();
  auto fire = run_ccp(reg, par({when(guard(gt(var("x"), lit(3))), tell(eq(var("y"), lit(1)))), tell(eq(var("x"), lit(5)))}));
  CHECK(fire.at("y").value == 1);
  CHECK(fire.fired == 1);
  CHECK(fire.blocked.empty());

  auto dis = run_ccp(reg, par({when(guard(gt(var("x"), lit(3))), tell(eq(var("y"), lit(1)))), tell(eq(var("x"), lit(2)))}));
  CHECK_FALSE(dis.at("y").assigned);
  CHECK(dis.fired == 0);
  CHECK(dis.blocked.empty());

  auto chain = run_ccp(reg, par({when(guard(eq(f(0), lit(1))), tell(eq(f(1), lit(1)))),
                                 when(guard(eq(f(1), lit(1))), tell(eq(f(2), lit(1)))),
                                 tell(eq(f(0), lit(1)))}));
  CHECK(chain.at("f[2]").value == 1);
}

TEST_CASE("blocked asks are reported") {
  auto reg = small_registry();
  auto snap = run_ccp(reg, par({tell(gt(var("x"), lit(2))),
                                when(g_and({guard(gt(var("x"), lit(2))), guard(eq(var("y"), lit(4)))}),
                                     tell(eq(f(0), lit(1)))),
                                tell(le(var("y"), lit(6)))}));
  CHECK_FALSE(snap.failed);
  REQUIRE(snap.blocked.size() == 1);
  CHECK_FALSE(snap.at("f[0]").assigned);
}

TEST_CASE("set tells and membership guards") {
  auto reg = small_registry();
  auto snap = run_ccp(reg, par({tell(in(lit(3), var("S"))), tell(notin(lit(4), var("S"))),
                                when(guard(in(lit(3), var("S"))), tell(eq(var("x"), lit(9))))}));
  CHECK(snap.at("x").value == 9);
  CHECK(snap.at("S").glb == std::vector<int>{3});
  CHECK(std::find(snap.at("S").lub.begin(), snap.at("S").lub.end(), 4) == snap.at("S").lub.end());

  auto eqset = run_ccp(reg, tell(eq(var("S"), range(lit(2), lit(4)))));
  CHECK(eqset.at("S").assigned);
  CHECK(eqset.at("S").glb == std::vector<int>{2, 3, 4});
}

TEST_CASE("errors") {
  auto reg = small_registry();
  CHECK_THROWS_AS(run_ccp(reg, tell(eq(var("nope"), lit(1)))), UndeclaredVariable);
  CHECK_THROWS_AS(run_ccp(reg, next(tell(eq(var("x"), lit(1))))), UnsupportedProcess);
  CHECK_THROWS_AS(run_ccp(reg, tell(eq(f(9), lit(1)))), RangeError);
  auto bad = run_ccp(reg, par({tell(eq(var("x"), lit(1))), tell(eq(var("x"), lit(2)))}));
  CHECK(bad.failed);
}

TEST_CASE("cascade of ten thousand asks") {
  const int n = 10000;
  VariableRegistry reg;
  reg.declare_bool("c", {n + 1});
  std::vector<P> kids;
  for (int i = 0; i < n; ++i) kids.push_back(when(guard(eq(var("c", {lit(i)}), lit(1))), tell(eq(var("c", {lit(i + 1)}), lit(1)))));
  kids.push_back(tell(eq(var("c", {lit(0)}), lit(1))));
  auto snap = run_ccp(reg, par(kids));
  CHECK(snap.at("c[10000]").value == 1);
  CHECK(snap.fired == static_cast<std::size_t>(n));
}

TEST_CASE("property: order independence, ask monotonicity, single fire") {
  std::mt19937 rng(3);
  auto reg = small_registry();
  for (int round = 0; round < 200; ++round) {
    std::vector<P> kids;
    const int k = 2 + static_cast<int>(rng() % 5);
    for (int i = 0; i < k; ++i) {
      const int what = static_cast<int>(rng() % 3);
      Expr lhs = rng() % 2 ? var("x") : var("y");
      const int c = static_cast<int>(rng() % 12);
      if (what == 0) kids.push_back(tell(ge(lhs, lit(c))));
      else if (what == 1) kids.push_back(tell(le(lhs, lit(c))));
      else kids.push_back(when(guard(ge(lhs, lit(c))), tell(eq(f(static_cast<int>(rng() % 4)), lit(1)))));
    }
    auto base = run_ccp(reg, par(kids));
    auto shuffled = kids;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto other = run_ccp(reg, par(shuffled));
    CHECK(other.failed == base.failed);
    if (base.failed) continue;
    CHECK(other.vars == base.vars);
    CHECK(other.fired == base.fired);
    CHECK(base.fired <= static_cast<std::size_t>(k));

    auto more = kids;
    more.push_back(tell(ge(var("x"), lit(static_cast<int>(rng() % 12)))));
    auto bigger = run_ccp(reg, par(more));
    if (!bigger.failed) {
      CHECK(bigger.fired >= base.fired);
      for (int i = 0; i < 4; ++i) {
        const auto name = "f[" + std::to_string(i) + "]";
        if (base.at(name).assigned) CHECK(bigger.at(name).assigned);
      }
    }
  }
}

}  // TEST_SUITE
