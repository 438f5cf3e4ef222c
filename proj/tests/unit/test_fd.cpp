#include <doctest.h>

#include "ntcc/errors.hpp"
#include "ntcc/fd/constraints.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace ntcc;
using namespace ntcc::fd;


TEST_SUITE("fd") {

TEST_CASE("int domain holes and bounds") {
  IntDomain d(0, 11);
  CHECK(d.size() == 12);
  CHECK(d.remove(5));
  CHECK_FALSE(d.contains(5));
  CHECK(d.intervals().size() == 2);
  CHECK(d.restrict_min(5));
  CHECK(d.min() == 6);
  CHECK_FALSE(d.remove(5));
  CHECK(d.to_string() == "{6..11}");
  IntDomain e(kIntMin, kIntMax);
  CHECK(e.size() == 2ull * 2147483645ull + 1);
}

TEST_CASE("new space and variables") {
  Space s;
  CHECK(s.num_vars() == 0);
  CHECK(s.num_propagators() == 0);
  CHECK_FALSE(s.failed());
  CHECK(s.propagate() == SpaceStatus::Fixpoint);

  Space t;
  t.new_int_var(0, 3);
  CHECK(s.num_vars() == 0);

  VarId x = s.new_int_var(0, 11);
  CHECK(s.int_domain(x).size() == 12);
  VarId c = s.new_int_var(5, 5);
  CHECK(s.assigned(c));
  CHECK(s.value(c) == 5);
  VarId set = s.new_set_var({}, oracle::iota(1, 8));
  CHECK_FALSE(s.assigned(set));
  CHECK(s.set_domain(set).glb().empty());
  CHECK(s.set_domain(set).lub().size() == 8);

  CHECK_THROWS_AS(s.new_int_var(3, 2), BoundsError);
  CHECK_THROWS_AS(s.new_int_var(0, 2147483646), BoundsError);
  CHECK_THROWS_AS(s.new_set_var({9}, {1, 2}), DomainError);
  CHECK_THROWS_AS(s.value(set), KindError);
  CHECK_THROWS_AS(s.set_domain(x), KindError);
}

TEST_CASE("tells") {
  Space s;
  VarId x = s.new_int_var(0, 11);
  rel(s, x, Rel::Eq, 5);
  CHECK(s.propagate() == SpaceStatus::Fixpoint);
  CHECK(s.value(x) == 5);
  rel(s, x, Rel::Eq, 5);
  CHECK(s.propagate() == SpaceStatus::Fixpoint);
  rel(s, x, Rel::Eq, 6);
  CHECK(s.propagate() == SpaceStatus::Failed);
  CHECK(s.failed());

  Space u;
  VarId y = u.new_int_var(0, 9);
  rel(u, y, Rel::Ge, 4);
  rel(u, y, Rel::Le, 3);
  CHECK(u.propagate() == SpaceStatus::Failed);
}

TEST_CASE("set difference") {
  Space s;
  VarId a = s.new_set_var({}, oracle::iota(1, 5));
  VarId b = s.new_set_var({}, oracle::iota(3, 8));
  VarId c = s.new_set_var({}, oracle::iota(1, 8));
  set_dom_eq(s, a, 1, 5);
  set_dom_eq(s, b, 3, 8);
  set_minus(s, a, b, c);
  REQUIRE(s.propagate() == SpaceStatus::Fixpoint);
  VarView v = s.read(c);
  CHECK(v.assigned);
  CHECK(v.glb == std::vector<int>{1, 2});
  CHECK(v.lub == std::vector<int>{1, 2});
}

TEST_CASE("set membership") {
  Space s;
  VarId S = s.new_set_var({}, oracle::iota(0, 9));
  VarId j = s.new_int_var(0, 20);
  member(s, j, S);
  REQUIRE(s.propagate() == SpaceStatus::Fixpoint);
  CHECK(s.int_domain(j).max() == 9);
  rel(s, j, Rel::Eq, 4);
  REQUIRE(s.propagate() == SpaceStatus::Fixpoint);
  CHECK(s.set_domain(S).in_glb(4));
  VarId k = s.new_int_var(4, 4);
  not_member(s, k, S);
  CHECK(s.propagate() == SpaceStatus::Failed);
}

TEST_CASE("globals") {
  Space s;
  std::vector<VarId> xs{s.new_int_var(2, 2), s.new_int_var(0, 0), s.new_int_var(2, 2)};
  count(s, xs, Rel::Eq, 2, Rel::Ge, 2);
  CHECK(s.propagate() == SpaceStatus::Fixpoint);
  CHECK_THROWS_AS(distinct(s, std::vector<VarId>{}), ArityError);
  CHECK_THROWS_AS(linear(s, std::vector<int>{}, std::vector<VarId>{}, Rel::Eq, 0), ArityError);

  Space t;
  VarId a = t.new_int_var(0, 11);
  VarId b = t.new_int_var(0, 11);
  linear(t, {{1, a}, {1, b}}, Rel::Eq, 14);
  REQUIRE(t.propagate() == SpaceStatus::Fixpoint);
  CHECK(t.int_domain(a).min() == 3);
  CHECK(t.int_domain(b).min() == 3);
}

TEST_CASE("reification") {
  Space s;
  VarId x = s.new_int_var(0, 11);
  VarId b = reify_rel(s, x, Rel::Gt, 3);
  REQUIRE(s.propagate() == SpaceStatus::Fixpoint);
  CHECK_FALSE(s.assigned(b));
  rel(s, x, Rel::Eq, 5);
  REQUIRE(s.propagate() == SpaceStatus::Fixpoint);
  CHECK(s.value(b) == 1);

  // Interval reasoning does not derive transitivity.
  Space t;
  VarId p = t.new_int_var(0, 127);
  VarId q = t.new_int_var(0, 127);
  VarId r = t.new_int_var(0, 127);
  rel(t, p, Rel::Gt, q);
  rel(t, q, Rel::Gt, r);
  VarId pr = reify_rel(t, p, Rel::Gt, r);
  REQUIRE(t.propagate() == SpaceStatus::Fixpoint);
  // By hand: p in [2,127], q in [1,126], r in [0,125]; p > r undecided.
  CHECK(t.int_domain(p).min() == 2);
  CHECK(t.int_domain(r).max() == 125);
  CHECK_FALSE(t.assigned(pr));

  Space u;
  VarId x1 = u.new_int_var(0, 10);
  VarId b1 = reify_rel(u, x1, Rel::Gt, 3);
  VarId b2 = reify_rel(u, x1, Rel::Eq, 5);
  rel(u, x1, Rel::Eq, 5);
  REQUIRE(u.propagate() == SpaceStatus::Fixpoint);
  CHECK(u.value(b1) == 1);
  CHECK(u.value(b2) == 1);

  Space w;
  VarId y = w.new_int_var(0, 5);
  VarId by = reify_rel(w, y, Rel::Ge, 2);
  VarId nb = reify_not(w, by);
  rel(w, nb, Rel::Eq, 1);
  REQUIRE(w.propagate() == SpaceStatus::Fixpoint);
  CHECK(w.int_domain(y).max() == 1);
}

TEST_CASE("clone isolation") {
  Space s;
  VarId x = s.new_int_var(0, 11);
  rel(s, x, Rel::Ge, 2);
  Space c = s.clone();
  rel(c, x, Rel::Eq, 3);
  REQUIRE(c.propagate() == SpaceStatus::Fixpoint);
  CHECK(c.value(x) == 3);
  CHECK_FALSE(s.assigned(x));
  REQUIRE(s.propagate() == SpaceStatus::Fixpoint);
  Space d = s.clone();
  CHECK(d.propagate() == SpaceStatus::Fixpoint);
  CHECK(d.same_domains(s));

  Space f;
  VarId y = f.new_int_var(0, 1);
  rel(f, y, Rel::Eq, 2);
  f.propagate();
  CHECK(f.clone().failed());
}

TEST_CASE("properties") {
  auto check = [](const props::Result& r) {
    INFO(r.detail);
    CHECK(r.ok);
  };
  check(props::fixpoint_idempotence(200));
  check(props::monotonicity(200));
  check(props::reification_soundness(400));
  check(props::queens4());
  check(props::add14());
  check(props::set_difference());
}

}  // TEST_SUITE
