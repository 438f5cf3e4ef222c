#include "properties.hpp"

#include <map>
#include <random>
#include <set>
#include <sstream>

#include "ntcc/engine.hpp"
#include "ntcc/errors.hpp"
#include "ntcc/fd/constraints.hpp"
#include "ntcc/search/search.hpp"
#include "oracles.hpp"
#include "cell_reference.hpp"

namespace props {

using namespace ntcc;
using fd::Rel;
using fd::Space;
using fd::SpaceStatus;
using fd::VarId;

namespace {

const Rel kRels[] = {Rel::Eq, Rel::Ne, Rel::Lt, Rel::Le, Rel::Gt, Rel::Ge};
const oracle::Op kOps[] = {oracle::Op::Eq, oracle::Op::Ne, oracle::Op::Lt,
                           oracle::Op::Le, oracle::Op::Gt, oracle::Op::Ge};

Result fail(std::string why) { return {false, std::move(why)}; }

bool subset(const fd::IntDomain& a, const fd::IntDomain& b) {
  for (int v : a.values())
    if (!b.contains(v)) return false;
  return true;
}

std::vector<fd::IntDomain> domains(const Space& s, const std::vector<VarId>& vs) {
  std::vector<fd::IntDomain> out;
  for (auto v : vs) out.push_back(s.int_domain(v));
  return out;
}

// Applies one random relational or linear tell.
void random_tell(Space& s, const std::vector<VarId>& vs, std::mt19937& rng) {
  const int kind = static_cast<int>(rng() % 3);
  VarId x = vs[rng() % vs.size()];
  VarId y = vs[rng() % vs.size()];
  Rel r = kRels[rng() % 6];
  if (kind == 0) fd::rel(s, x, r, static_cast<int>(rng() % 10));
  else if (kind == 1) fd::rel(s, x, r, y);
  else fd::linear(s, {{1, x}, {2, y}}, r, static_cast<int>(rng() % 20));
}

std::string describe(const UnitReport& r) {
  std::ostringstream os;
  os << r.tu << ':';
  for (const auto& [name, v] : r.vars) {
    if (!v.assigned) continue;
    os << ' ' << name << '=';
    if (v.value) os << *v.value;
    else
      for (int e : v.glb) os << e << ',';
  }
  os << " x" << r.executed << " f" << r.fired << " b" << r.blocked;
  return os.str();
}

std::vector<std::string> run_trace(const Program& prog, int horizon, std::uint64_t seed, InputHook input = {}) {
  std::vector<std::string> out;
  Engine eng(prog, {.horizon = horizon, .seed = seed});
  if (input) eng.set_input(std::move(input));
  try {
    for (const auto& u : eng.simulate().units) out.push_back(describe(u));
  } catch (const InconsistentUnit& e) {
    out.push_back("inconsistent at " + std::to_string(e.unit()));
  }
  return out;
}

Expr a(int i) { return var("a", {lit(i)}); }

Program array_program(P main, int n = 6) {
  Program prog;
  prog.registry.declare_int("a", 0, 9, {n});
  prog.main = std::move(main);
  return prog;
}

std::optional<int> value_at(const UnitReport& r, const std::string& name) {
  for (const auto& [n, v] : r.vars)
    if (n == name) return v.assigned ? v.value : std::nullopt;
  return std::nullopt;
}

}  // namespace

// --- Solver ----------------------------------------------------------------

Result fixpoint_idempotence(int rounds) {
  std::mt19937 rng(7);
  for (int round = 0; round < rounds; ++round) {
    Space s;
    std::vector<VarId> vs;
    for (int i = 0; i < 4; ++i) vs.push_back(s.new_int_var(0, 9));
    for (int step = 0; step < 6; ++step) {
      random_tell(s, vs, rng);
      if (s.propagate() == SpaceStatus::Failed) break;
      const auto first = domains(s, vs);
      if (s.propagate() != SpaceStatus::Fixpoint || domains(s, vs) != first) {
        return fail("second fixpoint changed domains in round " + std::to_string(round));
      }
      Space copy = s.clone();
      if (copy.propagate() != SpaceStatus::Fixpoint || !copy.same_domains(s)) {
        return fail("clone fixpoint differs in round " + std::to_string(round));
      }
    }
  }
  return {true, std::to_string(rounds) + " random stores"};
}

Result monotonicity(int rounds) {
  std::mt19937 rng(17);
  std::size_t checks = 0;
  for (int round = 0; round < rounds; ++round) {
    Space s;
    std::vector<VarId> vs;
    for (int i = 0; i < 4; ++i) vs.push_back(s.new_int_var(0, 9));
    bool failed = false;
    for (int step = 0; step < 8; ++step) {
      const auto before = failed ? std::vector<fd::IntDomain>{} : domains(s, vs);
      random_tell(s, vs, rng);
      const bool now_failed = s.propagate() == SpaceStatus::Failed;
      if (failed && !now_failed) return fail("failed store recovered in round " + std::to_string(round));
      failed = now_failed;
      if (failed) continue;
      const auto after = domains(s, vs);
      for (std::size_t i = 0; i < vs.size(); ++i) {
        ++checks;
        if (!subset(after[i], before[i])) return fail("domain grew in round " + std::to_string(round));
      }
    }
  }
  return {true, std::to_string(checks) + " domain comparisons"};
}

Result reification_soundness(int rounds) {
  std::mt19937 rng(11);
  std::size_t decided = 0;
  for (int round = 0; round < rounds; ++round) {
    Space s;
    const int n = 1 + static_cast<int>(rng() % 3);
    std::vector<VarId> vs;
    std::vector<std::vector<int>> doms;
    for (int i = 0; i < n; ++i) {
      const int lo = static_cast<int>(rng() % 4);
      vs.push_back(s.new_int_var(lo, lo + 5));
      doms.push_back(oracle::iota(lo, lo + 5));
    }
    const int i = static_cast<int>(rng() % n);
    const int j = static_cast<int>(rng() % n);
    const int a0 = 1 + static_cast<int>(rng() % 2);
    const int a1 = static_cast<int>(rng() % 3) - 1;
    const int gr = static_cast<int>(rng() % 6);
    const int gc = static_cast<int>(rng() % 12);
    const int shape = static_cast<int>(rng() % 4);  // leaf, not, and, or
    const int k = static_cast<int>(rng() % n);
    const int kc = static_cast<int>(rng() % 8);
    fd::BoolExpr leaf = fd::BoolExpr::linear({{a0, vs[i]}, {a1, vs[j]}}, kRels[gr], gc);
    fd::BoolExpr other = fd::BoolExpr::linear({{1, vs[k]}}, Rel::Ne, kc);
    fd::BoolExpr g = shape == 0   ? leaf
                     : shape == 1 ? fd::BoolExpr::negation(leaf)
                     : shape == 2 ? fd::BoolExpr::conj({leaf, other})
                                  : fd::BoolExpr::disj({leaf, other});
    auto guard_holds = [&](const std::vector<int>& t) {
      const bool h = oracle::holds(std::int64_t{a0} * t[i] + std::int64_t{a1} * t[j], kOps[gr], gc);
      const bool o = t[k] != kc;
      return shape == 0 ? h : shape == 1 ? !h : shape == 2 ? (h && o) : (h || o);
    };
    const VarId b = fd::reify(s, g);

    struct Tell {
      int x, r, c;
    };
    std::vector<Tell> tells;
    for (int step = 0; step < 2; ++step) {
      Tell t{static_cast<int>(rng() % n), static_cast<int>(rng() % 6), static_cast<int>(rng() % 9)};
      tells.push_back(t);
      fd::rel(s, vs[t.x], kRels[t.r], t.c);
    }
    if (s.propagate() == SpaceStatus::Failed || !s.assigned(b)) continue;
    ++decided;
    const int bv = s.value(b);
    bool ok = true;
    oracle::for_each_tuple(doms, [&](const std::vector<int>& t) {
      for (const auto& tl : tells)
        if (!oracle::holds(t[tl.x], kOps[tl.r], tl.c)) return;
      if (guard_holds(t) != (bv == 1)) ok = false;
    });
    if (!ok) return fail("b=" + std::to_string(bv) + " contradicts a solution in round " + std::to_string(round));
    fd::rel(s, vs[0], Rel::Ge, doms[0].front() + 1);
    if (s.propagate() == SpaceStatus::Fixpoint && s.value(b) != bv) {
      return fail("truth variable changed after assignment in round " + std::to_string(round));
    }
  }
  return {true, std::to_string(decided) + " decided guards checked by enumeration"};
}

Result queens4() {
  Space s;
  std::vector<VarId> q;
  for (int i = 0; i < 4; ++i) q.push_back(s.new_int_var(0, 3));
  fd::distinct(s, q);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      fd::linear(s, {{1, q[i]}, {-1, q[j]}}, Rel::Ne, i - j);
      fd::linear(s, {{1, q[i]}, {-1, q[j]}}, Rel::Ne, j - i);
    }
  search::branch(s, q);
  const auto n = search::all_solutions(s).size();
  const auto expected = oracle::queens_count(4);
  if (n != 2 || n != expected) return fail(std::to_string(n) + " solutions");
  return {true, "2 solutions"};
}

Result add14() {
  Space s;
  std::vector<VarId> xs{s.new_int_var(0, 11), s.new_int_var(0, 11)};
  fd::linear(s, {{1, xs[0]}, {1, xs[1]}}, Rel::Eq, 14);
  search::branch(s, xs);
  auto sols = search::all_solutions(s);
  std::vector<std::pair<int, int>> expected;
  oracle::for_each_tuple({oracle::iota(0, 11), oracle::iota(0, 11)}, [&](const std::vector<int>& t) {
    if (t[0] + t[1] == 14) expected.emplace_back(t[0], t[1]);
  });
  if (sols.size() != expected.size() || sols.size() != 9) return fail(std::to_string(sols.size()) + " solutions");
  for (std::size_t i = 0; i < sols.size(); ++i) {
    if (sols[i].value(xs[0]) != expected[i].first || sols[i].value(xs[1]) != expected[i].second) {
      return fail("solution " + std::to_string(i) + " out of order");
    }
  }
  return {true, "first (3,11), 9 solutions"};
}

Result set_difference() {
  Space s;
  VarId a = s.new_set_var({}, oracle::iota(1, 5));
  VarId b = s.new_set_var({}, oracle::iota(3, 8));
  VarId c = s.new_set_var({}, oracle::iota(1, 8));
  fd::set_dom_eq(s, a, 1, 5);
  fd::set_dom_eq(s, b, 3, 8);
  fd::set_minus(s, a, b, c);
  if (s.propagate() != SpaceStatus::Fixpoint) return fail("store failed");
  const auto v = s.read(c);
  if (!v.assigned || v.glb != std::vector<int>{1, 2}) return fail("C = " + s.set_domain(c).to_string());
  return {true, "C = {1,2}"};
}

// --- Timed engine ------------------------------------------------------------

namespace {

P random_timed(std::mt19937& rng) {
  std::vector<P> kids;
  const int n = 2 + static_cast<int>(rng() % 5);
  for (int k = 0; k < n; ++k) {
    const int i = k;  // distinct variables keep programs consistent
    const int c1 = static_cast<int>(rng() % 10);
    const int c2 = static_cast<int>(rng() % 10);
    switch (rng() % 6) {
      case 0: kids.push_back(next(choice({tell(eq(a(i), lit(c1))), tell(eq(a(i), lit(c2)))}), 1 + static_cast<int>(rng() % 3))); break;
      case 1: kids.push_back(star(tell(eq(a(i), lit(c1))))); break;
      case 2: kids.push_back(bang(choice({tell(eq(a(i), lit(c1))), tell(eq(a(i), lit(c2)))}))); break;
      case 3: kids.push_back(unless(guard(eq(a((i + 1) % 6), lit(c1))), tell(eq(a(i), lit(c2))))); break;
      case 4: kids.push_back(when(guard(ge(a((i + 1) % 6), lit(c1))), next(tell(eq(a(i), lit(c2)))))); break;
      default: kids.push_back(sum({{guard(ge(a((i + 1) % 6), lit(c1))), tell(eq(a(i), lit(c2)))},
                                   {g_true(), skip()}})); break;
    }
  }
  return par(std::move(kids));
}

}  // namespace

Result determinism(int programs) {
  std::mt19937 rng(23);
  for (int k = 0; k < programs; ++k) {
    Program prog = array_program(random_timed(rng));
    const auto seed = static_cast<std::uint64_t>(rng());
    if (run_trace(prog, 6, seed) != run_trace(prog, 6, seed)) return fail("program " + std::to_string(k) + " diverged");
  }
  return {true, std::to_string(programs) + " programs replayed"};
}

Result store_freshness(int programs) {
  std::mt19937 rng(29);
  const int horizon = 6;
  for (int k = 0; k < programs; ++k) {
    std::vector<P> kids;
    std::vector<std::set<int>> expected(horizon);  // units where a[i] is told
    std::vector<int> value(6);
    for (int i = 0; i < 6; ++i) {
      value[i] = static_cast<int>(rng() % 10);
      Constraint c = eq(a(i), lit(value[i]));
      switch (rng() % 5) {
        case 0: break;  // untouched
        case 1:
          kids.push_back(tell(c));
          expected[0].insert(i);
          break;
        case 2: {
          const int d = 1 + static_cast<int>(rng() % 7);
          kids.push_back(next(tell(c), d));
          if (d < horizon) expected[d].insert(i);
          break;
        }
        case 3:
          kids.push_back(bang(tell(c)));
          for (auto& e : expected) e.insert(i);
          break;
        default: {
          const int d = 1 + static_cast<int>(rng() % 3);
          kids.push_back(next(ptell(c), d));
          for (int t = d; t < horizon; ++t) expected[t].insert(i);
        }
      }
    }
    Engine eng(array_program(par(kids)), {.horizon = horizon});
    const Trace tr = eng.simulate();
    for (int t = 0; t < horizon; ++t) {
      for (int i = 0; i < 6; ++i) {
        const auto v = value_at(tr.units[t], "a[" + std::to_string(i) + "]");
        const bool want = expected[t].count(i) > 0;
        if (v.has_value() != want || (v && *v != value[i])) {
          return fail("program " + std::to_string(k) + ": a[" + std::to_string(i) + "] at unit " + std::to_string(t));
        }
      }
    }
  }
  return {true, std::to_string(programs) + " programs, assigned sets match the schedule"};
}

Result bang_unrolled(int max_units) {
  std::mt19937 rng(31);
  for (int n = 1; n <= max_units; ++n) {
    for (int k = 0; k < 10; ++k) {
      std::vector<P> tells;
      for (int i = 0; i < 6; ++i)
        if (rng() % 2) tells.push_back(tell(eq(a(i), lit(static_cast<int>(rng() % 10)))));
      const P body = par(tells);
      std::vector<P> unrolled{body};
      for (int d = 1; d < n; ++d) unrolled.push_back(next(body, d));
      auto strip = [](std::vector<std::string> tr) {
        // Executed counts differ by construction; compare stores only.
        for (auto& line : tr) line = line.substr(0, line.find(" x"));
        return tr;
      };
      const auto lhs = strip(run_trace(array_program(bang(body)), n, 0));
      const auto rhs = strip(run_trace(array_program(par(unrolled)), n, 0));
      if (lhs != rhs) return fail("n=" + std::to_string(n) + " differs");
    }
  }
  return {true, "n = 1.." + std::to_string(max_units)};
}

Result when_unless_complementarity(int programs) {
  std::mt19937 rng(37);
  const int horizon = 6;
  for (int k = 0; k < programs; ++k) {
    Program prog;
    prog.registry.declare_int("x", 0, 9);
    prog.registry.declare_int("y", 0, 9);
    prog.registry.declare_bool("hit");
    prog.registry.declare_bool("miss");
    const int r = static_cast<int>(rng() % 6);
    const int c = static_cast<int>(rng() % 10);
    const int shape = static_cast<int>(rng() % 4);
    const Guard leaf = guard(rel(var("x"), kRels[r], lit(c)));
    const Guard other = guard(gt(var("y"), var("x")));
    const Guard g = shape == 0 ? leaf : shape == 1 ? g_not(leaf) : shape == 2 ? g_and({leaf, other}) : g_or({leaf, other});
    std::vector<std::pair<int, int>> input(horizon);
    for (auto& [x, y] : input) x = static_cast<int>(rng() % 10), y = static_cast<int>(rng() % 10);
    auto holds = [&](int t) {
      const bool h = oracle::holds(input[t].first, kOps[r], c);
      const bool o = input[t].second > input[t].first;
      return shape == 0 ? h : shape == 1 ? !h : shape == 2 ? (h && o) : (h || o);
    };
    prog.main = bang(par({when(g, tell(eq(var("hit"), lit(1)))), unless(g, tell(eq(var("miss"), lit(1))))}));
    Engine eng(std::move(prog), {.horizon = horizon});
    eng.set_input([&](int t) {
      return std::vector<Constraint>{eq(var("x"), lit(input[t].first)), eq(var("y"), lit(input[t].second))};
    });
    const Trace tr = eng.simulate();
    for (int t = 0; t + 1 < horizon; ++t) {
      const bool hit = value_at(tr.units[t], "hit").has_value();
      const bool miss = value_at(tr.units[t + 1], "miss").has_value();
      if (hit != holds(t) || hit == miss) return fail("program " + std::to_string(k) + " at unit " + std::to_string(t));
    }
  }
  return {true, std::to_string(programs) + " guards, exactly one side each unit"};
}

Result star_totality(int seeds) {
  Program prog;
  prog.registry.declare_bool("End");
  prog.main = star(tell(eq(var("End"), lit(1))));
  std::set<int> chosen;
  for (int seed = 0; seed < seeds; ++seed) {
    Engine eng(prog, {.horizon = 10, .seed = static_cast<std::uint64_t>(seed)});
    const Trace tr = eng.simulate();
    int count = 0;
    for (const auto& u : tr.units) {
      if (value_at(u, "End")) {
        ++count;
        chosen.insert(u.tu);
      }
    }
    if (count != 1) return fail("seed " + std::to_string(seed) + " ran the body " + std::to_string(count) + " times");
  }
  if (chosen.size() != 10) return fail("only " + std::to_string(chosen.size()) + " distinct units chosen");
  return {true, std::to_string(seeds) + " seeds, all 10 units chosen"};
}

Result sum_frequencies(int runs, double lo, double hi) {
  Program prog;
  prog.registry.declare_int("p", 0, 127);
  prog.main = choice({tell(eq(var("p"), lit(48))), tell(eq(var("p"), lit(52))), tell(eq(var("p"), lit(55)))});
  std::map<int, int> freq;
  for (int seed = 0; seed < runs; ++seed) {
    Engine eng(prog, {.horizon = 1, .seed = static_cast<std::uint64_t>(seed)});
    const auto v = value_at(eng.run_time_unit(), "p");
    if (!v) return fail("seed " + std::to_string(seed) + " chose nothing");
    ++freq[*v];
  }
  std::ostringstream os;
  bool ok = freq.size() == 3;
  for (const auto& [v, n] : freq) {
    const double f = static_cast<double>(n) / runs;
    os << v << ':' << f << ' ';
    if (f < lo || f > hi) ok = false;
  }
  return {ok, os.str()};
}

Result cell_increment() {
  Program prog;
  prog.registry.declare_int("x", 0, 100);
  prog.main = par({cell_new(var("x"), lit(0)), cell_assign(var("x"), "v", param("v") + lit(1))});
  Engine eng(prog, {.horizon = 2});
  const Trace tr = eng.simulate();
  if (value_at(tr.units[0], "x") != 0 || value_at(tr.units[1], "x") != 1) return fail("x+1 not applied once");

  Program each;
  each.registry.declare_int("x", 0, 100);
  each.main = par({cell_new(var("x"), lit(0)), bang(cell_assign(var("x"), "v", param("v") + lit(1)))});
  Engine e2(each, {.horizon = 6});
  const Trace t2 = e2.simulate();
  for (int t = 0; t < 6; ++t)
    if (value_at(t2.units[t], "x") != t) return fail("bang increment at unit " + std::to_string(t));

  Program keep;
  keep.registry.declare_int("x", 0, 100);
  keep.main = cell_new(var("x"), lit(7));
  Engine e3(keep, {.horizon = 5});
  for (const auto& u : e3.simulate().units)
    if (value_at(u, "x") != 7) return fail("value not carried");
  return {true, "x: 0 -> 1, bang gives x = t, untouched cells persist"};
}

Result cell_differential(int programs) {
  std::mt19937 rng(41);
  for (int k = 0; k < programs; ++k) {
    const int cells = 1 + static_cast<int>(rng() % 3);
    const int horizon = 2 + static_cast<int>(rng() % 7);
    std::vector<P> eng_kids;
    std::vector<P> ref_kids;
    for (int i = 0; i < cells; ++i) {
      const int z = static_cast<int>(rng() % 21);
      eng_kids.push_back(cell_ref::eng_new(i, z));
      ref_kids.push_back(cell_ref::ref_new(i, z));
    }
    for (int t = 0; t + 1 < horizon; ++t) {
      std::vector<bool> busy(cells, false);
      std::vector<P> eng_ops;
      std::vector<P> ref_ops;
      for (int op = 0; op < cells; ++op) {
        const int i = static_cast<int>(rng() % cells);
        const int j = static_cast<int>(rng() % cells);
        cell_ref::Fn g{static_cast<int>(rng() % 2), static_cast<int>(rng() % 4)};
        if (g.mul == 0) g.add = static_cast<int>(rng() % 21);
        const int what = static_cast<int>(rng() % 3);
        if (what == 0 || busy[i]) continue;
        if (what == 1 || i == j || busy[j]) {
          busy[i] = true;
          eng_ops.push_back(cell_ref::eng_assign(i, g));
          ref_ops.push_back(cell_ref::ref_assign(i, g));
        } else {
          busy[i] = busy[j] = true;
          eng_ops.push_back(cell_ref::eng_exch(i, j, g));
          ref_ops.push_back(cell_ref::ref_exch(i, j, g));
        }
      }
      if (eng_ops.empty()) continue;
      eng_kids.push_back(t == 0 ? par(eng_ops) : next(par(eng_ops), t));
      ref_kids.push_back(t == 0 ? par(ref_ops) : next(par(ref_ops), t));
    }
    Program eng_prog{cell_ref::registry(cells), {}, par(eng_kids)};
    Program ref_prog{cell_ref::registry(cells), cell_ref::procedures(), par(ref_kids)};
    Engine e1(std::move(eng_prog), {.horizon = horizon});
    Engine e2(std::move(ref_prog), {.horizon = horizon});
    const Trace t1 = e1.simulate();
    const Trace t2 = e2.simulate();
    for (int t = 0; t < horizon; ++t) {
      for (int i = 0; i < cells; ++i) {
        const auto name = "c[" + std::to_string(i) + "]";
        const auto v1 = value_at(t1.units[t], name);
        const auto v2 = value_at(t2.units[t], name);
        if (!v1 || v1 != v2) {
          return fail("program " + std::to_string(k) + ": " + name + " at unit " + std::to_string(t) + " engine=" +
                      (v1 ? std::to_string(*v1) : "-") + " reference=" + (v2 ? std::to_string(*v2) : "-"));
        }
      }
    }
  }
  return {true, std::to_string(programs) + " random cell programs agree"};
}

Result queue_conservation(int programs) {
  std::mt19937 rng(43);
  const int horizon = 5;
  for (int k = 0; k < programs; ++k) {
    std::vector<P> kids;
    std::size_t expected_drops = 0;
    for (int i = 0; i < 6; ++i) {
      const Constraint c = eq(a(i), lit(i));
      switch (rng() % 3) {
        case 0: {
          const int d = 1 + static_cast<int>(rng() % 8);
          kids.push_back(next(tell(c), d));
          if (d >= horizon) ++expected_drops;
          break;
        }
        case 1:
          kids.push_back(bang(tell(c)));
          ++expected_drops;  // the copy scheduled past the last unit
          break;
        default:
          kids.push_back(star(tell(c)));
      }
    }
    Engine eng(array_program(par(kids)), {.horizon = horizon, .seed = static_cast<std::uint64_t>(k)});
    eng.simulate();
    for (int t = 0; t < horizon; ++t)
      if (eng.enqueued_for(t) != eng.drained_at(t)) return fail("unit " + std::to_string(t) + " not drained");
    if (eng.dropped() != expected_drops) {
      return fail("program " + std::to_string(k) + " dropped " + std::to_string(eng.dropped()) + ", expected " +
                  std::to_string(expected_drops));
    }
  }
  return {true, std::to_string(programs) + " programs"};
}

}  // namespace props
