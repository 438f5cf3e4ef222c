#include "ntcc/models/ccfomi.hpp"

#include <algorithm>
#include <cmath>

#include "ntcc/errors.hpp"

namespace ntcc::models {

namespace {

Expr p(const char* name) { return param(name); }
Expr v(const char* name) { return var(name); }
Expr at(const char* name, Expr i) { return var(name, {std::move(i)}); }
Expr at(const char* name, Expr i, Expr j) { return var(name, {std::move(i), std::move(j)}); }
Guard is(Constraint c) { return guard(std::move(c)); }

struct Shape {
  int states = 0;   // N: largest state
  int symbols = 0;  // A
};

ProcedureTable procedures(const CcfomiConfig& cfg, Shape sh) {
  const int N = sh.states;
  const int A = sh.symbols;
  ProcedureTable t;
  auto def = [&](const char* name, std::vector<const char*> params, P body) {
    ProcedureDef d{name, {}, std::move(body), {}};
    for (const char* q : params) d.params.push_back({q, false});
    t[name] = std::move(d);
  };

  // Player(j): play the j-th note now, or postpone.
  const P play = par({tell(eq(v("go"), p("j"))), tell(eq(at("sigma", p("j")), v("sym"))),
                      ptell(eq(at("sigma", p("j")), v("sym"))), next(call("Player", {p("j") + lit(1)}))});
  const P postpone = par({tell(eq(v("go"), p("j") - lit(1))), next(call("Player", {p("j")}))});
  if (cfg.random_player) {
    def("Player", {"j"}, sum({{is(le(p("j"), lit(N))), play}, {g_true(), postpone}}));
  } else {
    def("Player", {"j"}, sum({{is(eq(v("avail"), lit(1))), play}, {is(eq(v("avail"), lit(0))), postpone}}));
  }

  // Sync(i): learn the i-th symbol once state i-1 is complete and played.
  const Guard ready = g_and({is(ge(at("S", p("i") - lit(1)), lit(-1))), is(ge(v("go"), p("i")))});
  def("Sync", {"i"},
      par({when(ready, par({call("Add", {p("i")}), next(call("Sync", {p("i") + lit(1)}))})),
           unless(ready, call("Sync", {p("i")}))}));

  // Add(i): dispatch on the played symbol.
  std::vector<P> add;
  for (int s = 0; s < A; ++s) add.push_back(when(is(eq(at("sigma", p("i")), lit(s))), call("AddS", {p("i"), lit(s)})));
  def("Add", {"i"}, par(std::move(add)));

  // Walks from S[k] along suffix links, one Chain per state.
  auto walk = [&](Expr k) {
    std::vector<P> out;
    for (int x = -1; x < N; ++x)
      out.push_back(when(is(eq(at("S", k), lit(x))), call("Chain", {lit(x), p("i"), p("s")})));
    return out;
  };
  auto link = [&](Expr k) {
    return std::vector<P>{cell_assign(at("delta", k, p("s")), "old", p("i")), next(ptell(in(p("s"), at("F", k))))};
  };

  // AddS(i, s): factor link i-1 -> i, then the suffix walk from S[i-1].
  {
    auto kids = link(p("i") - lit(1));
    auto w = walk(p("i") - lit(1));
    kids.insert(kids.end(), w.begin(), w.end());
    def("AddS", {"i", "s"}, par(std::move(kids)));
  }

  // Chain(k, i, s): past state 0 the suffix is 0; a state with an s-link to
  // j gives S[i] = j; otherwise link k -> i and keep walking.
  {
    std::vector<P> found;
    for (int j = 1; j <= N; ++j)
      found.push_back(when(is(eq(at("delta", p("k"), p("s")), lit(j))), cell_assign(at("S", p("i")), "old", lit(j))));
    auto missing = link(p("k"));
    auto w = walk(p("k"));
    missing.insert(missing.end(), w.begin(), w.end());
    found.push_back(when(is(eq(at("delta", p("k"), p("s")), lit(-1))), par(std::move(missing))));
    def("Chain", {"k", "i", "s"},
        par({when(is(eq(p("k"), lit(-1))), cell_assign(at("S", p("i")), "old", lit(0))),
             when(is(ge(p("k"), lit(0))), par(std::move(found)))}));
  }

  // Choice(k): wait until state k is learned.
  const Guard known = is(ge(at("S", p("k")), lit(-1)));
  def("Choice", {"k"}, par({when(known, call("Step", {p("k")})), unless(known, call("Choice", {p("k")}))}));

  // Step(k): forward when the coin says so (or there is no suffix to follow);
  // jump when the coin says so (or there is no forward link yet).
  {
    const Guard has_next = is(ge(at("S", p("k") + lit(1)), lit(0)));
    const Guard forward =
        g_and({has_next, g_or({is(eq(v("qc"), lit(1))), is(eq(at("S", p("k")), lit(-1)))})});
    const Guard jump = g_and({is(ge(at("S", p("k")), lit(0))), g_or({is(eq(v("qc"), lit(0))), g_not(has_next)})});
    std::vector<P> jumps;
    for (int x = 0; x < N; ++x) jumps.push_back(when(is(eq(at("S", p("k")), lit(x))), call("Pick", {lit(x)})));
    def("Step", {"k"},
        par({when(forward, par({tell(eq(v("out"), at("sigma", p("k") + lit(1)))), tell(eq(v("from"), p("k"))),
                                tell(eq(v("to"), p("k") + lit(1))), next(call("Choice", {p("k") + lit(1)}))})),
             when(jump, par(std::move(jumps)))}));
  }

  // Pick(x): any forward link leaving x.
  {
    std::vector<std::pair<Guard, P>> branches;
    for (int s = 0; s < A; ++s) {
      std::vector<P> kids{tell(eq(v("out"), lit(s))), tell(eq(v("from"), p("x")))};
      for (int j = 1; j <= N; ++j)
        kids.push_back(when(is(eq(at("delta", p("x"), lit(s)), lit(j))),
                            par({tell(eq(v("to"), lit(j))), next(call("Choice", {lit(j)}))})));
      branches.emplace_back(is(in(lit(s), at("F", p("x")))), par(std::move(kids)));
    }
    def("Pick", {"x"}, sum(std::move(branches)));
  }
  return t;
}

std::vector<int> alphabet_of(const CcfomiConfig& cfg) {
  if (!cfg.alphabet.empty()) return cfg.alphabet;
  std::vector<int> out;
  for (const auto& note : cfg.script)
    if (note && std::find(out.begin(), out.end(), *note) == out.end()) out.push_back(*note);
  return out;
}

int notes_in(const CcfomiConfig& cfg) {
  return static_cast<int>(std::count_if(cfg.script.begin(), cfg.script.end(), [](const auto& x) { return x.has_value(); }));
}

Shape shape_of(const CcfomiConfig& cfg) {
  if (cfg.n < 1) throw ConfigError("n must be at least 1");
  if (!(cfg.q >= 0.0 && cfg.q <= 1.0)) throw ConfigError("q must lie in [0, 1]");
  if (cfg.horizon < 1) throw ConfigError("horizon must be at least 1");
  const auto alpha = alphabet_of(cfg);
  Shape sh;
  sh.symbols = std::max<int>(1, static_cast<int>(alpha.size()));
  sh.states = cfg.states > 0 ? cfg.states : std::max(1, notes_in(cfg));
  if (!cfg.random_player && notes_in(cfg) > sh.states) throw ConfigError("the script has more notes than states");
  for (const auto& note : cfg.script)
    if (note && std::find(alpha.begin(), alpha.end(), *note) == alpha.end())
      throw ConfigError("pitch " + std::to_string(*note) + " is not in the alphabet");
  return sh;
}

}  // namespace

LearnedOracle to_learned(const fo::FactorOracle& fo) {
  LearnedOracle out;
  out.suffix = fo.suffix_links();
  for (int s = 0; s <= fo.size(); ++s) out.delta.push_back(fo.transitions(s));
  return out;
}

Program ccfomi_build(const CcfomiConfig& cfg) {
  const Shape sh = shape_of(cfg);
  const int N = sh.states;
  const int A = sh.symbols;
  Program prog;
  prog.general_recursion = true;
  auto& r = prog.registry;
  r.declare_int("out", 0, A - 1);
  r.declare_int("from", 0, N);
  r.declare_int("to", 0, N);
  r.declare_int("go", 0, N);
  r.declare_bool("avail");
  r.declare_int("sym", 0, A - 1);
  r.declare_bool("qc");
  r.declare_int("started", 0, 1);
  r.declare_int("sigma", 0, A - 1, {N + 2});
  r.declare_int("S", -2, N, {N + 2});
  r.declare_int("delta", -1, N, {N + 1, A});
  r.declare_set("F", 0, A - 1, {N + 1});
  prog.procedures = procedures(cfg, sh);

  std::vector<P> kids{cell_new(at("S", lit(0)), lit(-1))};
  for (int k = 1; k <= N + 1; ++k) kids.push_back(cell_new(at("S", lit(k)), lit(-2)));
  for (int k = 0; k <= N; ++k)
    for (int s = 0; s < A; ++s) kids.push_back(cell_new(at("delta", lit(k), lit(s)), lit(-1)));
  kids.push_back(cell_new(v("started"), lit(0)));
  kids.push_back(call("Player", {lit(1)}));
  kids.push_back(call("Sync", {lit(1)}));
  kids.push_back(bang(when(g_and({is(ge(v("go"), lit(cfg.n))), is(eq(v("started"), lit(0)))}),
                           par({cell_assign(v("started"), "old", lit(1)), call("Choice", {lit(cfg.n)})}))));
  prog.main = par(std::move(kids));
  return prog;
}

CcfomiResult ccfomi_run(const CcfomiConfig& cfg) {
  const Shape sh = shape_of(cfg);
  const auto alpha = alphabet_of(cfg);
  EngineOptions opts;
  opts.horizon = cfg.horizon;
  opts.seed = cfg.seed;
  Engine eng(ccfomi_build(cfg), opts);

  // The continuity coin and the random player's pitches use their own stream.
  Rng coin(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  eng.set_input([&](int tu) {
    std::vector<Constraint> tells;
    const bool q = coin.bernoulli(cfg.q);
    tells.push_back(eq(v("qc"), lit(q ? 1 : 0)));
    if (cfg.random_player) {
      tells.push_back(eq(v("sym"), lit(static_cast<std::int64_t>(coin.below(static_cast<std::uint64_t>(sh.symbols))))));
      return tells;
    }
    const auto u = static_cast<std::size_t>(tu);
    const bool avail = u < cfg.script.size() && cfg.script[u].has_value();
    tells.push_back(eq(v("avail"), lit(avail ? 1 : 0)));
    if (avail) {
      const auto idx = std::find(alpha.begin(), alpha.end(), *cfg.script[u]) - alpha.begin();
      tells.push_back(eq(v("sym"), lit(idx)));
    }
    return tells;
  });

  CcfomiResult res;
  res.trace = eng.simulate();

  const auto& cells = res.trace.final_cells;
  auto cell = [&](const std::string& name) {
    auto it = cells.find(name);
    return it == cells.end() ? -2 : it->second;
  };
  int m = 0;
  while (m + 1 <= sh.states && cell("S[" + std::to_string(m + 1) + "]") >= 0) ++m;
  for (int k = 0; k <= m; ++k) {
    res.learned.suffix.push_back(cell("S[" + std::to_string(k) + "]"));
    std::map<int, int> row;
    for (int s = 0; s < static_cast<int>(alpha.size()); ++s) {
      const int to = cell("delta[" + std::to_string(k) + "][" + std::to_string(s) + "]");
      if (to >= 0) row[alpha[static_cast<std::size_t>(s)]] = to;
    }
    res.learned.delta.push_back(std::move(row));
  }

  double total = 0;
  double scheduled = 0;
  for (const auto& u : res.trace.units) {
    total += static_cast<double>(u.elapsed_us);
    scheduled += static_cast<double>(u.executed);
    res.max_elapsed_us = std::max(res.max_elapsed_us, static_cast<double>(u.elapsed_us));
    std::optional<int> out, from, to;
    for (const auto& [name, val] : u.vars) {
      if (!val.assigned || !val.value) continue;
      if (name == "out") out = val.value;
      else if (name == "from") from = val.value;
      else if (name == "to") to = val.value;
    }
    if (out && from && to) res.improvisation.push_back({u.tu, *from, *to, alpha.at(static_cast<std::size_t>(*out))});
  }
  if (!res.trace.units.empty()) {
    res.mean_elapsed_us = total / static_cast<double>(res.trace.units.size());
    res.mean_scheduled = scheduled / static_cast<double>(res.trace.units.size());
  }
  return res;
}

CcfomiConfig ccfomi_bench_config(int processes, int units, std::uint64_t seed) {
  CcfomiConfig cfg;
  cfg.random_player = true;
  cfg.alphabet = {60, 62, 64, 65};
  cfg.n = 4;
  cfg.q = 0.5;
  cfg.horizon = units;
  cfg.seed = seed;
  // Measured: about 2.9 process terms per state and unit.
  cfg.states = std::max(cfg.n, processes * 10 / 29);
  return cfg;
}

}  // namespace ntcc::models
