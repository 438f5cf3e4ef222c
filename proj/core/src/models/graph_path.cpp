#include "ntcc/models/graph_path.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "ntcc/errors.hpp"

namespace ntcc::models {

namespace {

int index_of(const std::vector<int>& vs, int v) {
  return static_cast<int>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
}

Expr at(const char* name, int i) { return var(name, {lit(i)}); }

}  // namespace

std::vector<int> graph_vertices(const GraphSpec& spec) {
  std::vector<int> vs{spec.a, spec.b};
  for (auto [i, j] : spec.edges) {
    vs.push_back(i);
    vs.push_back(j);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  if (vs.front() < 0) throw ConfigError("vertex ids must be non-negative");
  return vs;
}

Program graph_path_program(const GraphSpec& spec) {
  const auto vs = graph_vertices(spec);
  const int n = static_cast<int>(vs.size());
  Program prog;
  prog.registry.declare_bool("fwd", {n});
  prog.registry.declare_bool("back", {n});
  prog.registry.declare_bool("path");
  prog.registry.declare_set("S", 0, n - 1, {n});

  std::vector<P> kids{tell(eq(at("fwd", index_of(vs, spec.a)), lit(1))),
                      tell(eq(at("back", index_of(vs, spec.b)), lit(1)))};
  for (auto [vi, vj] : spec.edges) {
    const int i = index_of(vs, vi);
    const int j = index_of(vs, vj);
    kids.push_back(par({when(guard(eq(at("fwd", i), lit(1))), tell(eq(at("fwd", j), lit(1)))),
                        when(guard(eq(at("back", j), lit(1))), tell(eq(at("back", i), lit(1)))),
                        when(g_and({guard(eq(at("fwd", i), lit(1))), guard(eq(at("back", j), lit(1)))}),
                             par({tell(eq(var("path"), lit(1))), tell(in(lit(j), at("S", i)))}))}));
  }
  prog.main = par(std::move(kids));
  return prog;
}

PathResult graph_path_run(const GraphSpec& spec) {
  if (spec.a == spec.b) return {true, {spec.a}};
  const auto vs = graph_vertices(spec);
  const auto prog = graph_path_program(spec);
  const auto snap = ccp::run_ccp(prog.registry, prog.main);
  if (snap.failed || !snap.at("path").assigned) return {};

  // Every member j of S[i] lies on some a -> b path, so a depth-first walk
  // over the lower bounds reaches b.
  const int n = static_cast<int>(vs.size());
  const int a = index_of(vs, spec.a);
  const int b = index_of(vs, spec.b);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{a};
  std::vector<std::size_t> cursor{0};
  seen[static_cast<std::size_t>(a)] = 1;
  while (!stack.empty() && stack.back() != b) {
    const auto& glb = snap.at("S[" + std::to_string(stack.back()) + "]").glb;
    std::size_t& c = cursor.back();
    while (c < glb.size() && seen[static_cast<std::size_t>(glb[c])]) ++c;
    if (c == glb.size()) {
      stack.pop_back();
      cursor.pop_back();
      continue;
    }
    const int nx = glb[c++];
    seen[static_cast<std::size_t>(nx)] = 1;
    stack.push_back(nx);
    cursor.push_back(0);
  }
  if (stack.empty()) throw Error("path variable set but no path through the S sets");
  PathResult r{true, {}};
  for (int v : stack) r.path.push_back(vs[static_cast<std::size_t>(v)]);
  return r;
}

std::vector<std::pair<int, int>> read_edges(std::istream& in) {
  std::vector<std::pair<int, int>> edges;
  std::string text;
  for (std::size_t line = 1; std::getline(in, text); ++line) {
    text = text.substr(0, text.find('#'));
    std::istringstream ss(text);
    long long i = 0;
    long long j = 0;
    if (!(ss >> i)) {
      if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw SyntaxError("expected two vertex ids", line, 1);
    }
    std::string rest;
    if (!(ss >> j) || (ss >> rest)) throw SyntaxError("expected two vertex ids", line, 1);
    if (i < 0 || j < 0 || i > INT32_MAX || j > INT32_MAX) throw SyntaxError("vertex ids must be non-negative", line, 1);
    edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
  }
  return edges;
}

}  // namespace ntcc::models
