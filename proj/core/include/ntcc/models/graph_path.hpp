#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "ntcc/ccp/executor.hpp"
#include "ntcc/engine.hpp"

namespace ntcc::models {

struct GraphSpec {
  std::vector<std::pair<int, int>> edges;
  int a = 0;
  int b = 0;
};

struct PathResult {
  bool found = false;
  std::vector<int> path;  // vertex ids from a to b
};

/// One process per edge (i, j): forward signal i -> j, back signal j -> i,
/// and when both meet, path = 1 and j joins S[i]. Vertices are renumbered
/// 0..V-1 in increasing id order; the variables are fwd[V], back[V], path
/// and S[V] over {0..V-1}.
Program graph_path_program(const GraphSpec& spec);
/// Vertex ids in the renumbering used by graph_path_program.
std::vector<int> graph_vertices(const GraphSpec& spec);

/// Single CCP run; a == b is the trivial path [a].
PathResult graph_path_run(const GraphSpec& spec);

/// "i j" per line; '#' starts a comment. Throws SyntaxError.
std::vector<std::pair<int, int>> read_edges(std::istream& in);

}  // namespace ntcc::models
