#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ntcc::models {

struct KnetProblem {
  std::vector<int> pitches;  // pitch classes 0..11
  int k = 0;                 // inversions
  /// Extension: only keep solutions whose edges connect every pitch.
  bool connected = false;
};

struct KnetSolution {
  /// x[i][j]: 0 no edge, 1 transposition, 2 inversion.
  std::vector<std::vector<int>> matrix;
  /// "--", "Tm" or "Iv" per cell.
  std::vector<std::vector<std::string>> labels;
};

/// All solutions in depth-first order over the upper triangle, row by row,
/// smallest value first. A limit of 0 means no limit. Throws ConfigError on
/// a malformed problem.
std::vector<KnetSolution> knets_solve(const KnetProblem& problem, std::size_t limit = 0);

/// Label for edge i -> j: Tm with m = (I_j - I_i) mod 12, Iv with
/// v = (I_i + I_j) mod 12.
std::string knet_label(const std::vector<int>& pitches, int i, int j, int kind);

/// (("--" "I1" "T4") ("I1" "--" "T11") ...)
std::string knet_rows(const KnetSolution& s);
/// [{"matrix": [[...]], "labels": [[...]]}, ...]
std::string knets_json(const std::vector<KnetSolution>& sols);

}  // namespace ntcc::models
