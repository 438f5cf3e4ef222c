#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ntcc/engine.hpp"
#include "ntcc/fo/factor_oracle.hpp"

namespace ntcc::models {

/// Learning and improvisation with a factor oracle written as NTCC
/// processes.
///
/// Processes (k, i, j are states; s indexes the alphabet):
///   Player(j)      plays the j-th note (go = j, sigma[j]) or postpones (go = j-1)
///   Sync(i)        waits for S[i-1] >= -1 and go >= i, then runs Add(i) and
///                  moves on to Sync(i+1) in the next unit
///   Add(i), AddS   link delta[i-1][s] := i, then walk the suffix chain
///   Chain(k,i,s)   one step of the walk: add a link from k or settle S[i]
///   Choice(k)      improvisation from state k: forward to k+1 with
///                  probability q, otherwise jump along S[k] and take any
///                  forward link from there
/// delta and S are cells; F[k] is the set of labels leaving k.
struct CcfomiConfig {
  /// Pitch per unit, nullopt for a rest. Used unless random_player is set.
  std::vector<std::optional<int>> script;
  /// Player chooses between playing and postponing at random, with pitches
  /// drawn uniformly from the alphabet.
  bool random_player = false;
  /// Symbols; empty means the distinct pitches of the script in order.
  std::vector<int> alphabet;
  /// Notes learned before improvisation starts.
  int n = 1;
  /// Probability of continuing forward.
  double q = 0.5;
  int horizon = 1;
  std::uint64_t seed = 0;
  /// Largest state; 0 means the number of notes in the script.
  int states = 0;
};

/// Oracle decoded from the model's cells, over pitches.
struct LearnedOracle {
  std::vector<int> suffix;                 // suffix[0] == -1
  std::vector<std::map<int, int>> delta;   // per state: pitch -> target
  friend bool operator==(const LearnedOracle&, const LearnedOracle&) = default;
};

LearnedOracle to_learned(const fo::FactorOracle& fo);

struct ImprovStep {
  int tu = 0;
  int from = 0;
  int to = 0;
  int pitch = 0;
};

struct CcfomiResult {
  Trace trace;
  LearnedOracle learned;
  std::vector<ImprovStep> improvisation;
  double mean_elapsed_us = 0;
  double max_elapsed_us = 0;
  double mean_scheduled = 0;
};

/// Throws ConfigError for invalid settings.
Program ccfomi_build(const CcfomiConfig& config);
CcfomiResult ccfomi_run(const CcfomiConfig& config);

/// Random-player configuration whose units schedule roughly `processes`
/// process terms each.
CcfomiConfig ccfomi_bench_config(int processes, int units, std::uint64_t seed = 0);

}  // namespace ntcc::models
