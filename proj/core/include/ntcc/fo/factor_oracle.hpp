#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ntcc::fo {

using Symbol = int;

/// Incremental factor oracle over integer symbols.
///
/// States are 0..m. Factor links are labeled forward transitions; suffix
/// links point strictly backward, with suffix(0) == -1.
class FactorOracle {
 public:
  FactorOracle();
  explicit FactorOracle(std::span<const Symbol> word);

  /// Appends one symbol: creates state m+1 and the links into it.
  void add(Symbol sigma);

  /// Number of symbols learned.
  int size() const noexcept { return static_cast<int>(word_.size()); }
  const std::vector<Symbol>& word() const noexcept { return word_; }

  /// Target of the factor link (state, sigma). Throws RangeError for a
  /// state outside 0..m.
  std::optional<int> transition(int state, Symbol sigma) const;
  const std::map<Symbol, int>& transitions(int state) const;
  int suffix(int state) const;
  const std::vector<int>& suffix_links() const noexcept { return suffix_; }

  /// True iff the walk from state 0 consumes the whole word.
  bool is_factor(std::span<const Symbol> word) const;

  std::size_t num_factor_links() const noexcept { return links_; }
  /// Suffix links followed by add() so far.
  std::size_t chain_steps() const noexcept { return steps_; }

  friend bool operator==(const FactorOracle& a, const FactorOracle& b) {
    return a.word_ == b.word_ && a.delta_ == b.delta_ && a.suffix_ == b.suffix_;
  }

 private:
  void check_state(int state) const;

  std::vector<Symbol> word_;
  std::vector<std::map<Symbol, int>> delta_;
  std::vector<int> suffix_;
  std::size_t links_ = 0;
  std::size_t steps_ = 0;
};

using SymbolLabel = std::function<std::string(Symbol)>;

/// Graphviz rendering: factor links solid and labeled, suffix links dashed.
/// The link to -1 is not drawn.
std::string to_dot(const FactorOracle& fo, const SymbolLabel& label = {});

}  // namespace ntcc::fo
