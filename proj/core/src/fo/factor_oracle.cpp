#include "ntcc/fo/factor_oracle.hpp"

#include <sstream>

#include "ntcc/errors.hpp"

namespace ntcc::fo {

FactorOracle::FactorOracle() : delta_(1), suffix_{-1} {}

FactorOracle::FactorOracle(std::span<const Symbol> word) : FactorOracle() {
  delta_.reserve(word.size() + 1);
  suffix_.reserve(word.size() + 1);
  for (Symbol s : word) add(s);
}

void FactorOracle::add(Symbol sigma) {
  const int i = size() + 1;
  word_.push_back(sigma);
  delta_.emplace_back();
  delta_[i - 1][sigma] = i;
  ++links_;
  int k = suffix_[i - 1];
  while (k > -1 && !delta_[k].contains(sigma)) {
    delta_[k][sigma] = i;
    ++links_;
    k = suffix_[k];
    ++steps_;
  }
  suffix_.push_back(k == -1 ? 0 : delta_[k].at(sigma));
}

void FactorOracle::check_state(int state) const {
  if (state < 0 || state > size()) {
    throw RangeError("state " + std::to_string(state) + " outside 0.." + std::to_string(size()));
  }
}

std::optional<int> FactorOracle::transition(int state, Symbol sigma) const {
  check_state(state);
  auto it = delta_[state].find(sigma);
  if (it == delta_[state].end()) return std::nullopt;
  return it->second;
}

const std::map<Symbol, int>& FactorOracle::transitions(int state) const {
  check_state(state);
  return delta_[state];
}

int FactorOracle::suffix(int state) const {
  check_state(state);
  return suffix_[state];
}

bool FactorOracle::is_factor(std::span<const Symbol> word) const {
  int state = 0;
  for (Symbol s : word) {
    auto it = delta_[state].find(s);
    if (it == delta_[state].end()) return false;
    state = it->second;
  }
  return true;
}

std::string to_dot(const FactorOracle& fo, const SymbolLabel& label) {
  std::ostringstream os;
  os << "digraph factor_oracle {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (int i = 0; i <= fo.size(); ++i) os << "  " << i << ";\n";
  for (int i = 0; i <= fo.size(); ++i) {
    for (const auto& [sym, to] : fo.transitions(i)) {
      os << "  " << i << " -> " << to << " [label=\"" << (label ? label(sym) : std::to_string(sym)) << "\"];\n";
    }
  }
  for (int i = 1; i <= fo.size(); ++i) {
    os << "  " << i << " -> " << fo.suffix(i) << " [style=dashed, arrowhead=empty];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace ntcc::fo
