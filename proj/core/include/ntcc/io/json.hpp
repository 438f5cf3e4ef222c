#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ntcc/ccp/registry.hpp"
#include "ntcc/engine.hpp"
#include "ntcc/fo/factor_oracle.hpp"

namespace ntcc::io {

/// Tells per time unit, read from a JSON-lines input script.
using InputScript = std::map<int, std::vector<Constraint>>;

/// One object per line:
///   {"tu": 0, "tell": [{"var": "x", "op": "=", "value": 5}, ...]}
/// Ops are "=", ">=" and "in". For "in", an integer value on a set variable
/// is membership; a [lo, hi] pair bounds an integer variable or fixes a set
/// variable to that range. Blank lines are skipped.
/// Throws SyntaxError (line-numbered) on malformed lines and the registry's
/// errors on unknown variables.
InputScript read_input_script(std::istream& in, const ccp::VariableRegistry& reg);
InputHook make_input_hook(InputScript script);

/// Writes the JSON-lines trace. Every line is flushed as soon as it is
/// complete.
class TraceWriter {
 public:
  explicit TraceWriter(std::ostream& out, bool timing = true) : out_(&out), timing_(timing) {}

  /// {"seed": S, "units": N}
  void header(std::uint64_t seed, int units);
  /// {"tu", "vars", "fired_asks", "scheduled", "elapsed_us"}
  void unit(const UnitReport& r);
  /// {"error": "inconsistent", "tu": N}
  void inconsistent(int tu);

 private:
  std::ostream* out_;
  bool timing_;
};

std::string unit_json(const UnitReport& r, bool timing = true);

/// {"m": m, "delta": [[from, symbol, to], ...], "suffix": [...]}
std::string fo_json(const fo::FactorOracle& fo);

}  // namespace ntcc::io
