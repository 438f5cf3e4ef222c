#include "ntcc/io/json.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "ntcc/errors.hpp"

namespace ntcc::io {

using nlohmann::ordered_json;

namespace {

Expr parse_var_ref(const std::string& text, std::size_t line) {
  const auto bracket = text.find('[');
  std::vector<Expr> idx;
  for (std::size_t pos = bracket; pos != std::string::npos && pos < text.size();) {
    const auto close = text.find(']', pos);
    std::int64_t v = 0;
    const char* first = text.data() + pos + 1;
    const char* last = close == std::string::npos ? first : text.data() + close;
    auto [p, ec] = std::from_chars(first, last, v);
    if (text[pos] != '[' || close == std::string::npos || ec != std::errc() || p != last)
      throw SyntaxError("malformed variable reference '" + text + "'", line, 1);
    idx.push_back(lit(v));
    pos = close + 1;
  }
  return var(text.substr(0, bracket), std::move(idx));
}

std::vector<Constraint> parse_tell(const ordered_json& t, const ccp::VariableRegistry& reg, std::size_t line) {
  if (!t.is_object() || !t.contains("var") || !t.contains("op") || !t.contains("value"))
    throw SyntaxError("tell needs \"var\", \"op\" and \"value\"", line, 1);
  const std::string name = t.at("var").get<std::string>();
  const std::string op = t.at("op").get<std::string>();
  const auto& value = t.at("value");
  Expr x = parse_var_ref(name, line);
  fd::VarKind kind{};
  try {
    kind = reg.slot_decl(reg.slot(name)).kind;
  } catch (const Error& e) {
    throw SyntaxError(e.what(), line, 1);
  }

  auto scalar = [&]() {
    if (!value.is_number_integer()) throw SyntaxError("op '" + op + "' needs an integer value", line, 1);
    return lit(value.get<std::int64_t>());
  };
  if (op == "=") return {eq(x, scalar())};
  if (op == ">=") return {ge(x, scalar())};
  if (op != "in") throw SyntaxError("unknown op '" + op + "'", line, 1);
  if (value.is_number_integer()) {
    if (kind != fd::VarKind::Set) throw SyntaxError("'in' with an integer needs a set variable", line, 1);
    return {in(scalar(), x)};
  }
  if (!value.is_array() || value.size() != 2 || !value[0].is_number_integer() || !value[1].is_number_integer())
    throw SyntaxError("'in' needs an integer or a [lo, hi] pair", line, 1);
  const Expr lo = lit(value[0].get<std::int64_t>());
  const Expr hi = lit(value[1].get<std::int64_t>());
  if (kind == fd::VarKind::Set) return {eq(x, range(lo, hi))};
  return {ge(x, lo), le(x, hi)};
}

ordered_json value_json(const ccp::VarValue& v) {
  if (v.kind == fd::VarKind::Set) return ordered_json{{"glb", v.glb}, {"lub", v.lub}};
  if (v.assigned && v.value) return *v.value;
  return nullptr;
}

}  // namespace

InputScript read_input_script(std::istream& in, const ccp::VariableRegistry& reg) {
  InputScript script;
  std::string text;
  for (std::size_t line = 1; std::getline(in, text); ++line) {
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw SyntaxError(std::string("invalid JSON: ") + e.what(), line, e.byte);
    }
    if (!j.is_object() || !j.contains("tu") || !j.at("tu").is_number_integer())
      throw SyntaxError("input line needs an integer \"tu\"", line, 1);
    const int tu = j.at("tu").get<int>();
    if (tu < 0) throw SyntaxError("negative \"tu\"", line, 1);
    auto& tells = script[tu];
    if (!j.contains("tell")) continue;
    if (!j.at("tell").is_array()) throw SyntaxError("\"tell\" must be an array", line, 1);
    try {
      for (const auto& t : j.at("tell")) {
        auto cs = parse_tell(t, reg, line);
        tells.insert(tells.end(), cs.begin(), cs.end());
      }
    } catch (const nlohmann::json::exception& e) {
      throw SyntaxError(e.what(), line, 1);
    }
  }
  return script;
}

InputHook make_input_hook(InputScript script) {
  return [script = std::move(script)](int tu) {
    auto it = script.find(tu);
    return it == script.end() ? std::vector<Constraint>{} : it->second;
  };
}

std::string unit_json(const UnitReport& r, bool timing) {
  ordered_json vars = ordered_json::object();
  for (const auto& [name, v] : r.vars) vars[name] = value_json(v);
  ordered_json j{{"tu", r.tu},
                 {"vars", std::move(vars)},
                 {"fired_asks", r.fired},
                 {"scheduled", r.executed},
                 {"elapsed_us", timing ? r.elapsed_us : 0}};
  return j.dump();
}

void TraceWriter::header(std::uint64_t seed, int units) {
  *out_ << ordered_json{{"seed", seed}, {"units", units}}.dump() << '\n' << std::flush;
}

void TraceWriter::unit(const UnitReport& r) { *out_ << unit_json(r, timing_) << '\n' << std::flush; }

void TraceWriter::inconsistent(int tu) {
  *out_ << ordered_json{{"error", "inconsistent"}, {"tu", tu}}.dump() << '\n' << std::flush;
}

std::string fo_json(const fo::FactorOracle& fo) {
  ordered_json delta = ordered_json::array();
  for (int s = 0; s <= fo.size(); ++s)
    for (const auto& [sym, to] : fo.transitions(s)) delta.push_back({s, sym, to});
  return ordered_json{{"m", fo.size()}, {"delta", std::move(delta)}, {"suffix", fo.suffix_links()}}.dump();
}

}  // namespace ntcc::io
