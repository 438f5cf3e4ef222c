#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ntcc/process.hpp"

namespace ntcc::dsl {

/// S-expression node. Atoms may carry bracketed indices, as in `S[(- i 1)]`;
/// each index holds exactly one S-expression.
struct Sexp {
  enum class Kind { Atom, List };
  Kind kind = Kind::Atom;
  std::string text;            // Atom
  std::vector<Sexp> items;     // List
  std::vector<Sexp> indices;   // Atom
  SourceSpan span;

  bool is_atom() const noexcept { return kind == Kind::Atom; }
  bool is_list() const noexcept { return kind == Kind::List; }
  bool is_atom(std::string_view t) const { return is_atom() && indices.empty() && text == t; }
  /// Head symbol of a non-empty list whose first item is a plain atom.
  std::string_view head() const;
  friend bool operator==(const Sexp&, const Sexp&) = default;
};

/// Reads every top-level form. `;` starts a comment running to end of line.
/// Throws SyntaxError on unbalanced parentheses or brackets.
std::vector<Sexp> read_all(std::string_view text);

/// Single-line rendering.
std::string to_string(const Sexp& s);
/// Multi-line rendering: lists that do not fit in `width` columns put each
/// argument after the first few on its own line.
std::string pretty(const Sexp& s, std::size_t width = 100, std::size_t indent = 0);

}  // namespace ntcc::dsl
