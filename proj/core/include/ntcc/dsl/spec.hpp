#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ntcc/ccp/registry.hpp"
#include "ntcc/engine.hpp"
#include "ntcc/process.hpp"

namespace ntcc::dsl {

/// Parsed specification. Names inside expressions are unresolved
/// (Expr::Kind::Sym) until elaboration.
struct SpecAst {
  std::vector<ccp::VarDecl> vars;
  std::vector<ProcedureDef> procs;
  std::vector<std::string> main_params;
  bool has_main = false;
  P main;
  bool general_recursion = false;
  SourceSpan main_span;

  friend bool operator==(const SpecAst&, const SpecAst&) = default;
};

/// Throws SyntaxError with the position of the first offending form.
SpecAst parse(std::string_view text);

/// Canonical text: options, declarations, procedures, then main.
std::string print(const SpecAst& ast);

/// Resolves names, checks arities and dimensions, folds constant indices and
/// binds main's parameters to `main_args`.
/// Throws UnknownName, ArityError or DimensionError.
Program elaborate(const SpecAst& ast, const std::vector<std::int64_t>& main_args = {});

/// The DSL spelling of a host-built program.
SpecAst from_program(const Program& prog);

struct Finding {
  std::string rule;
  std::string message;
  SourceSpan span;
  bool error = false;
  friend bool operator==(const Finding&, const Finding&) = default;
};

/// Elaboration errors, engine validation rules and style warnings
/// (unused-defproc).
std::vector<Finding> lint(const SpecAst& ast);

}  // namespace ntcc::dsl
