#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ntcc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Store construction.
class BoundsError : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class KindError : public Error { using Error::Error; };

// Process terms and procedures.
class ArityError : public Error { using Error::Error; };
class UndeclaredVariable : public Error { using Error::Error; };
class UnknownProcedure : public Error { using Error::Error; };
class UnsupportedProcess : public Error { using Error::Error; };
class EvaluationError : public Error { using Error::Error; };
class ProcessBudgetExceeded : public Error { using Error::Error; };

// Cells.
class UnknownCell : public Error { using Error::Error; };
class DoubleAssign : public Error { using Error::Error; };

// Elaboration.
class UnknownName : public Error { using Error::Error; };
class DimensionError : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };
class RangeError : public Error { using Error::Error; };

/// Raised when a time unit's final fixpoint fails.
class InconsistentUnit : public Error {
 public:
  InconsistentUnit(int unit, std::string told)
      : Error("inconsistent store at time unit " + std::to_string(unit) +
              (told.empty() ? std::string{} : ": " + told)),
        unit_(unit),
        told_(std::move(told)) {}

  int unit() const noexcept { return unit_; }
  const std::string& told() const noexcept { return told_; }

 private:
  int unit_;
  std::string told_;
};

/// Syntax error with a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ntcc
