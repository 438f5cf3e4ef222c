#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ntcc/fd/space.hpp"
#include "ntcc/process.hpp"

namespace ntcc::ccp {

/// A named logical variable or array. Set variables range over subsets of
/// {lo..hi}; arrays are flattened row-major.
struct VarDecl {
  std::string name;
  fd::VarKind kind = fd::VarKind::Int;
  int lo = 0;
  int hi = 0;
  std::vector<int> dims;
  SourceSpan span;

  std::size_t cells() const;
  friend bool operator==(const VarDecl&, const VarDecl&) = default;
};

/// Logical variables of a program. The registry is a pure description;
/// Binding realizes it lazily inside one Space.
class VariableRegistry {
 public:
  /// Throws ConfigError on duplicates, BoundsError on bad ranges and
  /// DimensionError on non-positive dimensions.
  void declare(VarDecl d);
  void declare_int(std::string name, int lo, int hi, std::vector<int> dims = {});
  void declare_bool(std::string name, std::vector<int> dims = {});
  void declare_set(std::string name, int lo, int hi, std::vector<int> dims = {});

  const std::vector<VarDecl>& decls() const noexcept { return decls_; }
  const VarDecl* find(const std::string& name) const;
  std::size_t num_slots() const noexcept { return kinds_.size(); }

  /// Flat slot of name[indices]. Throws UndeclaredVariable, DimensionError
  /// (wrong number of indices) or RangeError (index out of bounds).
  std::size_t slot(const std::string& name, std::span<const std::int64_t> indices) const;
  /// Parses "x" or "delta[1][2]".
  std::size_t slot(const std::string& flat_name) const;
  std::string slot_name(std::size_t slot) const;
  const VarDecl& slot_decl(std::size_t slot) const;

 private:
  std::vector<VarDecl> decls_;
  std::vector<std::size_t> offsets_;
  std::map<std::string, std::size_t> by_name_;
  std::vector<fd::VarKind> kinds_;
};

/// Value of one variable as read from a store.
struct VarValue {
  fd::VarKind kind = fd::VarKind::Int;
  bool assigned = false;
  std::optional<int> value;
  std::vector<int> glb;
  std::vector<int> lub;
  friend bool operator==(const VarValue&, const VarValue&) = default;
};

/// Slots of a registry materialized on demand inside one Space.
class Binding {
 public:
  Binding(const VariableRegistry& reg, fd::Space& space);

  fd::VarId get(std::size_t slot);
  fd::Space& space() noexcept { return *space_; }
  const VariableRegistry& registry() const noexcept { return *reg_; }
  /// Reads every slot in declaration order.
  std::vector<std::pair<std::string, VarValue>> snapshot();

 private:
  const VariableRegistry* reg_;
  fd::Space* space_;
  std::vector<std::optional<fd::VarId>> ids_;
};

VarValue read_value(const fd::Space& space, fd::VarId v);

}  // namespace ntcc::ccp
