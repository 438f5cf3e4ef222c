#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ntcc/fd/int_domain.hpp"
#include "ntcc/fd/set_domain.hpp"

namespace ntcc::fd {

enum class VarKind : std::uint8_t { Int, Bool, Set };

std::string_view to_string(VarKind kind);

/// Handle to a variable of one Space (or of its clones).
struct VarId {
  VarKind kind = VarKind::Int;
  std::uint32_t index = 0;

  bool is_set() const noexcept { return kind == VarKind::Set; }
  friend bool operator==(const VarId&, const VarId&) = default;
};

enum class PropStatus : std::uint8_t { Fix, NoFix, Subsumed, Failed };
enum class SpaceStatus : std::uint8_t { Fixpoint, Failed };

class Space;

/// A constraint agent. It runs when one of its subscribed variables changes
/// and narrows domains through the Space modification interface.
class Propagator {
 public:
  virtual ~Propagator() = default;

  /// Variables whose modifications wake this propagator.
  virtual std::vector<VarId> subscriptions() const = 0;
  virtual PropStatus propagate(Space& home) = 0;
  virtual std::unique_ptr<Propagator> copy() const = 0;
  virtual std::string_view kind() const = 0;
  virtual std::string describe() const { return std::string(kind()); }
};

enum class VarSelect : std::uint8_t { InOrder, SmallestDomain };
enum class ValSelect : std::uint8_t { Min, Max };

/// Branching strategy recorded on a space and consumed by the search engines.
struct Branching {
  std::vector<VarId> vars;
  VarSelect var_select = VarSelect::InOrder;
  ValSelect val_select = ValSelect::Min;
};

/// Read-only view of a variable's state.
struct VarView {
  VarKind kind = VarKind::Int;
  bool assigned = false;
  std::optional<int> value;
  std::vector<int> glb;
  std::vector<int> lub;
};

/// A constraint store: variables, propagators and a FIFO propagation queue.
///
/// Copying a Space produces an independent deep clone. Posting never fails
/// eagerly; contradictions surface from propagate(). A failed space stays
/// failed and ignores further posts.
class Space {
 public:
  Space() = default;
  Space(const Space& other);
  Space& operator=(const Space& other);
  Space(Space&&) noexcept = default;
  Space& operator=(Space&&) noexcept = default;
  ~Space() = default;

  Space clone() const { return *this; }

  VarId new_int_var(int lo, int hi);
  VarId new_bool_var();
  VarId new_set_var(std::vector<int> glb, std::vector<int> lub);
  /// Fresh variable fixed to v (used for constant operands).
  VarId constant(int v);

  std::size_t num_vars() const noexcept { return vars_.size(); }
  std::size_t num_propagators() const noexcept;
  bool failed() const noexcept { return failed_; }
  void fail() noexcept;

  /// Runs queued propagators until quiescence or failure.
  SpaceStatus propagate();

  // Reads. KindError on mismatched accessor.
  const IntDomain& int_domain(VarId v) const;
  const SetDomain& set_domain(VarId v) const;
  bool assigned(VarId v) const;
  int value(VarId v) const;
  VarView read(VarId v) const;

  // Modification interface for propagators. Each returns false iff the
  // modification wiped out the domain (the space is then failed).
  bool restrict_min(VarId v, std::int64_t lo);
  bool restrict_max(VarId v, std::int64_t hi);
  bool assign(VarId v, std::int64_t value);
  bool remove(VarId v, std::int64_t value);
  bool intersect(VarId v, const IntDomain& dom);
  bool include(VarId s, int value);
  bool exclude(VarId s, int value);
  bool include_all(VarId s, std::span<const int> values);
  bool restrict_lub(VarId s, std::span<const int> values);
  bool exclude_all(VarId s, std::span<const int> values);
  bool restrict_card(VarId s, std::uint32_t lo, std::uint32_t hi);

  /// Registers and schedules a propagator. No-op on a failed space.
  void post(std::unique_ptr<Propagator> p);

  void set_branching(Branching b) { branching_ = std::move(b); }
  const std::optional<Branching>& branching() const noexcept { return branching_; }

  /// Describes every live propagator whose kind() equals `kind`.
  std::vector<std::string> live(std::string_view kind) const;

  /// Domain equality over all variables (propagators are not compared).
  bool same_domains(const Space& other) const;

 private:
  using Domain = std::variant<IntDomain, SetDomain>;

  IntDomain& int_dom(VarId v);
  SetDomain& set_dom(VarId v);
  void check_var(VarId v) const;
  bool after_change(VarId v, bool changed, bool consistent);
  void schedule(std::uint32_t pid);

  static constexpr std::uint32_t kNone = UINT32_MAX;

  std::vector<Domain> vars_;
  std::vector<VarKind> kinds_;
  std::vector<std::vector<std::uint32_t>> subscribers_;
  std::vector<std::unique_ptr<Propagator>> props_;
  std::vector<bool> queued_;
  std::deque<std::uint32_t> queue_;
  std::uint32_t current_ = kNone;
  bool failed_ = false;
  std::optional<Branching> branching_;
};

}  // namespace ntcc::fd
