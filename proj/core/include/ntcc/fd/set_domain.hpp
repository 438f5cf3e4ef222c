#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ntcc::fd {

/// Bounds representation of a finite-set variable: glb ⊆ S ⊆ lub.
///
/// Cardinality is tracked only as |glb| ≤ |S| ≤ |lub| plus optional explicit
/// bounds. The domain is inconsistent when glb ⊄ lub or the cardinality
/// window is empty.
class SetDomain {
 public:
  SetDomain() = default;
  SetDomain(std::vector<int> glb, std::vector<int> lub);

  std::span<const int> glb() const noexcept { return glb_; }
  std::span<const int> lub() const noexcept { return lub_; }
  std::uint32_t card_min() const noexcept { return card_min_; }
  std::uint32_t card_max() const noexcept { return card_max_; }

  bool assigned() const noexcept { return glb_.size() == lub_.size(); }
  bool consistent() const noexcept { return consistent_; }
  bool in_glb(int v) const noexcept;
  bool in_lub(int v) const noexcept;

  bool include(int v);
  bool exclude(int v);
  /// glb := glb ∪ values.
  bool include_all(std::span<const int> values);
  /// lub := lub ∩ values.
  bool restrict_lub(std::span<const int> values);
  /// lub := lub \ values.
  bool exclude_all(std::span<const int> values);
  bool restrict_card(std::uint32_t lo, std::uint32_t hi);

  std::string to_string() const;

  friend bool operator==(const SetDomain&, const SetDomain&) = default;

 private:
  bool normalize();

  std::vector<int> glb_;
  std::vector<int> lub_;
  std::uint32_t card_min_ = 0;
  std::uint32_t card_max_ = UINT32_MAX;
  bool consistent_ = true;
};

}  // namespace ntcc::fd
