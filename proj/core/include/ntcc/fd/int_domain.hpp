#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ntcc::fd {

/// Representable integer range for finite-domain variables.
inline constexpr int kIntMin = -2147483645;
inline constexpr int kIntMax = 2147483645;

struct Interval {
  int lo;
  int hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A finite set of integers stored as sorted, disjoint, non-adjacent intervals.
///
/// Narrowing operations return true when the domain changed. A domain may
/// become empty; the owning Space treats that as failure.
class IntDomain {
 public:
  IntDomain() = default;
  IntDomain(int lo, int hi);

  bool empty() const noexcept { return ivs_.empty(); }
  int min() const noexcept { return ivs_.front().lo; }
  int max() const noexcept { return ivs_.back().hi; }
  bool assigned() const noexcept { return ivs_.size() == 1 && ivs_[0].lo == ivs_[0].hi; }
  int value() const noexcept { return ivs_.front().lo; }
  std::uint64_t size() const noexcept;
  bool contains(std::int64_t v) const noexcept;
  std::span<const Interval> intervals() const noexcept { return ivs_; }

  bool restrict_min(std::int64_t lo);
  bool restrict_max(std::int64_t hi);
  bool assign(std::int64_t v);
  bool remove(std::int64_t v);
  bool intersect(const IntDomain& other);
  bool disjoint(const IntDomain& other) const noexcept;
  bool subset_of_sorted(std::span<const int> values) const noexcept;

  std::vector<int> values() const;
  std::string to_string() const;

  friend bool operator==(const IntDomain&, const IntDomain&) = default;

 private:
  std::vector<Interval> ivs_;
};

}  // namespace ntcc::fd
