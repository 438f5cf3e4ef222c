#include "ntcc/fd/int_domain.hpp"

#include <algorithm>
#include <sstream>

namespace ntcc::fd {

IntDomain::IntDomain(int lo, int hi) {
  if (lo <= hi) ivs_.push_back({lo, hi});
}

std::uint64_t IntDomain::size() const noexcept {
  std::uint64_t n = 0;
  for (const auto& iv : ivs_) n += static_cast<std::uint64_t>(static_cast<std::int64_t>(iv.hi) - iv.lo + 1);
  return n;
}

bool IntDomain::contains(std::int64_t v) const noexcept {
  auto it = std::lower_bound(ivs_.begin(), ivs_.end(), v,
                             [](const Interval& iv, std::int64_t x) { return iv.hi < x; });
  return it != ivs_.end() && it->lo <= v;
}

bool IntDomain::restrict_min(std::int64_t lo) {
  if (ivs_.empty() || lo <= ivs_.front().lo) return false;
  auto it = std::lower_bound(ivs_.begin(), ivs_.end(), lo,
                             [](const Interval& iv, std::int64_t x) { return iv.hi < x; });
  ivs_.erase(ivs_.begin(), it);
  if (!ivs_.empty() && ivs_.front().lo < lo) ivs_.front().lo = static_cast<int>(lo);
  return true;
}

bool IntDomain::restrict_max(std::int64_t hi) {
  if (ivs_.empty() || hi >= ivs_.back().hi) return false;
  auto it = std::upper_bound(ivs_.begin(), ivs_.end(), hi,
                             [](std::int64_t x, const Interval& iv) { return x < iv.lo; });
  ivs_.erase(it, ivs_.end());
  if (!ivs_.empty() && ivs_.back().hi > hi) ivs_.back().hi = static_cast<int>(hi);
  return true;
}

bool IntDomain::assign(std::int64_t v) {
  if (assigned() && value() == v) return false;
  if (!contains(v)) {
    ivs_.clear();
    return true;
  }
  ivs_.assign(1, {static_cast<int>(v), static_cast<int>(v)});
  return true;
}

bool IntDomain::remove(std::int64_t v) {
  auto it = std::lower_bound(ivs_.begin(), ivs_.end(), v,
                             [](const Interval& iv, std::int64_t x) { return iv.hi < x; });
  if (it == ivs_.end() || it->lo > v) return false;
  const int x = static_cast<int>(v);
  if (it->lo == x && it->hi == x) {
    ivs_.erase(it);
  } else if (it->lo == x) {
    ++it->lo;
  } else if (it->hi == x) {
    --it->hi;
  } else {
    Interval upper{x + 1, it->hi};
    it->hi = x - 1;
    ivs_.insert(it + 1, upper);
  }
  return true;
}

bool IntDomain::intersect(const IntDomain& other) {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < ivs_.size() && j < other.ivs_.size()) {
    const int lo = std::max(ivs_[i].lo, other.ivs_[j].lo);
    const int hi = std::min(ivs_[i].hi, other.ivs_[j].hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (ivs_[i].hi < other.ivs_[j].hi) ++i; else ++j;
  }
  if (out == ivs_) return false;
  ivs_ = std::move(out);
  return true;
}

bool IntDomain::disjoint(const IntDomain& other) const noexcept {
  std::size_t i = 0, j = 0;
  while (i < ivs_.size() && j < other.ivs_.size()) {
    if (std::max(ivs_[i].lo, other.ivs_[j].lo) <= std::min(ivs_[i].hi, other.ivs_[j].hi)) return false;
    if (ivs_[i].hi < other.ivs_[j].hi) ++i; else ++j;
  }
  return true;
}

bool IntDomain::subset_of_sorted(std::span<const int> values) const noexcept {
  if (size() > values.size()) return false;
  for (const auto& iv : ivs_) {
    auto it = std::lower_bound(values.begin(), values.end(), iv.lo);
    for (std::int64_t v = iv.lo; v <= iv.hi; ++v, ++it) {
      if (it == values.end() || *it != v) return false;
    }
  }
  return true;
}

std::vector<int> IntDomain::values() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (const auto& iv : ivs_) {
    for (std::int64_t v = iv.lo; v <= iv.hi; ++v) out.push_back(static_cast<int>(v));
  }
  return out;
}

std::string IntDomain::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < ivs_.size(); ++k) {
    if (k) os << ',';
    if (ivs_[k].lo == ivs_[k].hi) os << ivs_[k].lo;
    else os << ivs_[k].lo << ".." << ivs_[k].hi;
  }
  os << '}';
  return os.str();
}

}  // namespace ntcc::fd
