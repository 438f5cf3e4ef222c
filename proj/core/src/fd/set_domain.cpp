#include "ntcc/fd/set_domain.hpp"

#include <algorithm>
#include <sstream>

namespace ntcc::fd {

namespace {

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

SetDomain::SetDomain(std::vector<int> glb, std::vector<int> lub)
    : glb_(std::move(glb)), lub_(std::move(lub)) {
  sort_unique(glb_);
  sort_unique(lub_);
  consistent_ = std::includes(lub_.begin(), lub_.end(), glb_.begin(), glb_.end());
  normalize();
}

bool SetDomain::in_glb(int v) const noexcept { return std::binary_search(glb_.begin(), glb_.end(), v); }
bool SetDomain::in_lub(int v) const noexcept { return std::binary_search(lub_.begin(), lub_.end(), v); }

// Applies the cardinality window to the bounds. Returns true if the bounds changed.
bool SetDomain::normalize() {
  if (!consistent_) return false;
  card_min_ = std::max<std::uint32_t>(card_min_, static_cast<std::uint32_t>(glb_.size()));
  card_max_ = std::min<std::uint32_t>(card_max_, static_cast<std::uint32_t>(lub_.size()));
  if (card_min_ > card_max_) {
    consistent_ = false;
    return true;
  }
  if (glb_.size() == card_max_ && lub_.size() != glb_.size()) {
    lub_ = glb_;
    return true;
  }
  if (lub_.size() == card_min_ && lub_.size() != glb_.size()) {
    glb_ = lub_;
    return true;
  }
  return false;
}

bool SetDomain::include(int v) {
  if (!consistent_ || in_glb(v)) return false;
  if (!in_lub(v)) {
    consistent_ = false;
    return true;
  }
  glb_.insert(std::lower_bound(glb_.begin(), glb_.end(), v), v);
  normalize();
  return true;
}

bool SetDomain::exclude(int v) {
  if (!consistent_ || !in_lub(v)) return false;
  if (in_glb(v)) {
    consistent_ = false;
    return true;
  }
  lub_.erase(std::lower_bound(lub_.begin(), lub_.end(), v));
  normalize();
  return true;
}

bool SetDomain::include_all(std::span<const int> values) {
  bool changed = false;
  for (int v : values) changed |= include(v);
  return changed;
}

bool SetDomain::restrict_lub(std::span<const int> values) {
  if (!consistent_) return false;
  std::vector<int> out;
  std::set_intersection(lub_.begin(), lub_.end(), values.begin(), values.end(), std::back_inserter(out));
  if (out.size() == lub_.size()) return false;
  lub_ = std::move(out);
  if (!std::includes(lub_.begin(), lub_.end(), glb_.begin(), glb_.end())) consistent_ = false;
  normalize();
  return true;
}

bool SetDomain::exclude_all(std::span<const int> values) {
  bool changed = false;
  for (int v : values) changed |= exclude(v);
  return changed;
}

bool SetDomain::restrict_card(std::uint32_t lo, std::uint32_t hi) {
  if (!consistent_ || (lo <= card_min_ && hi >= card_max_)) return false;
  card_min_ = std::max(card_min_, lo);
  card_max_ = std::min(card_max_, hi);
  normalize();
  return true;
}

std::string SetDomain::to_string() const {
  std::ostringstream os;
  auto put = [&](const std::vector<int>& v) {
    os << '{';
    for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
    os << '}';
  };
  put(glb_);
  os << "..";
  put(lub_);
  return os.str();
}

}  // namespace ntcc::fd
