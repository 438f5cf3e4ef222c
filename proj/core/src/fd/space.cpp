#include "ntcc/fd/space.hpp"

#include <algorithm>

#include "ntcc/errors.hpp"

namespace ntcc::fd {

std::string_view to_string(VarKind kind) {
  switch (kind) {
    case VarKind::Int: return "int";
    case VarKind::Bool: return "bool";
    case VarKind::Set: return "set";
  }
  return "?";
}

Space::Space(const Space& other)
    : vars_(other.vars_),
      kinds_(other.kinds_),
      subscribers_(other.subscribers_),
      queued_(other.queued_),
      queue_(other.queue_),
      failed_(other.failed_),
      branching_(other.branching_) {
  props_.reserve(other.props_.size());
  for (const auto& p : other.props_) props_.push_back(p ? p->copy() : nullptr);
}

Space& Space::operator=(const Space& other) {
  if (this != &other) {
    Space tmp(other);
    *this = std::move(tmp);
  }
  return *this;
}

VarId Space::new_int_var(int lo, int hi) {
  if (lo > hi) throw BoundsError("empty integer range [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
  if (lo < kIntMin || hi > kIntMax) {
    throw BoundsError("integer range [" + std::to_string(lo) + "," + std::to_string(hi) +
                      "] exceeds representable limits");
  }
  vars_.emplace_back(IntDomain(lo, hi));
  kinds_.push_back(VarKind::Int);
  subscribers_.emplace_back();
  return {VarKind::Int, static_cast<std::uint32_t>(vars_.size() - 1)};
}

VarId Space::new_bool_var() {
  VarId v = new_int_var(0, 1);
  kinds_.back() = VarKind::Bool;
  v.kind = VarKind::Bool;
  return v;
}

VarId Space::new_set_var(std::vector<int> glb, std::vector<int> lub) {
  for (int x : lub) {
    if (x < kIntMin || x > kIntMax) throw BoundsError("set element " + std::to_string(x) + " out of range");
  }
  SetDomain d(std::move(glb), std::move(lub));
  if (!d.consistent()) throw DomainError("set glb is not a subset of its lub");
  vars_.emplace_back(std::move(d));
  kinds_.push_back(VarKind::Set);
  subscribers_.emplace_back();
  return {VarKind::Set, static_cast<std::uint32_t>(vars_.size() - 1)};
}

VarId Space::constant(int v) { return new_int_var(v, v); }

std::size_t Space::num_propagators() const noexcept {
  return static_cast<std::size_t>(std::count_if(props_.begin(), props_.end(), [](const auto& p) { return p != nullptr; }));
}

void Space::fail() noexcept {
  failed_ = true;
  queue_.clear();
  std::fill(queued_.begin(), queued_.end(), false);
}

void Space::check_var(VarId v) const {
  if (v.index >= vars_.size()) throw KindError("variable index " + std::to_string(v.index) + " not in this space");
}

const IntDomain& Space::int_domain(VarId v) const {
  check_var(v);
  if (kinds_[v.index] == VarKind::Set) throw KindError("set variable read as integer");
  return std::get<IntDomain>(vars_[v.index]);
}

const SetDomain& Space::set_domain(VarId v) const {
  check_var(v);
  if (kinds_[v.index] != VarKind::Set) throw KindError("integer variable read as set");
  return std::get<SetDomain>(vars_[v.index]);
}

IntDomain& Space::int_dom(VarId v) { return const_cast<IntDomain&>(int_domain(v)); }
SetDomain& Space::set_dom(VarId v) { return const_cast<SetDomain&>(set_domain(v)); }

bool Space::assigned(VarId v) const {
  check_var(v);
  if (kinds_[v.index] == VarKind::Set) return std::get<SetDomain>(vars_[v.index]).assigned();
  return std::get<IntDomain>(vars_[v.index]).assigned();
}

int Space::value(VarId v) const {
  const auto& d = int_domain(v);
  if (!d.assigned()) throw KindError("variable is not assigned");
  return d.value();
}

VarView Space::read(VarId v) const {
  check_var(v);
  VarView out;
  out.kind = kinds_[v.index];
  if (out.kind == VarKind::Set) {
    const auto& d = std::get<SetDomain>(vars_[v.index]);
    out.assigned = d.assigned();
    out.glb.assign(d.glb().begin(), d.glb().end());
    out.lub.assign(d.lub().begin(), d.lub().end());
  } else {
    const auto& d = std::get<IntDomain>(vars_[v.index]);
    out.assigned = d.assigned();
    if (out.assigned) out.value = d.value();
  }
  return out;
}

void Space::schedule(std::uint32_t pid) {
  if (pid >= props_.size() || !props_[pid] || queued_[pid]) return;
  queued_[pid] = true;
  queue_.push_back(pid);
}

bool Space::after_change(VarId v, bool changed, bool consistent) {
  if (!consistent) {
    fail();
    return false;
  }
  if (changed) {
    for (std::uint32_t pid : subscribers_[v.index]) {
      if (pid != current_) schedule(pid);
    }
  }
  return true;
}

bool Space::restrict_min(VarId v, std::int64_t lo) {
  if (failed_) return false;
  auto& d = int_dom(v);
  const bool ch = d.restrict_min(lo);
  return after_change(v, ch, !d.empty());
}

bool Space::restrict_max(VarId v, std::int64_t hi) {
  if (failed_) return false;
  auto& d = int_dom(v);
  const bool ch = d.restrict_max(hi);
  return after_change(v, ch, !d.empty());
}

bool Space::assign(VarId v, std::int64_t value) {
  if (failed_) return false;
  auto& d = int_dom(v);
  const bool ch = d.assign(value);
  return after_change(v, ch, !d.empty());
}

bool Space::remove(VarId v, std::int64_t value) {
  if (failed_) return false;
  auto& d = int_dom(v);
  const bool ch = d.remove(value);
  return after_change(v, ch, !d.empty());
}

bool Space::intersect(VarId v, const IntDomain& dom) {
  if (failed_) return false;
  auto& d = int_dom(v);
  const bool ch = d.intersect(dom);
  return after_change(v, ch, !d.empty());
}

bool Space::include(VarId s, int value) {
  if (failed_) return false;
  auto& d = set_dom(s);
  const bool ch = d.include(value);
  return after_change(s, ch, d.consistent());
}

bool Space::exclude(VarId s, int value) {
  if (failed_) return false;
  auto& d = set_dom(s);
  const bool ch = d.exclude(value);
  return after_change(s, ch, d.consistent());
}

bool Space::include_all(VarId s, std::span<const int> values) {
  if (failed_) return false;
  auto& d = set_dom(s);
  const bool ch = d.include_all(values);
  return after_change(s, ch, d.consistent());
}

bool Space::restrict_lub(VarId s, std::span<const int> values) {
  if (failed_) return false;
  auto& d = set_dom(s);
  const bool ch = d.restrict_lub(values);
  return after_change(s, ch, d.consistent());
}

bool Space::exclude_all(VarId s, std::span<const int> values) {
  if (failed_) return false;
  auto& d = set_dom(s);
  const bool ch = d.exclude_all(values);
  return after_change(s, ch, d.consistent());
}

bool Space::restrict_card(VarId s, std::uint32_t lo, std::uint32_t hi) {
  if (failed_) return false;
  auto& d = set_dom(s);
  const bool ch = d.restrict_card(lo, hi);
  return after_change(s, ch, d.consistent());
}

void Space::post(std::unique_ptr<Propagator> p) {
  if (failed_ || !p) return;
  const auto pid = static_cast<std::uint32_t>(props_.size());
  for (VarId v : p->subscriptions()) {
    check_var(v);
    auto& subs = subscribers_[v.index];
    if (subs.empty() || subs.back() != pid) subs.push_back(pid);
  }
  props_.push_back(std::move(p));
  queued_.push_back(false);
  schedule(pid);
}

SpaceStatus Space::propagate() {
  if (failed_) return SpaceStatus::Failed;
  while (!queue_.empty()) {
    const std::uint32_t pid = queue_.front();
    queue_.pop_front();
    queued_[pid] = false;
    Propagator* p = props_[pid].get();
    if (!p) continue;
    current_ = pid;
    PropStatus st;
    try {
      st = p->propagate(*this);
    } catch (...) {
      current_ = kNone;
      throw;
    }
    current_ = kNone;
    if (failed_ || st == PropStatus::Failed) {
      fail();
      return SpaceStatus::Failed;
    }
    if (st == PropStatus::Subsumed) {
      props_[pid].reset();
    } else if (st == PropStatus::NoFix) {
      schedule(pid);
    }
  }
  return SpaceStatus::Fixpoint;
}

std::vector<std::string> Space::live(std::string_view kind) const {
  std::vector<std::string> out;
  for (const auto& p : props_) {
    if (p && p->kind() == kind) out.push_back(p->describe());
  }
  return out;
}

bool Space::same_domains(const Space& other) const {
  return failed_ == other.failed_ && vars_ == other.vars_;
}

}  // namespace ntcc::fd
