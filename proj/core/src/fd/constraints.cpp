#include "ntcc/fd/constraints.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ntcc/errors.hpp"

namespace ntcc::fd {

std::string_view to_string(Rel r) {
  switch (r) {
    case Rel::Eq: return "=";
    case Rel::Ne: return "!=";
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Gt: return ">";
    case Rel::Ge: return ">=";
  }
  return "?";
}

Rel negate(Rel r) {
  switch (r) {
    case Rel::Eq: return Rel::Ne;
    case Rel::Ne: return Rel::Eq;
    case Rel::Lt: return Rel::Ge;
    case Rel::Le: return Rel::Gt;
    case Rel::Gt: return Rel::Le;
    case Rel::Ge: return Rel::Lt;
  }
  return r;
}

Rel swap(Rel r) {
  switch (r) {
    case Rel::Lt: return Rel::Gt;
    case Rel::Le: return Rel::Ge;
    case Rel::Gt: return Rel::Lt;
    case Rel::Ge: return Rel::Le;
    default: return r;
  }
}

bool holds(std::int64_t lhs, Rel r, std::int64_t rhs) {
  switch (r) {
    case Rel::Eq: return lhs == rhs;
    case Rel::Ne: return lhs != rhs;
    case Rel::Lt: return lhs < rhs;
    case Rel::Le: return lhs <= rhs;
    case Rel::Gt: return lhs > rhs;
    case Rel::Ge: return lhs >= rhs;
  }
  return false;
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

// Merges repeated variables, drops zero coefficients and rewrites < and >
// into <= and >=.
void normalize(std::vector<Term>& terms, Rel& r, std::int64_t& c) {
  std::map<std::uint32_t, Term> merged;
  for (const Term& t : terms) {
    auto [it, fresh] = merged.try_emplace(t.var.index, t);
    if (!fresh) it->second.coeff += t.coeff;
  }
  terms.clear();
  for (auto& [idx, t] : merged) {
    if (t.coeff != 0) terms.push_back(t);
  }
  if (r == Rel::Lt) { r = Rel::Le; c -= 1; }
  if (r == Rel::Gt) { r = Rel::Ge; c += 1; }
}

struct Bounds {
  std::int64_t lo;
  std::int64_t hi;
};

Bounds term_bounds(const Space& h, const Term& t) {
  const auto& d = h.int_domain(t.var);
  const std::int64_t a = d.min() * static_cast<std::int64_t>(t.coeff);
  const std::int64_t b = d.max() * static_cast<std::int64_t>(t.coeff);
  return t.coeff > 0 ? Bounds{a, b} : Bounds{b, a};
}

Bounds sum_bounds(const Space& h, const std::vector<Term>& terms) {
  Bounds s{0, 0};
  for (const Term& t : terms) {
    auto b = term_bounds(h, t);
    s.lo += b.lo;
    s.hi += b.hi;
  }
  return s;
}

std::vector<VarId> vars_of(const std::vector<Term>& terms) {
  std::vector<VarId> out;
  out.reserve(terms.size());
  for (const Term& t : terms) out.push_back(t.var);
  return out;
}

std::string describe_terms(const std::vector<Term>& terms, Rel r, std::int64_t c) {
  std::ostringstream os;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " + ";
    os << terms[i].coeff << "*v" << terms[i].var.index;
  }
  if (terms.empty()) os << '0';
  os << ' ' << to_string(r) << ' ' << c;
  return os.str();
}

/// Bounds-consistent Σ a_i x_i (=, !=, <=, >=) c.
class Linear final : public Propagator {
 public:
  Linear(std::vector<Term> terms, Rel r, std::int64_t c) : terms_(std::move(terms)), rel_(r), c_(c) {}

  std::vector<VarId> subscriptions() const override { return vars_of(terms_); }
  std::unique_ptr<Propagator> copy() const override { return std::make_unique<Linear>(*this); }
  std::string_view kind() const override { return "linear"; }
  std::string describe() const override { return describe_terms(terms_, rel_, c_); }

  PropStatus propagate(Space& h) override {
    if (rel_ == Rel::Ne) return propagate_ne(h);
    for (;;) {
      const Bounds s = sum_bounds(h, terms_);
      bool changed = false;
      if (rel_ == Rel::Le || rel_ == Rel::Eq) {
        if (s.lo > c_) return PropStatus::Failed;
        for (const Term& t : terms_) {
          const std::int64_t bound = c_ - (s.lo - term_bounds(h, t).lo);
          const auto& d = h.int_domain(t.var);
          if (t.coeff > 0) {
            const std::int64_t hi = floor_div(bound, t.coeff);
            if (hi < d.max()) {
              if (!h.restrict_max(t.var, hi)) return PropStatus::Failed;
              changed = true;
            }
          } else {
            const std::int64_t lo = ceil_div(bound, t.coeff);
            if (lo > d.min()) {
              if (!h.restrict_min(t.var, lo)) return PropStatus::Failed;
              changed = true;
            }
          }
        }
      }
      if (!changed && (rel_ == Rel::Ge || rel_ == Rel::Eq)) {
        if (s.hi < c_) return PropStatus::Failed;
        for (const Term& t : terms_) {
          const std::int64_t bound = c_ - (s.hi - term_bounds(h, t).hi);
          const auto& d = h.int_domain(t.var);
          if (t.coeff > 0) {
            const std::int64_t lo = ceil_div(bound, t.coeff);
            if (lo > d.min()) {
              if (!h.restrict_min(t.var, lo)) return PropStatus::Failed;
              changed = true;
            }
          } else {
            const std::int64_t hi = floor_div(bound, t.coeff);
            if (hi < d.max()) {
              if (!h.restrict_max(t.var, hi)) return PropStatus::Failed;
              changed = true;
            }
          }
        }
      }
      if (!changed) break;
    }
    const Bounds s = sum_bounds(h, terms_);
    const bool entailed = (rel_ == Rel::Le && s.hi <= c_) || (rel_ == Rel::Ge && s.lo >= c_) ||
                          (rel_ == Rel::Eq && s.lo == c_ && s.hi == c_);
    return entailed ? PropStatus::Subsumed : PropStatus::Fix;
  }

 private:
  PropStatus propagate_ne(Space& h) {
    std::int64_t fixed = 0;
    const Term* open = nullptr;
    int n_open = 0;
    for (const Term& t : terms_) {
      const auto& d = h.int_domain(t.var);
      if (d.assigned()) {
        fixed += static_cast<std::int64_t>(t.coeff) * d.value();
      } else {
        open = &t;
        if (++n_open > 1) return PropStatus::Fix;
      }
    }
    if (n_open == 0) return fixed == c_ ? PropStatus::Failed : PropStatus::Subsumed;
    const std::int64_t rest = c_ - fixed;
    if (rest % open->coeff == 0 && !h.remove(open->var, rest / open->coeff)) return PropStatus::Failed;
    return PropStatus::Subsumed;
  }

  std::vector<Term> terms_;
  Rel rel_;
  std::int64_t c_;
};

void post_linear_normalized(Space& h, std::vector<Term> terms, Rel r, std::int64_t c);

class AlwaysFail final : public Propagator {
 public:
  std::vector<VarId> subscriptions() const override { return {}; }
  PropStatus propagate(Space&) override { return PropStatus::Failed; }
  std::unique_ptr<Propagator> copy() const override { return std::make_unique<AlwaysFail>(*this); }
  std::string_view kind() const override { return "false"; }
};

/// b ⇔ Σ a_i x_i r c, decided by bounds (and by domain membership for a
/// single variable).
class ReifLinear final : public Propagator {
 public:
  ReifLinear(std::vector<Term> terms, Rel r, std::int64_t c, VarId b)
      : terms_(std::move(terms)), rel_(r), c_(c), b_(b) {}

  std::vector<VarId> subscriptions() const override {
    auto v = vars_of(terms_);
    v.push_back(b_);
    return v;
  }
  std::unique_ptr<Propagator> copy() const override { return std::make_unique<ReifLinear>(*this); }
  std::string_view kind() const override { return "reified-linear"; }
  std::string describe() const override {
    return "v" + std::to_string(b_.index) + " <=> " + describe_terms(terms_, rel_, c_);
  }

  PropStatus propagate(Space& h) override {
    const auto& bd = h.int_domain(b_);
    if (bd.assigned()) {
      post_linear_normalized(h, terms_, bd.value() == 1 ? rel_ : negate(rel_), c_);
      return PropStatus::Subsumed;
    }
    const int decided = decide(h);
    if (decided < 0) return PropStatus::Fix;
    return h.assign(b_, decided) ? PropStatus::Subsumed : PropStatus::Failed;
  }

 private:
  // 1 entailed, 0 disentailed, -1 undecided.
  int decide(const Space& h) const {
    const Bounds s = sum_bounds(h, terms_);
    switch (rel_) {
      case Rel::Le:
        if (s.hi <= c_) return 1;
        if (s.lo > c_) return 0;
        return -1;
      case Rel::Ge:
        if (s.lo >= c_) return 1;
        if (s.hi < c_) return 0;
        return -1;
      case Rel::Eq:
      case Rel::Ne: {
        int eq = -1;
        if (s.lo == s.hi) eq = s.lo == c_ ? 1 : 0;
        else if (c_ < s.lo || c_ > s.hi) eq = 0;
        else if (terms_.size() == 1) {
          const Term& t = terms_[0];
          if (c_ % t.coeff != 0 || !h.int_domain(t.var).contains(c_ / t.coeff)) eq = 0;
        }
        if (eq < 0) return -1;
        return rel_ == Rel::Eq ? eq : 1 - eq;
      }
      default:
        return -1;
    }
  }

  std::vector<Term> terms_;
  Rel rel_;
  std::int64_t c_;
  VarId b_;
};

/// Value-based all-different.
class Distinct final : public Propagator {
 public:
  explicit Distinct(std::vector<VarId> xs) : xs_(std::move(xs)) {}

  std::vector<VarId> subscriptions() const override { return xs_; }
  std::unique_ptr<Propagator> copy() const override { return std::make_unique<Distinct>(*this); }
  std::string_view kind() const override { return "distinct"; }

  PropStatus propagate(Space& h) override {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < xs_.size(); ++i) {
        const auto& di = h.int_domain(xs_[i]);
        if (!di.assigned()) continue;
        const int v = di.value();
        for (std::size_t j = 0; j < xs_.size(); ++j) {
          if (j == i) continue;
          const auto& dj = h.int_domain(xs_[j]);
          if (!dj.contains(v)) continue;
          if (dj.assigned()) return PropStatus::Failed;
          if (!h.remove(xs_[j], v)) return PropStatus::Failed;
          changed = true;
        }
      }
    }
    const bool all = std::all_of(xs_.begin(), xs_.end(), [&](VarId x) { return h.assigned(x); });
    return all ? PropStatus::Subsumed : PropStatus::Fix;
  }

 private:
  std::vector<VarId> xs_;
};

/// b ⇔ ∧ xs (conjunction) or b ⇔ ∨ xs (disjunction) over booleans.
class BoolNary final : public Propagator {
 public:
  BoolNary(bool conj, std::vector<VarId> xs, VarId b) : conj_(conj), xs_(std::move(xs)), b_(b) {}

  std::vector<VarId> subscriptions() const override {
    auto v = xs_;
    v.push_back(b_);
    return v;
  }
  std::unique_ptr<Propagator> copy() const override { return std::make_unique<BoolNary>(*this); }
  std::string_view kind() const override { return conj_ ? "and" : "or"; }

  PropStatus propagate(Space& h) override {
    // For a conjunction the absorbing value is 0; for a disjunction it is 1.
    const int absorbing = conj_ ? 0 : 1;
    const int neutral = 1 - absorbing;
    std::size_t n_neutral = 0;
    const VarId* open = nullptr;
    std::size_t n_open = 0;
    for (const VarId& x : xs_) {
      const auto& d = h.int_domain(x);
      if (d.assigned()) {
        if (d.value() == absorbing) return h.assign(b_, absorbing) ? PropStatus::Subsumed : PropStatus::Failed;
        ++n_neutral;
      } else {
        open = &x;
        ++n_open;
      }
    }
    if (n_open == 0) return h.assign(b_, neutral) ? PropStatus::Subsumed : PropStatus::Failed;
    const auto& bd = h.int_domain(b_);
    if (!bd.assigned()) return PropStatus::Fix;
    if (bd.value() == neutral) {
      for (const VarId& x : xs_) {
        if (!h.assign(x, neutral)) return PropStatus::Failed;
      }
      return PropStatus::Subsumed;
    }
    if (n_open == 1) return h.assign(*open, absorbing) ? PropStatus::Subsumed : PropStatus::Failed;
    return PropStatus::Fix;
  }

 private:
  bool conj_;
  std::vector<VarId> xs_;
  VarId b_;
};

IntDomain domain_of_sorted(std::span<const int> values) {
  IntDomain out;
  if (values.empty()) return out;
  IntDomain acc(values.front(), values.back());
  // Punch holes between consecutive values.
  for (std::size_t i = 1; i < values.size(); ++i) {
    for (std::int64_t v = static_cast<std::int64_t>(values[i - 1]) + 1; v < values[i]; ++v) acc.remove(v);
  }
  return acc;
}

class Member final : public Propagator {
 public:
  Member(VarId x, VarId s) : x_(x), s_(s) {}
  std::vector<VarId> subscriptions() const override { return {x_, s_}; }
  std::unique_ptr<Propagator> copy() const override { return std::make_unique<Member>(*this); }
  std::string_view kind() const override { return "member"; }

  PropStatus propagate(Space& h) override {
    const auto& sd = h.set_domain(s_);
    const auto& xd = h.int_domain(x_);
    if (!xd.assigned()) {
      if (!h.intersect(x_, domain_of_sorted(sd.lub()))) return PropStatus::Failed;
    }
    if (h.int_domain(x_).assigned()) {
      return h.include(s_, h.int_domain(x_).value()) ? PropStatus::Subsumed : PropStatus::Failed;
    }
    return PropStatus::Fix;
  }

 private:
  VarId x_, s_;
};

class NotMember final : public Propagator {
 public:
  NotMember(VarId x, VarId s) : x_(x), s_(s) {}
  std::vector<VarId> subscriptions() const override { return {x_, s_}; }
  std::unique_ptr<Propagator> copy() const override { return std::make_unique<NotMember>(*this); }
  std::string_view kind() const override { return "not-member"; }

  PropStatus propagate(Space& h) override {
    if (h.int_domain(x_).assigned()) {
      return h.exclude(s_, h.int_domain(x_).value()) ? PropStatus::Subsumed : PropStatus::Failed;
    }
    const std::vector<int> glb(h.set_domain(s_).glb().begin(), h.set_domain(s_).glb().end());
    for (int v : glb) {
      if (!h.remove(x_, v)) return PropStatus::Failed;
    }
    if (h.int_domain(x_).assigned()) {
      return h.exclude(s_, h.int_domain(x_).value()) ? PropStatus::Subsumed : PropStatus::Failed;
    }
    return PropStatus::Fix;
  }

 private:
  VarId x_, s_;
};

class ReifMember final : public Propagator {
 public:
  ReifMember(VarId x, VarId s, VarId b) : x_(x), s_(s), b_(b) {}
  std::vector<VarId> subscriptions() const override { return {x_, s_, b_}; }
  std::unique_ptr<Propagator> copy() const override { return std::make_unique<ReifMember>(*this); }
  std::string_view kind() const override { return "reified-member"; }

  PropStatus propagate(Space& h) override {
    const auto& bd = h.int_domain(b_);
    if (bd.assigned()) {
      if (bd.value() == 1) h.post(std::make_unique<Member>(x_, s_));
      else h.post(std::make_unique<NotMember>(x_, s_));
      return PropStatus::Subsumed;
    }
    const auto& xd = h.int_domain(x_);
    const auto& sd = h.set_domain(s_);
    if (xd.subset_of_sorted(sd.glb())) return h.assign(b_, 1) ? PropStatus::Subsumed : PropStatus::Failed;
    if (xd.disjoint(domain_of_sorted(sd.lub()))) {
      return h.assign(b_, 0) ? PropStatus::Subsumed : PropStatus::Failed;
    }
    return PropStatus::Fix;
  }

 private:
  VarId x_, s_, b_;
};

class SetDomEq final : public Propagator {
 public:
  SetDomEq(VarId s, int lo, int hi) : s_(s), lo_(lo), hi_(hi) {}
  std::vector<VarId> subscriptions() const override { return {s_}; }
  std::unique_ptr<Propagator> copy() const override { return std::make_unique<SetDomEq>(*this); }
  std::string_view kind() const override { return "set-dom"; }

  PropStatus propagate(Space& h) override {
    const auto& d = h.set_domain(s_);
    const std::int64_t width = static_cast<std::int64_t>(hi_) - lo_ + 1;
    if (width > static_cast<std::int64_t>(d.lub().size())) return PropStatus::Failed;
    std::vector<int> range;
    range.reserve(static_cast<std::size_t>(std::max<std::int64_t>(width, 0)));
    for (std::int64_t v = lo_; v <= hi_; ++v) range.push_back(static_cast<int>(v));
    if (!h.restrict_lub(s_, range)) return PropStatus::Failed;
    if (!h.include_all(s_, range)) return PropStatus::Failed;
    return PropStatus::Subsumed;
  }

 private:
  VarId s_;
  int lo_, hi_;
};

class SetElement final : public Propagator {
 public:
  SetElement(VarId s, int v, bool include) : s_(s), v_(v), include_(include) {}
  std::vector<VarId> subscriptions() const override { return {s_}; }
  std::unique_ptr<Propagator> copy() const override { return std::make_unique<SetElement>(*this); }
  std::string_view kind() const override { return include_ ? "include" : "exclude"; }

  PropStatus propagate(Space& h) override {
    const bool ok = include_ ? h.include(s_, v_) : h.exclude(s_, v_);
    return ok ? PropStatus::Subsumed : PropStatus::Failed;
  }

 private:
  VarId s_;
  int v_;
  bool include_;
};

class SetMinus final : public Propagator {
 public:
  SetMinus(VarId a, VarId b, VarId c) : a_(a), b_(b), c_(c) {}
  std::vector<VarId> subscriptions() const override { return {a_, b_, c_}; }
  std::unique_ptr<Propagator> copy() const override { return std::make_unique<SetMinus>(*this); }
  std::string_view kind() const override { return "set-minus"; }

  PropStatus propagate(Space& h) override {
    bool changed = true;
    while (changed) {
      changed = false;
      auto vec = [&](std::span<const int> s) { return std::vector<int>(s.begin(), s.end()); };
      const auto ga = vec(h.set_domain(a_).glb()), la = vec(h.set_domain(a_).lub());
      const auto gb = vec(h.set_domain(b_).glb()), lb = vec(h.set_domain(b_).lub());
      const auto gc = vec(h.set_domain(c_).glb()), lc = vec(h.set_domain(c_).lub());
      std::vector<int> tmp;

      // glb(C) ⊇ glb(A) \ lub(B)
      std::set_difference(ga.begin(), ga.end(), lb.begin(), lb.end(), std::back_inserter(tmp));
      if (!apply(h, [&] { return h.include_all(c_, tmp); }, c_, changed)) return PropStatus::Failed;
      // lub(C) ⊆ lub(A) \ glb(B)
      tmp.clear();
      std::set_difference(la.begin(), la.end(), gb.begin(), gb.end(), std::back_inserter(tmp));
      if (!apply(h, [&] { return h.restrict_lub(c_, tmp); }, c_, changed)) return PropStatus::Failed;
      // glb(A) ⊇ glb(C); lub(B) ∩ glb(C) = ∅
      if (!apply(h, [&] { return h.include_all(a_, gc); }, a_, changed)) return PropStatus::Failed;
      if (!apply(h, [&] { return h.exclude_all(b_, gc); }, b_, changed)) return PropStatus::Failed;
      // x ∈ glb(A), x ∉ lub(C) ⇒ x ∈ B
      tmp.clear();
      std::set_difference(ga.begin(), ga.end(), lc.begin(), lc.end(), std::back_inserter(tmp));
      if (!apply(h, [&] { return h.include_all(b_, tmp); }, b_, changed)) return PropStatus::Failed;
      // lub(A) ⊆ lub(C) ∪ lub(B)
      tmp.clear();
      std::set_union(lc.begin(), lc.end(), lb.begin(), lb.end(), std::back_inserter(tmp));
      if (!apply(h, [&] { return h.restrict_lub(a_, tmp); }, a_, changed)) return PropStatus::Failed;
    }
    const bool done = h.assigned(a_) && h.assigned(b_) && h.assigned(c_);
    return done ? PropStatus::Subsumed : PropStatus::Fix;
  }

 private:
  template <class F>
  static bool apply(Space& h, F&& f, VarId s, bool& changed) {
    const SetDomain before = h.set_domain(s);
    if (!f()) return false;
    if (!(before == h.set_domain(s))) changed = true;
    return true;
  }

  VarId a_, b_, c_;
};

void post_linear_normalized(Space& h, std::vector<Term> terms, Rel r, std::int64_t c) {
  normalize(terms, r, c);
  if (terms.empty()) {
    if (!holds(0, r, c)) h.post(std::make_unique<AlwaysFail>());
    return;
  }
  h.post(std::make_unique<Linear>(std::move(terms), r, c));
}

void require_int(VarId v, const char* what) {
  if (v.is_set()) throw KindError(std::string(what) + ": expected an integer variable");
}

void require_set(VarId v, const char* what) {
  if (!v.is_set()) throw KindError(std::string(what) + ": expected a set variable");
}

}  // namespace

void rel(Space& home, VarId x, Rel r, int c) {
  require_int(x, "rel");
  post_linear_normalized(home, {{1, x}}, r, c);
}

void rel(Space& home, VarId x, Rel r, VarId y) {
  require_int(x, "rel");
  require_int(y, "rel");
  post_linear_normalized(home, {{1, x}, {-1, y}}, r, 0);
}

void linear(Space& home, std::vector<Term> terms, Rel r, std::int64_t c) {
  for (const Term& t : terms) require_int(t.var, "linear");
  post_linear_normalized(home, std::move(terms), r, c);
}

void linear(Space& home, std::span<const int> coeffs, std::span<const VarId> vars, Rel r, std::int64_t c) {
  if (vars.empty()) throw ArityError("linear: empty variable list");
  if (coeffs.size() != vars.size()) throw ArityError("linear: coefficient/variable count mismatch");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < vars.size(); ++i) terms.push_back({coeffs[i], vars[i]});
  linear(home, std::move(terms), r, c);
}

void distinct(Space& home, std::span<const VarId> vars) {
  if (vars.empty()) throw ArityError("distinct: empty variable list");
  for (VarId v : vars) require_int(v, "distinct");
  home.post(std::make_unique<Distinct>(std::vector<VarId>(vars.begin(), vars.end())));
}

void count(Space& home, std::span<const VarId> vars, Rel elem_rel, int value, Rel r, int c) {
  if (vars.empty()) throw ArityError("count: empty variable list");
  std::vector<Term> bs;
  bs.reserve(vars.size());
  for (VarId x : vars) bs.push_back({1, reify_rel(home, x, elem_rel, value)});
  post_linear_normalized(home, std::move(bs), r, c);
}

void set_dom_eq(Space& home, VarId s, int lo, int hi) {
  require_set(s, "set_dom_eq");
  if (lo > hi) {
    // S = ∅
    home.post(std::make_unique<SetDomEq>(s, 1, 0));
    const std::vector<int> lub(home.set_domain(s).lub().begin(), home.set_domain(s).lub().end());
    for (int v : lub) home.post(std::make_unique<SetElement>(s, v, false));
    return;
  }
  home.post(std::make_unique<SetDomEq>(s, lo, hi));
}

void include(Space& home, VarId s, int value) {
  require_set(s, "include");
  home.post(std::make_unique<SetElement>(s, value, true));
}

void exclude(Space& home, VarId s, int value) {
  require_set(s, "exclude");
  home.post(std::make_unique<SetElement>(s, value, false));
}

void member(Space& home, VarId x, VarId s) {
  require_int(x, "member");
  require_set(s, "member");
  home.post(std::make_unique<Member>(x, s));
}

void not_member(Space& home, VarId x, VarId s) {
  require_int(x, "not_member");
  require_set(s, "not_member");
  home.post(std::make_unique<NotMember>(x, s));
}

void set_minus(Space& home, VarId a, VarId b, VarId c) {
  require_set(a, "set_minus");
  require_set(b, "set_minus");
  require_set(c, "set_minus");
  home.post(std::make_unique<SetMinus>(a, b, c));
}

void reify_linear(Space& home, std::vector<Term> terms, Rel r, std::int64_t c, VarId b) {
  for (const Term& t : terms) require_int(t.var, "reify_linear");
  normalize(terms, r, c);
  home.post(std::make_unique<ReifLinear>(std::move(terms), r, c, b));
}

VarId reify_linear(Space& home, std::vector<Term> terms, Rel r, std::int64_t c) {
  VarId b = home.new_bool_var();
  reify_linear(home, std::move(terms), r, c, b);
  return b;
}

VarId reify_rel(Space& home, VarId x, Rel r, int c) { return reify_linear(home, {{1, x}}, r, c); }

VarId reify_rel(Space& home, VarId x, Rel r, VarId y) { return reify_linear(home, {{1, x}, {-1, y}}, r, 0); }

VarId reify_member(Space& home, VarId x, VarId s) {
  require_int(x, "reify_member");
  require_set(s, "reify_member");
  VarId b = home.new_bool_var();
  home.post(std::make_unique<ReifMember>(x, s, b));
  return b;
}

VarId reify_and(Space& home, std::span<const VarId> bs) {
  VarId b = home.new_bool_var();
  home.post(std::make_unique<BoolNary>(true, std::vector<VarId>(bs.begin(), bs.end()), b));
  return b;
}

VarId reify_or(Space& home, std::span<const VarId> bs) {
  VarId b = home.new_bool_var();
  home.post(std::make_unique<BoolNary>(false, std::vector<VarId>(bs.begin(), bs.end()), b));
  return b;
}

VarId reify_not(Space& home, VarId a) {
  VarId b = home.new_bool_var();
  post_linear_normalized(home, {{1, a}, {1, b}}, Rel::Eq, 1);
  return b;
}

BoolExpr BoolExpr::constant(bool v) {
  BoolExpr e;
  e.kind = Kind::Const;
  e.value = v;
  return e;
}

BoolExpr BoolExpr::linear(std::vector<Term> terms, Rel r, std::int64_t rhs) {
  BoolExpr e;
  e.kind = Kind::Linear;
  e.terms = std::move(terms);
  e.rel = r;
  e.rhs = rhs;
  return e;
}

BoolExpr BoolExpr::member(VarId elem, VarId set, bool negated) {
  BoolExpr e;
  e.kind = Kind::Member;
  e.elem = elem;
  e.set = set;
  e.negated = negated;
  return e;
}

BoolExpr BoolExpr::conj(std::vector<BoolExpr> kids) {
  BoolExpr e;
  e.kind = Kind::And;
  e.kids = std::move(kids);
  return e;
}

BoolExpr BoolExpr::disj(std::vector<BoolExpr> kids) {
  BoolExpr e;
  e.kind = Kind::Or;
  e.kids = std::move(kids);
  return e;
}

BoolExpr BoolExpr::negation(BoolExpr kid) {
  BoolExpr e;
  e.kind = Kind::Not;
  e.kids.push_back(std::move(kid));
  return e;
}

VarId reify(Space& home, const BoolExpr& e) {
  switch (e.kind) {
    case BoolExpr::Kind::Const: {
      VarId b = home.new_bool_var();
      home.assign(b, e.value ? 1 : 0);
      return b;
    }
    case BoolExpr::Kind::Linear:
      return reify_linear(home, e.terms, e.rel, e.rhs);
    case BoolExpr::Kind::Member: {
      VarId b = reify_member(home, e.elem, e.set);
      return e.negated ? reify_not(home, b) : b;
    }
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or: {
      std::vector<VarId> bs;
      bs.reserve(e.kids.size());
      for (const auto& k : e.kids) bs.push_back(reify(home, k));
      return e.kind == BoolExpr::Kind::And ? reify_and(home, bs) : reify_or(home, bs);
    }
    case BoolExpr::Kind::Not:
      return reify_not(home, reify(home, e.kids.at(0)));
  }
  return home.new_bool_var();
}

void post(Space& home, const BoolExpr& e) {
  switch (e.kind) {
    case BoolExpr::Kind::Const:
      if (!e.value) home.post(std::make_unique<AlwaysFail>());
      return;
    case BoolExpr::Kind::Linear:
      linear(home, e.terms, e.rel, e.rhs);
      return;
    case BoolExpr::Kind::Member:
      if (e.negated) not_member(home, e.elem, e.set);
      else member(home, e.elem, e.set);
      return;
    case BoolExpr::Kind::And:
      for (const auto& k : e.kids) post(home, k);
      return;
    default:
      rel(home, reify(home, e), Rel::Eq, 1);
      return;
  }
}

}  // namespace ntcc::fd
