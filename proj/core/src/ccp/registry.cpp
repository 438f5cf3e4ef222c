#include "ntcc/ccp/registry.hpp"

#include <algorithm>
#include <charconv>

#include "ntcc/errors.hpp"

namespace ntcc::ccp {

std::size_t VarDecl::cells() const {
  std::size_t n = 1;
  for (int d : dims) n *= static_cast<std::size_t>(d);
  return n;
}

void VariableRegistry::declare(VarDecl d) {
  if (by_name_.count(d.name)) throw ConfigError("variable '" + d.name + "' declared twice");
  if (d.kind == fd::VarKind::Bool) {
    d.lo = 0;
    d.hi = 1;
  }
  if (d.lo > d.hi && d.kind != fd::VarKind::Set) {
    throw BoundsError("variable '" + d.name + "': empty range [" + std::to_string(d.lo) + "," + std::to_string(d.hi) + "]");
  }
  if (d.lo < fd::kIntMin || d.hi > fd::kIntMax) throw BoundsError("variable '" + d.name + "': range exceeds limits");
  if (d.kind == fd::VarKind::Set && static_cast<std::int64_t>(d.hi) - d.lo > 1'000'000) {
    throw BoundsError("set variable '" + d.name + "': universe too large");
  }
  for (int dim : d.dims) {
    if (dim <= 0) throw DimensionError("variable '" + d.name + "': dimensions must be positive");
  }
  const std::size_t n = d.cells();
  if (n > 10'000'000) throw DimensionError("variable '" + d.name + "': array too large");
  by_name_.emplace(d.name, decls_.size());
  offsets_.push_back(kinds_.size());
  kinds_.insert(kinds_.end(), n, d.kind);
  decls_.push_back(std::move(d));
}

void VariableRegistry::declare_int(std::string name, int lo, int hi, std::vector<int> dims) {
  declare(VarDecl{std::move(name), fd::VarKind::Int, lo, hi, std::move(dims), {}});
}

void VariableRegistry::declare_bool(std::string name, std::vector<int> dims) {
  declare(VarDecl{std::move(name), fd::VarKind::Bool, 0, 1, std::move(dims), {}});
}

void VariableRegistry::declare_set(std::string name, int lo, int hi, std::vector<int> dims) {
  declare(VarDecl{std::move(name), fd::VarKind::Set, lo, hi, std::move(dims), {}});
}

const VarDecl* VariableRegistry::find(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : &decls_[it->second];
}

std::size_t VariableRegistry::slot(const std::string& name, std::span<const std::int64_t> indices) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw UndeclaredVariable("undeclared variable '" + name + "'");
  const VarDecl& d = decls_[it->second];
  if (indices.size() != d.dims.size()) {
    throw DimensionError("variable '" + name + "' has " + std::to_string(d.dims.size()) + " dimension(s), accessed with " +
                         std::to_string(indices.size()) + " index(es)");
  }
  std::size_t flat = 0;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] < 0 || indices[k] >= d.dims[k]) {
      throw RangeError("index " + std::to_string(indices[k]) + " out of range for '" + name + "' (dimension " +
                       std::to_string(d.dims[k]) + ")");
    }
    flat = flat * static_cast<std::size_t>(d.dims[k]) + static_cast<std::size_t>(indices[k]);
  }
  return offsets_[it->second] + flat;
}

std::size_t VariableRegistry::slot(const std::string& flat_name) const {
  const auto bracket = flat_name.find('[');
  const std::string base = flat_name.substr(0, bracket);
  std::vector<std::int64_t> idx;
  std::size_t pos = bracket;
  while (pos != std::string::npos && pos < flat_name.size()) {
    if (flat_name[pos] != '[') throw UndeclaredVariable("malformed variable reference '" + flat_name + "'");
    const auto close = flat_name.find(']', pos);
    if (close == std::string::npos) throw UndeclaredVariable("malformed variable reference '" + flat_name + "'");
    std::int64_t v = 0;
    const char* first = flat_name.data() + pos + 1;
    const char* last = flat_name.data() + close;
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last) throw UndeclaredVariable("malformed index in '" + flat_name + "'");
    idx.push_back(v);
    pos = close + 1;
  }
  return slot(base, idx);
}

const VarDecl& VariableRegistry::slot_decl(std::size_t s) const {
  if (s >= kinds_.size()) throw RangeError("slot out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), s);
  return decls_[static_cast<std::size_t>(it - offsets_.begin()) - 1];
}

std::string VariableRegistry::slot_name(std::size_t s) const {
  const VarDecl& d = slot_decl(s);
  const std::size_t di = static_cast<std::size_t>(&d - decls_.data());
  std::size_t flat = s - offsets_[di];
  std::vector<std::size_t> idx(d.dims.size());
  for (std::size_t k = d.dims.size(); k-- > 0;) {
    idx[k] = flat % static_cast<std::size_t>(d.dims[k]);
    flat /= static_cast<std::size_t>(d.dims[k]);
  }
  std::string out = d.name;
  for (auto i : idx) out += "[" + std::to_string(i) + "]";
  return out;
}

Binding::Binding(const VariableRegistry& reg, fd::Space& space)
    : reg_(&reg), space_(&space), ids_(reg.num_slots()) {}

fd::VarId Binding::get(std::size_t slot) {
  auto& id = ids_.at(slot);
  if (!id) {
    const VarDecl& d = reg_->slot_decl(slot);
    switch (d.kind) {
      case fd::VarKind::Int: id = space_->new_int_var(d.lo, d.hi); break;
      case fd::VarKind::Bool: id = space_->new_bool_var(); break;
      case fd::VarKind::Set: {
        std::vector<int> lub;
        for (std::int64_t v = d.lo; v <= d.hi; ++v) lub.push_back(static_cast<int>(v));
        id = space_->new_set_var({}, std::move(lub));
        break;
      }
    }
  }
  return *id;
}

VarValue read_value(const fd::Space& space, fd::VarId v) {
  const fd::VarView view = space.read(v);
  VarValue out;
  out.kind = view.kind;
  out.assigned = view.assigned;
  out.value = view.value;
  out.glb = view.glb;
  out.lub = view.lub;
  return out;
}

std::vector<std::pair<std::string, VarValue>> Binding::snapshot() {
  std::vector<std::pair<std::string, VarValue>> out;
  out.reserve(ids_.size());
  for (std::size_t s = 0; s < ids_.size(); ++s) {
    VarValue v;
    if (ids_[s]) {
      v = read_value(*space_, *ids_[s]);
    } else {
      // Never touched in this store: report the declared domain.
      const VarDecl& d = reg_->slot_decl(s);
      v.kind = d.kind;
      if (d.kind == fd::VarKind::Set) {
        for (std::int64_t x = d.lo; x <= d.hi; ++x) v.lub.push_back(static_cast<int>(x));
        v.assigned = v.lub.empty();
      } else if (d.lo == d.hi) {
        v.assigned = true;
        v.value = d.lo;
      }
    }
    out.emplace_back(reg_->slot_name(s), std::move(v));
  }
  return out;
}

}  // namespace ntcc::ccp
