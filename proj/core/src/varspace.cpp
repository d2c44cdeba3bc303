#include "hamon/varspace.hpp"

#include "hamon/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace hamon {

VarSpace::VarSpace(std::vector<std::string> names) : names_(std::move(names)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw DomainError("empty variable name");
    if (!seen.insert(n).second) throw DomainError("duplicate variable name: " + n);
  }
}

std::optional<std::size_t> VarSpace::index(std::string_view n) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == n) return i;
  return std::nullopt;
}

std::size_t VarSpace::index_or_throw(std::string_view n) const {
  if (auto i = index(n)) return *i;
  throw DomainError("unknown variable: " + std::string(n));
}

bool same_space(const VarSpacePtr& a, const VarSpacePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

std::string_view rel_text(Rel r) {
  switch (r) {
    case Rel::le: return "<=";
    case Rel::eq: return "=";
    case Rel::ge: return ">=";
  }
  return "?";
}

LinearConstraint make_constraint(std::vector<Rational> coeffs, Rel rel, Rational bound) {
  return LinearConstraint{std::move(coeffs), rel, std::move(bound)};
}

void IntervalUpdate::set(std::size_t var, Interval iv) {
  if (iv.lo > iv.hi) throw DomainError("invalid update interval: lo > hi");
  entries_[var] = std::move(iv);
}

IntervalUpdate IntervalUpdate::remapped(const std::vector<std::size_t>& index_map) const {
  IntervalUpdate out;
  for (const auto& [var, iv] : entries_) out.set(index_map.at(var), iv);
  return out;
}

} // namespace hamon
