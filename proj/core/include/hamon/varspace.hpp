#pragma once

#include "hamon/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hamon {

/// Ordered set of distinct variable names. The order is fixed for the
/// lifetime of any polyhedron referencing the space; coefficient vectors
/// are indexed by it.
class VarSpace {
public:
  explicit VarSpace(std::vector<std::string> names);

  static std::shared_ptr<const VarSpace> make(std::vector<std::string> names) {
    return std::make_shared<const VarSpace>(std::move(names));
  }

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> index(std::string_view n) const;
  std::size_t index_or_throw(std::string_view n) const;

  friend bool operator==(const VarSpace& a, const VarSpace& b) { return a.names_ == b.names_; }

private:
  std::vector<std::string> names_;
};

using VarSpacePtr = std::shared_ptr<const VarSpace>;

/// True when both handles denote the same ordered name list.
bool same_space(const VarSpacePtr& a, const VarSpacePtr& b);

enum class Rel { le, eq, ge };

std::string_view rel_text(Rel r);

/// coeffs . x  rel  bound, with non-strict relation (closed constraints only).
struct LinearConstraint {
  std::vector<Rational> coeffs;
  Rel rel{Rel::le};
  Rational bound{0};
};

LinearConstraint make_constraint(std::vector<Rational> coeffs, Rel rel, Rational bound);

struct Interval {
  Rational lo;
  Rational hi;
};

/// Partial map variable index -> closed rational interval; the polyhedral
/// update x := [lo, hi] of Def-style nondeterministic assignments.
class IntervalUpdate {
public:
  IntervalUpdate() = default;

  /// Throws DomainError if lo > hi.
  void set(std::size_t var, Interval iv);

  bool empty() const { return entries_.empty(); }
  const std::map<std::size_t, Interval>& entries() const { return entries_; }

  /// Same update expressed over another space, given old->new index map.
  IntervalUpdate remapped(const std::vector<std::size_t>& index_map) const;

private:
  std::map<std::size_t, Interval> entries_;
};

} // namespace hamon
