#pragma once

#include "hamon/varspace.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hamon {

struct PolyhedronImpl;

/// Closed convex polyhedron over the rationals, in double description:
/// a minimal constraint system and a minimal generator system are both
/// computed eagerly at construction (Chernikova conversion), so values are
/// immutable and freely shareable across threads. All operations are exact.
class Polyhedron {
public:
  static Polyhedron universe(VarSpacePtr space);
  static Polyhedron empty_set(VarSpacePtr space);
  static Polyhedron from_constraints(VarSpacePtr space, const std::vector<LinearConstraint>& cs);
  static Polyhedron from_generators(VarSpacePtr space,
                                    const std::vector<std::vector<Rational>>& points,
                                    const std::vector<std::vector<Rational>>& rays,
                                    const std::vector<std::vector<Rational>>& lines = {});

  const VarSpacePtr& space() const;
  std::size_t dim() const;

  bool is_empty() const;
  bool is_universe() const;

  /// Minimal constraint system (empty list for the universe).
  std::vector<LinearConstraint> constraints() const;

  std::vector<std::vector<Rational>> points() const;
  std::vector<std::vector<Rational>> rays() const;
  std::vector<std::vector<Rational>> lines() const;

  bool contains(const std::vector<Rational>& point) const;

  /// Re-expresses the polyhedron over a superset space (matched by name);
  /// variables new to `bigger` are unconstrained.
  Polyhedron embedded(const VarSpacePtr& bigger) const;

  std::string str() const;

private:
  explicit Polyhedron(std::shared_ptr<const PolyhedronImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const PolyhedronImpl> impl_;

  friend Polyhedron intersect(const Polyhedron&, const Polyhedron&);
  friend Polyhedron time_elapse(const Polyhedron&, const Polyhedron&);
  friend Polyhedron time_elapse(const Polyhedron&, const Polyhedron&, const Rational&, std::size_t);
  friend Polyhedron eliminate(const Polyhedron&, const std::vector<std::size_t>&);
  friend Polyhedron unconstrain(const Polyhedron&, const std::vector<std::size_t>&);
  friend Polyhedron apply_update(const Polyhedron&, const IntervalUpdate&);
  friend bool includes(const Polyhedron&, const Polyhedron&);
  friend bool union_includes(std::span<const Polyhedron>, const Polyhedron&);
  friend std::optional<Polyhedron> merge_if_convex(const Polyhedron&, const Polyhedron&);
};

/// Set intersection. Dimension-checked.
Polyhedron intersect(const Polyhedron& p, const Polyhedron& q);

/// {v + s*f | v in p, f in flow, s >= 0}: p extended along the closed cone
/// generated by the flow polyhedron (which lives over the same space, read
/// as derivatives). Throws DomainError when flow is empty.
Polyhedron time_elapse(const Polyhedron& p, const Polyhedron& flow);

/// Bounded variant: s <= bound. `clock_var` must have derivative fixed to 1
/// in the flow, which lets the elapse stay polyhedral.
Polyhedron time_elapse(const Polyhedron& p, const Polyhedron& flow, const Rational& bound,
                       std::size_t clock_var);

/// Existential projection onto the remaining variables (smaller space).
Polyhedron eliminate(const Polyhedron& p, const std::vector<std::size_t>& vars);
Polyhedron eliminate(const Polyhedron& p, const std::vector<std::string>& vars);

/// Existential projection keeping the space: listed variables become free.
Polyhedron unconstrain(const Polyhedron& p, const std::vector<std::size_t>& vars);

/// Interval assignment x := [lo, hi] for each mapped variable.
Polyhedron apply_update(const Polyhedron& p, const IntervalUpdate& update);

/// q subseteq p, decided exactly.
bool includes(const Polyhedron& p, const Polyhedron& q);

bool equals(const Polyhedron& p, const Polyhedron& q);

/// Exact join detection: the convex hull H of p and q when H = p union q;
/// no result otherwise.
std::optional<Polyhedron> merge_if_convex(const Polyhedron& p, const Polyhedron& q);

/// p subseteq union(cover), decided exactly (set-difference emptiness via
/// Fourier-Motzkin with strict inequalities).
bool union_includes(std::span<const Polyhedron> cover, const Polyhedron& p);

/// Feasibility of a constraint system decided by Fourier-Motzkin alone,
/// independent of the double-description conversion path.
bool constraints_feasible(const VarSpacePtr& space, const std::vector<LinearConstraint>& cs);

} // namespace hamon
