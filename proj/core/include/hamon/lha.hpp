#pragma once

#include "hamon/constraint_text.hpp"
#include "hamon/polyhedron.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hamon {

struct Location {
  std::string id;
  Polyhedron flow;      // over the model space, read as derivatives
  Polyhedron invariant; // over the model space
  Polyhedron initial;   // empty set = not an initial location
  bool accepting = false;
};

struct Edge {
  std::string source;
  std::string target;
  Polyhedron guard;
  IntervalUpdate update;
  std::string label; // empty = internal; word-automaton edges carry "sample"
};

/// Linear hybrid automaton: locations with polyhedral flows, invariants and
/// initial constraints, plus guarded interval-updating edges.
class Lha {
public:
  Lha(VarSpacePtr space, std::vector<Location> locations, std::vector<Edge> edges);

  const VarSpacePtr& space() const { return space_; }
  const std::vector<Location>& locations() const { return locations_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<std::size_t> location_index(std::string_view id) const;
  std::size_t location_index_or_throw(std::string_view id) const;
  const Location& location(std::size_t i) const { return locations_.at(i); }

private:
  VarSpacePtr space_;
  std::vector<Location> locations_;
  std::vector<Edge> edges_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Conjunction of linear atoms over the model variables; atoms may be strict.
struct SafetyAtom {
  std::vector<Rational> coeffs;
  StrictRel rel{StrictRel::gt};
  Rational bound{0};
};

struct SafetySpec {
  std::vector<SafetyAtom> atoms;
};

enum class Severity { error, warning };

struct Diagnostic {
  Severity severity;
  std::string message;
};

/// Well-formedness report: dimension mismatches, dangling edges, empty
/// flows, initial sets escaping invariants, missing initial locations.
/// Empty list iff the model is clean of errors and warnings.
std::vector<Diagnostic> validate(const Lha& m);

bool has_errors(const std::vector<Diagnostic>& ds);

/// Synchronized product over shared variables (matched by name). Edges of
/// both components interleave freely; flows, invariants and initial sets of
/// a pair are the intersections of the embedded component sets. A pair is
/// accepting iff its first (designated) component is.
Lha product(const Lha& a, const Lha& b);

/// The safety-violation automaton: a copy of every location (non-initial,
/// accepting), copy-to-copy edges mirroring the originals, and one
/// violation edge per negated atom from each original location to its copy.
/// Strict negations are closed, which may add boundary-touching alarms.
Lha against_safety(const Lha& m, const SafetySpec& phi);

/// Closed polyhedral guard for the negation of one atom. An equality atom
/// negates to two half-spaces, hence the vector result.
std::vector<Polyhedron> negated_atom_guards(const SafetyAtom& atom, const VarSpacePtr& space);

} // namespace hamon
