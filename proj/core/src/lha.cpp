#include "hamon/lha.hpp"

#include "hamon/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace hamon {

Lha::Lha(VarSpacePtr space, std::vector<Location> locations, std::vector<Edge> edges)
    : space_(std::move(space)), locations_(std::move(locations)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < locations_.size(); ++i) {
    if (!index_.emplace(locations_[i].id, i).second)
      throw DomainError("duplicate location id: " + locations_[i].id);
  }
}

std::optional<std::size_t> Lha::location_index(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Lha::location_index_or_throw(std::string_view id) const {
  if (auto i = location_index(id)) return *i;
  throw DomainError("unknown location: " + std::string(id));
}

std::vector<Diagnostic> validate(const Lha& m) {
  std::vector<Diagnostic> out;
  auto err = [&](std::string msg) { out.push_back({Severity::error, std::move(msg)}); };
  auto warn = [&](std::string msg) { out.push_back({Severity::warning, std::move(msg)}); };

  bool any_initial = false;
  for (const auto& loc : m.locations()) {
    if (!same_space(loc.flow.space(), m.space()))
      err("location " + loc.id + ": flow over a different variable space");
    if (!same_space(loc.invariant.space(), m.space()))
      err("location " + loc.id + ": invariant over a different variable space");
    if (!same_space(loc.initial.space(), m.space()))
      err("location " + loc.id + ": initial set over a different variable space");
    if (same_space(loc.flow.space(), m.space()) && loc.flow.is_empty())
      warn("location " + loc.id + ": empty flow (unreachable unless never entered)");
    if (same_space(loc.initial.space(), m.space()) &&
        same_space(loc.invariant.space(), m.space()) && !loc.initial.is_empty()) {
      any_initial = true;
      if (!includes(loc.invariant, loc.initial))
        err("location " + loc.id + ": initial set not contained in invariant");
    }
  }
  for (std::size_t i = 0; i < m.edges().size(); ++i) {
    const auto& e = m.edges()[i];
    if (!m.location_index(e.source))
      err("edge " + std::to_string(i) + ": unknown source location " + e.source);
    if (!m.location_index(e.target))
      err("edge " + std::to_string(i) + ": unknown target location " + e.target);
    if (!same_space(e.guard.space(), m.space()))
      err("edge " + std::to_string(i) + ": guard over a different variable space");
    for (const auto& [var, iv] : e.update.entries()) {
      (void)iv;
      if (var >= m.space()->dim())
        err("edge " + std::to_string(i) + ": update variable out of range");
    }
  }
  if (!any_initial)
    warn("no location has a nonempty initial set; the monitored language is empty");
  return out;
}

bool has_errors(const std::vector<Diagnostic>& ds) {
  return std::any_of(ds.begin(), ds.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

Lha product(const Lha& a, const Lha& b) {
  std::vector<std::string> names = a.space()->names();
  for (const auto& n : b.space()->names())
    if (!a.space()->index(n)) names.push_back(n);
  auto space = VarSpace::make(std::move(names));

  std::vector<std::size_t> bmap(b.space()->dim());
  for (std::size_t i = 0; i < b.space()->dim(); ++i)
    bmap[i] = space->index_or_throw(b.space()->name(i));

  auto pair_id = [](const std::string& x, const std::string& y) {
    return "(" + x + "." + y + ")";
  };

  std::vector<Location> locs;
  locs.reserve(a.locations().size() * b.locations().size());
  for (const auto& la : a.locations()) {
    auto fa = la.flow.embedded(space);
    auto ia = la.invariant.embedded(space);
    auto na = la.initial.embedded(space);
    for (const auto& lb : b.locations()) {
      Location l{pair_id(la.id, lb.id),
                 intersect(fa, lb.flow.embedded(space)),
                 intersect(ia, lb.invariant.embedded(space)),
                 intersect(na, lb.initial.embedded(space)),
                 la.accepting};
      locs.push_back(std::move(l));
    }
  }

  std::vector<Edge> edges;
  for (const auto& e : a.edges()) {
    auto g = e.guard.embedded(space);
    for (const auto& lb : b.locations())
      edges.push_back(Edge{pair_id(e.source, lb.id), pair_id(e.target, lb.id), g,
                           e.update, e.label});
  }
  for (const auto& e : b.edges()) {
    auto g = e.guard.embedded(space);
    auto upd = e.update.remapped(bmap);
    for (const auto& la : a.locations())
      edges.push_back(Edge{pair_id(la.id, e.source), pair_id(la.id, e.target), g,
                           upd, e.label});
  }
  return Lha(space, std::move(locs), std::move(edges));
}

std::vector<Polyhedron> negated_atom_guards(const SafetyAtom& atom, const VarSpacePtr& space) {
  if (atom.coeffs.size() != space->dim())
    throw DimensionError("safety atom dimension does not match the model space");
  auto half = [&](Rel rel) {
    return Polyhedron::from_constraints(space, {make_constraint(atom.coeffs, rel, atom.bound)});
  };
  switch (atom.rel) {
    case StrictRel::lt:
    case StrictRel::le:
      return {half(Rel::ge)};
    case StrictRel::gt:
    case StrictRel::ge:
      return {half(Rel::le)};
    case StrictRel::eq:
      // not-equal closes to the whole space, as two half-spaces
      return {half(Rel::le), half(Rel::ge)};
  }
  return {};
}

Lha against_safety(const Lha& m, const SafetySpec& phi) {
  if (phi.atoms.empty()) throw DomainError("safety specification with no atoms");
  auto copy_id = [](const std::string& id) { return id + "_viol"; };

  std::vector<Location> locs;
  locs.reserve(m.locations().size() * 2);
  for (const auto& l : m.locations()) locs.push_back(Location{l.id, l.flow, l.invariant, l.initial, false});
  for (const auto& l : m.locations())
    locs.push_back(Location{copy_id(l.id), l.flow, l.invariant,
                            Polyhedron::empty_set(m.space()), true});

  std::vector<Edge> edges;
  for (const auto& e : m.edges()) edges.push_back(Edge{e.source, e.target, e.guard, e.update, e.label});
  for (const auto& e : m.edges())
    edges.push_back(Edge{copy_id(e.source), copy_id(e.target), e.guard, e.update, e.label});
  for (const auto& l : m.locations())
    for (const auto& atom : phi.atoms)
      for (const auto& g : negated_atom_guards(atom, m.space()))
        edges.push_back(Edge{l.id, copy_id(l.id), g, IntervalUpdate{}, ""});

  return Lha(m.space(), std::move(locs), std::move(edges));
}

} // namespace hamon
