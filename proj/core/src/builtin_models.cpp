#include "hamon/builtin_models.hpp"

#include "hamon/errors.hpp"

#include <string>

namespace hamon {

namespace {

Rational half(long num) { return Rational(num, 2); }

std::vector<Rational> unit(std::size_t dim, std::size_t i, long v = 1) {
  std::vector<Rational> c(dim, Rational(0));
  c[i] = Rational(v);
  return c;
}

// coeffs for x_i - x_j
std::vector<Rational> diff(std::size_t dim, std::size_t i, std::size_t j) {
  std::vector<Rational> c(dim, Rational(0));
  c[i] = Rational(1);
  c[j] = Rational(-1);
  return c;
}

Polyhedron rate_box(const VarSpacePtr& sp, const std::vector<std::pair<Rational, Rational>>& ranges) {
  std::vector<LinearConstraint> cs;
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    if (ranges[i].first == ranges[i].second) {
      cs.push_back(make_constraint(unit(ranges.size(), i), Rel::eq, ranges[i].first));
    } else {
      cs.push_back(make_constraint(unit(ranges.size(), i), Rel::ge, ranges[i].first));
      cs.push_back(make_constraint(unit(ranges.size(), i), Rel::le, ranges[i].second));
    }
  }
  return Polyhedron::from_constraints(sp, cs);
}

Polyhedron point_init(const VarSpacePtr& sp, const std::vector<Rational>& vals) {
  std::vector<LinearConstraint> cs;
  for (std::size_t i = 0; i < vals.size(); ++i)
    cs.push_back(make_constraint(unit(vals.size(), i), Rel::eq, vals[i]));
  return Polyhedron::from_constraints(sp, cs);
}

} // namespace

Lha platooning_model() {
  auto sp = VarSpace::make({"x1", "x2"});
  auto top = Polyhedron::universe(sp);
  auto none = Polyhedron::empty_set(sp);

  Location l0{"l0", rate_box(sp, {{half(15), half(17)}, {Rational(8), Rational(9)}}), top,
              point_init(sp, {Rational(40), Rational(35)}), false};
  Location l1{"l1", rate_box(sp, {{Rational(11), Rational(13)}, {Rational(9), Rational(11)}}),
              top, none, false};

  auto close_guard = Polyhedron::from_constraints(
      sp, {make_constraint(diff(2, 0, 1), Rel::le, Rational(4))});
  auto far_guard = Polyhedron::from_constraints(
      sp, {make_constraint(diff(2, 0, 1), Rel::ge, Rational(4))});

  std::vector<Edge> edges{
      Edge{"l0", "l1", close_guard, IntervalUpdate{}, ""},
      Edge{"l1", "l0", far_guard, IntervalUpdate{}, ""},
  };
  return Lha(sp, {l0, l1}, std::move(edges));
}

SafetySpec platooning_spec() {
  SafetySpec phi;
  phi.atoms.push_back(SafetyAtom{{Rational(1), Rational(-1)}, StrictRel::gt, Rational(0)});
  return phi;
}

Lha builtin_acci() { return against_safety(platooning_model(), platooning_spec()); }

Lha builtin_accd(std::size_t dim, const Rational& epsilon) {
  if (dim < 2 || dim > 7) throw DomainError("ACCD dimension must be in [2,7]");
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= dim; ++i) names.push_back("x" + std::to_string(i));
  auto sp = VarSpace::make(names);
  std::size_t pairs = dim - 1;

  auto mode_id = [&](std::size_t mask) {
    if (mask == 0) return std::string("crs");
    std::string id = "rcv";
    for (std::size_t p = 0; p < pairs; ++p)
      if (mask & (std::size_t{1} << p)) id += std::to_string(p + 1);
    return id;
  };

  std::vector<Location> locs;
  for (std::size_t mask = 0; mask < (std::size_t{1} << pairs); ++mask) {
    std::vector<LinearConstraint> flow;
    flow.push_back(make_constraint(unit(dim, 0), Rel::eq, Rational(36)));
    for (std::size_t p = 0; p < pairs; ++p) {
      bool recovering = mask & (std::size_t{1} << p);
      flow.push_back(make_constraint(unit(dim, p + 1), Rel::ge, Rational(0)));
      // |x_p' - x_{p+1}' - eps| < 1, closed; eps = 0 while cruising
      Rational eps = recovering ? epsilon : Rational(0);
      flow.push_back(make_constraint(diff(dim, p, p + 1), Rel::le, eps + Rational(1)));
      flow.push_back(make_constraint(diff(dim, p, p + 1), Rel::ge, eps - Rational(1)));
    }
    std::vector<LinearConstraint> inv;
    for (std::size_t p = 0; p < pairs; ++p) {
      bool recovering = mask & (std::size_t{1} << p);
      if (recovering)
        inv.push_back(make_constraint(diff(dim, p, p + 1), Rel::le, Rational(3)));
      else
        inv.push_back(make_constraint(diff(dim, p, p + 1), Rel::ge, Rational(1)));
    }
    Polyhedron init = Polyhedron::empty_set(sp);
    if (mask == 0) {
      std::vector<Rational> vals;
      for (std::size_t i = 0; i < dim; ++i) vals.push_back(Rational(3 * (long)(dim - 1 - i)));
      init = point_init(sp, vals);
    }
    locs.push_back(Location{mode_id(mask), Polyhedron::from_constraints(sp, flow),
                            Polyhedron::from_constraints(sp, inv), init, false});
  }

  std::vector<Edge> edges;
  for (std::size_t mask = 0; mask < (std::size_t{1} << pairs); ++mask) {
    for (std::size_t p = 0; p < pairs; ++p) {
      bool recovering = mask & (std::size_t{1} << p);
      std::size_t other = mask ^ (std::size_t{1} << p);
      auto g = Polyhedron::from_constraints(
          sp, {make_constraint(diff(dim, p, p + 1), recovering ? Rel::ge : Rel::le, Rational(2))});
      edges.push_back(Edge{mode_id(mask), mode_id(other), g, IntervalUpdate{}, ""});
    }
  }
  Lha base(sp, std::move(locs), std::move(edges));

  SafetySpec phi;
  for (std::size_t p = 0; p < pairs; ++p)
    phi.atoms.push_back(SafetyAtom{diff(dim, p, p + 1), StrictRel::gt, Rational(0)});
  return against_safety(base, phi);
}

Lha builtin_accc(std::size_t dim) {
  if (dim != 5 && dim != 10 && dim != 15)
    throw DomainError("ACCC dimension must be one of 5, 10, 15");
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= dim; ++i) names.push_back("x" + std::to_string(i));
  auto sp = VarSpace::make(names);
  std::size_t pairs = dim - 1;

  auto gap_inv = [&](const Rational& lo) {
    std::vector<LinearConstraint> cs;
    for (std::size_t p = 0; p < pairs; ++p) {
      cs.push_back(make_constraint(diff(dim, p, p + 1), Rel::ge, lo));
      cs.push_back(make_constraint(diff(dim, p, p + 1), Rel::le, Rational(10)));
    }
    return Polyhedron::from_constraints(sp, cs);
  };

  std::vector<Location> locs;

  // cruise: x_i' = 8 + (i-1)/2, init x_i = 40 - 5(i-1)
  {
    std::vector<std::pair<Rational, Rational>> rates;
    std::vector<Rational> init_vals;
    for (std::size_t i = 0; i < dim; ++i) {
      Rational r = Rational(8) + Rational((long)i, 2);
      rates.emplace_back(r, r);
      init_vals.push_back(Rational(40 - 5 * (long)i));
    }
    locs.push_back(Location{"cruise", rate_box(sp, rates), gap_inv(Rational(2)),
                            point_init(sp, init_vals), false});
  }

  // rec_j: 12 up to car j, 10 for car j+1, then a unit-spaced tail from
  // 8 + (j-1)/2 (pattern of the dimension-5 instance)
  for (std::size_t j = 1; j <= pairs; ++j) {
    std::vector<std::pair<Rational, Rational>> rates;
    for (std::size_t i = 1; i <= dim; ++i) {
      Rational r;
      if (i <= j) r = Rational(12);
      else if (i == j + 1) r = Rational(10);
      else r = Rational(8) + Rational((long)(j - 1), 2) + Rational((long)(i - j - 2));
      rates.emplace_back(r, r);
    }
    locs.push_back(Location{"rec" + std::to_string(j), rate_box(sp, rates),
                            gap_inv(Rational(0)), Polyhedron::empty_set(sp), false});
  }

  locs.push_back(Location{"unsafe", Polyhedron::universe(sp), Polyhedron::universe(sp),
                          Polyhedron::empty_set(sp), true});

  std::vector<Edge> edges;
  for (std::size_t j = 1; j <= pairs; ++j) {
    auto close_g = Polyhedron::from_constraints(
        sp, {make_constraint(diff(dim, j - 1, j), Rel::le, Rational(4))});
    auto far_g = Polyhedron::from_constraints(
        sp, {make_constraint(diff(dim, j - 1, j), Rel::ge, Rational(4))});
    auto crash_g = Polyhedron::from_constraints(
        sp, {make_constraint(diff(dim, j - 1, j), Rel::le, Rational(-1))});
    std::string rec = "rec" + std::to_string(j);
    edges.push_back(Edge{"cruise", rec, close_g, IntervalUpdate{}, ""});
    edges.push_back(Edge{rec, "cruise", far_g, IntervalUpdate{}, ""});
    edges.push_back(Edge{rec, "unsafe", crash_g, IntervalUpdate{}, ""});
  }
  return Lha(sp, std::move(locs), std::move(edges));
}

Lha builtin_model(std::string_view selector) {
  if (selector == "ACCI") return builtin_acci();
  auto take = [&](std::string_view prefix) -> std::optional<std::string> {
    if (selector.substr(0, prefix.size()) != prefix) return std::nullopt;
    return std::string(selector.substr(prefix.size()));
  };
  if (auto rest = take("ACCD:")) {
    auto colon = rest->find(':');
    if (colon == std::string::npos)
      throw DomainError("ACCD selector needs dimension and epsilon: ACCD:<dim>:<eps>");
    std::size_t dim = std::stoul(rest->substr(0, colon));
    Rational eps = Rational::from_string(rest->substr(colon + 1));
    return builtin_accd(dim, eps);
  }
  if (auto rest = take("ACCC:")) return builtin_accc(std::stoul(*rest));
  throw DomainError("unknown builtin model: " + std::string(selector) +
                    " (expected ACCI, ACCD:<dim>:<eps> or ACCC:<dim>)");
}

bool is_builtin_selector(std::string_view selector) {
  return selector == "ACCI" || selector.substr(0, 5) == "ACCD:" ||
         selector.substr(0, 5) == "ACCC:";
}

} // namespace hamon
