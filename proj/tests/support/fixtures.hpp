#pragma once

#include "hamon/builtin_models.hpp"
#include "hamon/word.hpp"

#include <random>
#include <tuple>

namespace hamon::fixtures {

inline Rational rat(const char* s) { return Rational::from_string(s); }

inline Polyhedron poly2(const VarSpacePtr& sp,
                        std::vector<std::tuple<long, long, Rel, const char*>> rows) {
  std::vector<LinearConstraint> cs;
  for (auto& [a1, a2, rel, b] : rows)
    cs.push_back(make_constraint({Rational(a1), Rational(a2)}, rel, rat(b)));
  return Polyhedron::from_constraints(sp, cs);
}

inline Polyhedron interval1(const VarSpacePtr& sp, const char* lo, const char* hi) {
  return Polyhedron::from_constraints(sp, {make_constraint({Rational(1)}, Rel::ge, rat(lo)),
                                           make_constraint({Rational(1)}, Rel::le, rat(hi))});
}

/// The three-sample platooning log (samples at 0, 10, 20).
inline TimedQuantitativeWord platooning_log() {
  auto sp = VarSpace::make({"x1", "x2"});
  std::vector<Sample> s{{{Rational(40), Rational(35)}, Rational(0)},
                        {{Rational(123), Rational(117)}, Rational(10)},
                        {{Rational(203), Rational(201)}, Rational(20)}};
  return TimedQuantitativeWord(sp, std::move(s));
}

/// Small random models for the oracle-soundness and property suites:
/// 1-2 variables, 2-3 locations, box flows and simple guards, all constants
/// on coarse grids so the trajectory oracle can work with its defaults.
inline Lha random_tiny_model(std::mt19937_64& rng) {
  auto rnd = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  std::size_t dim = static_cast<std::size_t>(rnd(1, 2));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dim; ++i) names.push_back("x" + std::to_string(i + 1));
  auto sp = VarSpace::make(names);

  auto unit = [&](std::size_t i) {
    std::vector<Rational> c(dim, Rational(0));
    c[i] = Rational(1);
    return c;
  };
  auto box_flow = [&] {
    std::vector<LinearConstraint> cs;
    for (std::size_t i = 0; i < dim; ++i) {
      Rational lo(rnd(-4, 4), 2);
      Rational width(rnd(0, 4), 2);
      cs.push_back(make_constraint(unit(i), Rel::ge, lo));
      cs.push_back(make_constraint(unit(i), Rel::le, lo + width));
    }
    return Polyhedron::from_constraints(sp, cs);
  };

  std::size_t nlocs = static_cast<std::size_t>(rnd(2, 3));
  std::vector<Location> locs;
  for (std::size_t l = 0; l < nlocs; ++l) {
    Polyhedron inv = Polyhedron::universe(sp);
    if (rnd(0, 2) == 0) {
      // one-sided bound on a random variable, wide enough to matter rarely
      std::size_t v = static_cast<std::size_t>(rnd(0, static_cast<long>(dim) - 1));
      inv = Polyhedron::from_constraints(
          sp, {make_constraint(unit(v), rnd(0, 1) ? Rel::le : Rel::ge, Rational(rnd(-20, 20)))});
    }
    Polyhedron init = Polyhedron::empty_set(sp);
    if (l == 0) {
      std::vector<LinearConstraint> cs;
      std::vector<Rational> vals;
      for (std::size_t i = 0; i < dim; ++i) vals.push_back(Rational(rnd(-2, 2)));
      for (std::size_t i = 0; i < dim; ++i) cs.push_back(make_constraint(unit(i), Rel::eq, vals[i]));
      init = Polyhedron::from_constraints(sp, cs);
      if (!includes(inv, init)) inv = Polyhedron::universe(sp);
    }
    locs.push_back(Location{"q" + std::to_string(l), box_flow(), std::move(inv), std::move(init),
                            rnd(0, 2) == 0});
  }
  if (std::none_of(locs.begin(), locs.end(), [](const Location& l) { return l.accepting; }))
    locs.back().accepting = true;

  std::vector<Edge> edges;
  std::size_t nedges = static_cast<std::size_t>(rnd(1, 4));
  for (std::size_t e = 0; e < nedges; ++e) {
    std::size_t src = static_cast<std::size_t>(rnd(0, static_cast<long>(nlocs) - 1));
    std::size_t tgt = static_cast<std::size_t>(rnd(0, static_cast<long>(nlocs) - 1));
    Polyhedron guard = Polyhedron::universe(sp);
    if (rnd(0, 1)) {
      std::size_t v = static_cast<std::size_t>(rnd(0, static_cast<long>(dim) - 1));
      guard = Polyhedron::from_constraints(
          sp, {make_constraint(unit(v), rnd(0, 1) ? Rel::le : Rel::ge, Rational(rnd(-6, 6)))});
    }
    IntervalUpdate upd;
    if (rnd(0, 2) == 0) {
      std::size_t v = static_cast<std::size_t>(rnd(0, static_cast<long>(dim) - 1));
      Rational lo(rnd(-2, 2));
      upd.set(v, Interval{lo, lo + Rational(rnd(0, 1))});
    }
    edges.push_back(Edge{"q" + std::to_string(src), "q" + std::to_string(tgt), std::move(guard),
                         std::move(upd), ""});
  }
  return Lha(sp, std::move(locs), std::move(edges));
}

/// Random short word over a tiny model: mostly trajectory-consistent
/// samples (simulated with grid-friendly rates), sometimes perturbed.
inline TimedQuantitativeWord random_tiny_word(const Lha& m, std::mt19937_64& rng,
                                              std::size_t max_len = 3) {
  auto rnd = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  std::size_t dim = m.space()->dim();
  std::vector<Sample> samples;

  // walk: start at an initial vertex, follow box-vertex rates
  std::vector<Rational> x;
  std::size_t loc = 0;
  for (std::size_t i = 0; i < m.locations().size(); ++i) {
    auto init = intersect(m.location(i).initial, m.location(i).invariant);
    if (!init.is_empty()) {
      x = init.points().front();
      loc = i;
      break;
    }
  }
  if (x.empty()) x.assign(dim, Rational(0));

  Rational t(0);
  std::size_t len = static_cast<std::size_t>(rnd(1, static_cast<long>(max_len)));
  for (std::size_t k = 0; k < len; ++k) {
    if (k > 0) {
      Rational d(rnd(1, 3));
      auto pts = m.location(loc).flow.points();
      if (!pts.empty()) {
        const auto& f = pts[static_cast<std::size_t>(rnd(0, static_cast<long>(pts.size()) - 1))];
        for (std::size_t i = 0; i < dim; ++i) x[i] += d * f[i];
      }
      t += d;
    }
    auto vals = x;
    if (rnd(0, 3) == 0) vals[static_cast<std::size_t>(rnd(0, static_cast<long>(dim) - 1))] +=
        Rational(rnd(-2, 2));
    samples.push_back(Sample{vals, t});
  }
  return TimedQuantitativeWord(m.space(), std::move(samples));
}

} // namespace hamon::fixtures
