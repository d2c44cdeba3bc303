#include "hamon/builtin_models.hpp"
#include "hamon/log_gen.hpp"
#include "hamon/model_json.hpp"
#include "hamon/monitor.hpp"
#include "hamon/translate.hpp"

#include <doctest.h>

#include "support/fixtures.hpp"

#include <random>
#include <set>

using namespace hamon;
using fixtures::poly2;
using fixtures::rat;

TEST_CASE("validate: clean platooning model, dangling edge, escaping init") {
  auto m = platooning_model();
  CHECK(validate(m).empty());

  auto sp = m.space();
  {
    std::vector<Edge> edges = m.edges();
    edges.push_back(Edge{"l0", "nowhere", Polyhedron::universe(sp), IntervalUpdate{}, ""});
    Lha bad(sp, m.locations(), edges);
    auto ds = validate(bad);
    CHECK(has_errors(ds));
  }
  {
    auto locs = m.locations();
    locs[0].invariant = poly2(sp, {{1, 0, Rel::le, "10"}}); // init x1 = 40 escapes
    Lha bad(sp, locs, m.edges());
    CHECK(has_errors(validate(bad)));
  }
  {
    auto locs = m.locations();
    for (auto& l : locs) l.initial = Polyhedron::empty_set(sp);
    Lha warned(sp, locs, m.edges());
    auto ds = validate(warned);
    CHECK_FALSE(ds.empty());
    CHECK_FALSE(has_errors(ds)); // only a warning
  }
}

TEST_CASE("against_safety builds the platooning violation automaton") {
  auto m = builtin_acci();
  REQUIRE(m.locations().size() == 4);
  // copies are accepting and non-initial; originals are neither
  std::size_t accepting = 0, initial = 0;
  for (const auto& l : m.locations()) {
    if (l.accepting) ++accepting;
    if (!l.initial.is_empty()) ++initial;
    if (l.accepting) CHECK(l.initial.is_empty());
  }
  CHECK(accepting == 2);
  CHECK(initial == 1);

  // violation edges guard x1 - x2 <= 0, one per original location
  auto viol_guard = poly2(m.space(), {{1, -1, Rel::le, "0"}});
  std::size_t viol_edges = 0;
  for (const auto& e : m.edges()) {
    bool to_copy = e.target.find("_viol") != std::string::npos;
    bool from_copy = e.source.find("_viol") != std::string::npos;
    CHECK_FALSE((from_copy && !to_copy)); // runs never leave the copies
    if (!from_copy && to_copy) {
      ++viol_edges;
      CHECK(equals(e.guard, viol_guard));
      CHECK(e.update.empty());
    }
  }
  CHECK(viol_edges == 2);

  // edge structure mirrored inside each copy
  CHECK(m.edges().size() == 2 + 2 + 2);
}

TEST_CASE("against_safety: two-atom specs fan out, equality atoms split") {
  auto base = platooning_model();
  SafetySpec two;
  two.atoms.push_back(SafetyAtom{{Rational(1), Rational(0)}, StrictRel::gt, Rational(0)});
  two.atoms.push_back(SafetyAtom{{Rational(0), Rational(1)}, StrictRel::lt, Rational(100)});
  auto armed = against_safety(base, two);
  std::size_t viol = 0;
  for (const auto& e : armed.edges())
    if (e.source.find("_viol") == std::string::npos && e.target.find("_viol") != std::string::npos)
      ++viol;
  CHECK(viol == 2 * 2); // two atoms per original location

  SafetySpec eq;
  eq.atoms.push_back(SafetyAtom{{Rational(1), Rational(-1)}, StrictRel::eq, Rational(3)});
  auto armed_eq = against_safety(base, eq);
  viol = 0;
  for (const auto& e : armed_eq.edges())
    if (e.source.find("_viol") == std::string::npos && e.target.find("_viol") != std::string::npos)
      ++viol;
  CHECK(viol == 2 * 2); // the negated equality closes to two half-spaces
}

TEST_CASE("product: unit automaton, location count, flow intersection") {
  auto m = builtin_acci();
  // single-location universe automaton over the same variables is a unit
  auto unit = Lha(m.space(),
                  {Location{"u", Polyhedron::universe(m.space()), Polyhedron::universe(m.space()),
                            Polyhedron::universe(m.space()), true}},
                  {});
  auto p = product(m, unit);
  REQUIRE(p.locations().size() == m.locations().size());
  for (std::size_t i = 0; i < p.locations().size(); ++i) {
    CHECK(equals(p.location(i).flow, m.location(i).flow));
    CHECK(equals(p.location(i).invariant, m.location(i).invariant));
    CHECK(equals(p.location(i).initial, m.location(i).initial));
    CHECK(p.location(i).accepting == m.location(i).accepting);
  }
  CHECK(p.edges().size() == m.edges().size());

  // 4 x 4 locations before pruning for the platooning fixture
  auto w = fixtures::platooning_log();
  auto word_auto = tqw2lha(w, m.space());
  auto full = product(m, word_auto);
  CHECK(full.locations().size() == 16);

  // flow of a pair is the intersection of the component flows
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    auto i = std::uniform_int_distribution<std::size_t>(0, m.locations().size() - 1)(rng);
    auto j = std::uniform_int_distribution<std::size_t>(0, word_auto.locations().size() - 1)(rng);
    const auto& pair = full.location(i * word_auto.locations().size() + j);
    auto expect = intersect(m.location(i).flow.embedded(full.space()),
                            word_auto.location(j).flow.embedded(full.space()));
    CHECK(equals(pair.flow, expect));
  }

  // the platooning pair (l0, wl1): interval rates plus both clocks at rate 1
  auto pl = full.location(full.location_index_or_throw("(l0.wl1)"));
  auto sp = full.space();
  auto mk = [&](const char* n, Rel r, const char* b) {
    std::vector<Rational> c(sp->dim(), Rational(0));
    c[sp->index_or_throw(n)] = Rational(1);
    return make_constraint(c, r, rat(b));
  };
  auto expect_flow = Polyhedron::from_constraints(
      sp, {mk("x1", Rel::ge, "7.5"), mk("x1", Rel::le, "8.5"), mk("x2", Rel::ge, "8"),
           mk("x2", Rel::le, "9"), mk("t_abs", Rel::eq, "1"), mk("t_rel", Rel::eq, "1")});
  CHECK(equals(pl.flow, expect_flow));
}

TEST_CASE("builtin ACCD(2, 9/10) matches the benchmark constants") {
  auto m = builtin_accd(2, Rational(9, 10));
  CHECK(m.locations().size() == 4); // 2^dim
  auto sp = m.space();
  std::size_t crs = m.location_index_or_throw("crs");
  CHECK(m.location(crs).initial.contains({Rational(3), Rational(0)}));
  CHECK(m.location(crs).initial.points().size() == 1);

  // cruise flow: x1' = 36, x2' >= 0, |x1' - x2'| <= 1
  auto expect_flow = poly2(sp, {{1, 0, Rel::eq, "36"},
                                {0, 1, Rel::ge, "0"},
                                {1, -1, Rel::le, "1"},
                                {1, -1, Rel::ge, "-1"}});
  CHECK(equals(m.location(crs).flow, expect_flow));

  // recovery flow carries the slow-down parameter
  std::size_t rcv = m.location_index_or_throw("rcv1");
  auto expect_rcv = poly2(sp, {{1, 0, Rel::eq, "36"},
                               {0, 1, Rel::ge, "0"},
                               {1, -1, Rel::le, "19/10"},
                               {1, -1, Rel::ge, "-1/10"}});
  CHECK(equals(m.location(rcv).flow, expect_rcv));

  // invariants from the figure: gap >= 1 cruising, gap <= 3 recovering
  CHECK(equals(m.location(crs).invariant, poly2(sp, {{1, -1, Rel::ge, "1"}})));
  CHECK(equals(m.location(rcv).invariant, poly2(sp, {{1, -1, Rel::le, "3"}})));

  // mode switches at gap 2, crash edges at gap <= 0
  bool has_close = false, has_far = false;
  std::size_t crash = 0;
  for (const auto& e : m.edges()) {
    if (e.source == "crs" && e.target == "rcv1" &&
        equals(e.guard, poly2(sp, {{1, -1, Rel::le, "2"}})))
      has_close = true;
    if (e.source == "rcv1" && e.target == "crs" &&
        equals(e.guard, poly2(sp, {{1, -1, Rel::ge, "2"}})))
      has_far = true;
    if (e.source.find("_viol") == std::string::npos &&
        e.target.find("_viol") != std::string::npos) {
      ++crash;
      CHECK(equals(e.guard, poly2(sp, {{1, -1, Rel::le, "0"}})));
    }
  }
  CHECK(has_close);
  CHECK(has_far);
  CHECK(crash == 2);

  CHECK_THROWS_AS(builtin_accd(1, Rational(1)), DomainError);
  CHECK_THROWS_AS(builtin_accd(8, Rational(1)), DomainError);
}

TEST_CASE("builtin ACCC(5) matches the benchmark constants") {
  auto m = builtin_accc(5);
  CHECK(m.locations().size() == 6); // dim + 1
  auto sp = m.space();
  std::size_t cruise = m.location_index_or_throw("cruise");
  CHECK(m.location(cruise).initial.contains(
      {Rational(40), Rational(35), Rational(30), Rational(25), Rational(20)}));

  auto rate_of = [&](std::size_t loc, std::size_t var) {
    // constant-rate flows: the single point generator carries the rates
    auto pts = m.location(loc).flow.points();
    REQUIRE(pts.size() == 1);
    return pts[0][var];
  };
  CHECK(rate_of(cruise, 0) == Rational(8));
  CHECK(rate_of(cruise, 1) == rat("8.5"));
  CHECK(rate_of(cruise, 4) == Rational(10));
  std::size_t rec1 = m.location_index_or_throw("rec1");
  CHECK(rate_of(rec1, 0) == Rational(12));
  CHECK(rate_of(rec1, 1) == Rational(10));
  CHECK(rate_of(rec1, 2) == Rational(8));
  CHECK(rate_of(rec1, 3) == Rational(9));
  CHECK(rate_of(rec1, 4) == Rational(10));
  std::size_t rec3 = m.location_index_or_throw("rec3");
  CHECK(rate_of(rec3, 3) == Rational(10));
  CHECK(rate_of(rec3, 4) == Rational(9));

  // the accepting location is unreachable: crash guards contradict the
  // recovery invariants, so no alert can ever fire
  std::size_t unsafe = m.location_index_or_throw("unsafe");
  CHECK(m.location(unsafe).accepting);
  for (const auto& e : m.edges()) {
    if (e.target != "unsafe") continue;
    auto src = m.location_index_or_throw(e.source);
    CHECK(intersect(e.guard, m.location(src).invariant).is_empty());
  }

  CHECK_THROWS_AS(builtin_accc(7), DomainError);
  CHECK(builtin_accc(10).locations().size() == 11);
  CHECK(builtin_accc(15).locations().size() == 16);
}

TEST_CASE("model JSON round-trip") {
  auto m = builtin_acci();
  auto text = model_to_json(m);
  auto back = model_from_json(text);
  REQUIRE(back.locations().size() == m.locations().size());
  for (std::size_t i = 0; i < m.locations().size(); ++i) {
    CHECK(back.location(i).id == m.location(i).id);
    CHECK(equals(back.location(i).flow, m.location(i).flow));
    CHECK(equals(back.location(i).invariant, m.location(i).invariant));
    CHECK(equals(back.location(i).initial, m.location(i).initial));
    CHECK(back.location(i).accepting == m.location(i).accepting);
  }
  REQUIRE(back.edges().size() == m.edges().size());
  for (std::size_t i = 0; i < m.edges().size(); ++i) {
    CHECK(back.edges()[i].source == m.edges()[i].source);
    CHECK(back.edges()[i].target == m.edges()[i].target);
    CHECK(equals(back.edges()[i].guard, m.edges()[i].guard));
  }
}

TEST_CASE("safety-violation scheme agrees with violation tracking on M itself") {
  // For every run of M reaching a phi-violating valuation, the same words
  // are accepted by the armed automaton: check verdict equivalence between
  // (a) the monitor on against_safety(M, phi) and (b) a fork-based checker
  // on plain M that tracks the violated flag through the public engine.
  auto base = platooning_model();
  auto phi = platooning_spec();
  auto armed = against_safety(base, phi);
  auto ext = extended_space(base.space());
  std::size_t clock = base.space()->dim();
  MonitorConfig cfg;

  auto viol_polys = negated_atom_guards(phi.atoms[0], base.space());
  std::vector<Polyhedron> viol_ext;
  for (const auto& g : viol_polys) viol_ext.push_back(g.embedded(ext));

  auto fork_checker = [&](const TimedQuantitativeWord& w) {
    std::vector<char> accepted(w.size(), 0);
    // clean[i]: states of M consistent with w[1..i] (no violation assumed);
    // for each interval and each reachable region, fork a violated branch
    // and push it through the remaining intervals.
    std::vector<SymbolicState> clean = initial_states(base);
    Rational prev(0);
    IntervalUpdate reset;
    reset.set(clock, Interval{Rational(0), Rational(0)});
    auto at = [&](const Rational& d) {
      std::vector<Rational> c(ext->dim(), Rational(0));
      c[clock] = Rational(1);
      return Polyhedron::from_constraints(ext, {make_constraint(c, Rel::eq, d)});
    };
    for (std::size_t k = 0; k < w.size(); ++k) {
      Rational d = w[k].timestamp - prev;
      auto graph = explore(base, clean, d, cfg);
      REQUIRE_FALSE(graph.saturated);
      // violated forks: continue from every mid-interval violating region
      std::vector<SymbolicState> flagged;
      for (const auto& node : graph.nodes)
        for (const auto& g : viol_ext) {
          auto r = intersect(node.region, g);
          if (!r.is_empty()) flagged.push_back(SymbolicState{node.location, std::move(r)});
        }
      // push flagged states to the end of interval k, then onward through
      // the remaining samples; acceptance at index j >= k if consistent
      std::vector<SymbolicState> cur = std::move(flagged);
      Rational t = prev;
      for (std::size_t j = k; j < w.size() && !cur.empty(); ++j) {
        Rational dj = w[j].timestamp - t;
        t = w[j].timestamp;
        std::vector<SymbolicState> sliced;
        if (j == k) {
          // already inside interval k: continue exploring within it
          auto g2 = explore(base, cur, d, cfg);
          REQUIRE_FALSE(g2.saturated);
          for (const auto& node : g2.nodes) {
            auto r = intersect(node.region, at(d));
            if (!r.is_empty()) sliced.push_back(SymbolicState{node.location, apply_update(r, reset)});
          }
        } else {
          auto br = bounded_reach(base, cur, dj, cfg);
          REQUIRE_FALSE(br.saturated);
          sliced = std::move(br.states);
        }
        cur = restrict_to_sample(sliced, w[j]);
        if (!cur.empty()) accepted[j] = 1;
      }
      // clean continuation for the next interval
      auto br = bounded_reach(base, clean, d, cfg);
      REQUIRE_FALSE(br.saturated);
      clean = restrict_to_sample(br.states, w[k]);
      prev = w[k].timestamp;
    }
    return accepted;
  };

  std::mt19937_64 rng(99);
  LogGenOptions opts;
  int checked = 0;
  for (std::uint64_t seed = 1; checked < 50; ++seed) {
    REQUIRE(seed < 200);
    TimedQuantitativeWord w = generate_log(base, seed, 5, Rational(1), Rational(4), opts);
    auto via_armed = run_monitor(armed, w, cfg);
    auto via_fork = fork_checker(w);
    REQUIRE(via_armed.indices.size() == w.size());
    bool all_match = true;
    for (std::size_t i = 0; i < w.size(); ++i) {
      bool a = via_armed.indices[i].verdict == IndexVerdict::accepted;
      if (a != static_cast<bool>(via_fork[i])) all_match = false;
    }
    CHECK(all_match);
    ++checked;
  }
  (void)rng;
}
