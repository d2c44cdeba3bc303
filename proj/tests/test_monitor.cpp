#include "hamon/builtin_models.hpp"
#include "hamon/log_gen.hpp"
#include "hamon/monitor.hpp"
#include "hamon/oracle.hpp"

#include <doctest.h>

#include "support/fixtures.hpp"

#include <random>

using namespace hamon;
using fixtures::poly2;
using fixtures::rat;

namespace {

std::vector<std::vector<Polyhedron>> group_by_location(const Lha& m,
                                                       const std::vector<SymbolicState>& states) {
  std::vector<std::vector<Polyhedron>> by_loc(m.locations().size());
  for (const auto& st : states) by_loc[st.location].push_back(model_region(st, m.space()));
  return by_loc;
}

bool union_equal(const std::vector<Polyhedron>& got, const std::vector<Polyhedron>& expect) {
  for (const auto& p : got)
    if (!union_includes(expect, p)) return false;
  for (const auto& q : expect)
    if (!union_includes(got, q)) return false;
  return true;
}

} // namespace

TEST_CASE("initial states") {
  auto m = builtin_acci();
  auto init = initial_states(m);
  REQUIRE(init.size() == 1);
  CHECK(m.location(init[0].location).id == "l0");
  auto region = model_region(init[0], m.space());
  CHECK(equals(region, poly2(m.space(), {{1, 0, Rel::eq, "40"}, {0, 1, Rel::eq, "35"}})));

  auto d2 = builtin_accd(2, Rational(9, 10));
  auto init2 = initial_states(d2);
  REQUIRE(init2.size() == 1);
  CHECK(d2.location(init2[0].location).id == "crs");
  CHECK(model_region(init2[0], d2.space())
            .contains({Rational(3), Rational(0)}));

  // all-bottom model has no initial states
  auto sp = m.space();
  Lha empty_init(sp,
                 {Location{"q", Polyhedron::universe(sp), Polyhedron::universe(sp),
                           Polyhedron::empty_set(sp), false}},
                 {});
  CHECK(initial_states(empty_init).empty());
}

TEST_CASE("bounded_reach with zero duration keeps points and zero-time successors") {
  auto m = builtin_acci();
  MonitorConfig cfg;
  auto r = bounded_reach(m, initial_states(m), Rational(0), cfg);
  REQUIRE_FALSE(r.saturated);
  // at (40,35) no guard is enabled (gap 5 > 4 and > 0), so just the point
  REQUIRE(r.states.size() == 1);
  CHECK(equals(model_region(r.states[0], m.space()),
               poly2(m.space(), {{1, 0, Rel::eq, "40"}, {0, 1, Rel::eq, "35"}})));
}

TEST_CASE("appendix reachable-set fixture") {
  auto m = builtin_acci();
  auto sp = m.space();
  MonitorConfig cfg;
  auto reach1 = bounded_reach(m, initial_states(m), Rational(10), cfg);
  REQUIRE_FALSE(reach1.saturated);
  auto by_loc = group_by_location(m, reach1.states);

  auto box = poly2(sp, {{1, 0, Rel::ge, "115"}, {1, 0, Rel::le, "125"},
                        {0, 1, Rel::ge, "115"}, {0, 1, Rel::le, "125"}});
  auto l0_second = poly2(sp, {{-3, 11, Rel::ge, "876"}, {-2, 9, Rel::ge, "789"},
                              {0, 1, Rel::le, "431/3"}, {1, 0, Rel::le, "499/3"},
                              {0, 1, Rel::ge, "115"}, {1, 0, Rel::ge, "115"},
                              {4, -7, Rel::ge, "-415"}});
  CHECK(union_equal(by_loc[m.location_index_or_throw("l0")], {box, l0_second}));

  auto l1_sys = poly2(sp, {{-3, 11, Rel::ge, "876"}, {-1, 5, Rel::ge, "456"},
                           {0, -3, Rel::ge, "-431"}, {-3, 0, Rel::ge, "-499"},
                           {0, 1, Rel::ge, "115"}, {1, 0, Rel::ge, "115"},
                           {4, -7, Rel::ge, "-415"}});
  CHECK(union_equal(by_loc[m.location_index_or_throw("l1")], {l1_sys}));

  auto l3_sys = poly2(sp, {{1, 0, Rel::ge, "115"}, {1, 0, Rel::le, "455/3"},
                           {-3, 11, Rel::ge, "920"}, {0, 1, Rel::le, "415/3"},
                           {4, -7, Rel::ge, "-415"}});
  CHECK(union_equal(by_loc[m.location_index_or_throw("l1_viol")], {l3_sys}));

  // the published copy-of-l0 system is a subset of what is reachable: runs
  // may detour through the l1 copy and return; (455/3, 125) is the endpoint
  // of one such run (10/3 at rates (7.5,9), violation hop, 20/3 at (13,9),
  // zero-time hop back at t = 10) and falls outside the printed system
  auto l2_sys = poly2(sp, {{-18, 15, Rel::ge, "-415"}, {-1, 2, Rel::ge, "115"},
                           {4, -7, Rel::ge, "-415"}, {1, 0, Rel::ge, "115"}});
  const auto& got_l2 = by_loc[m.location_index_or_throw("l0_viol")];
  CHECK(union_includes(got_l2, l2_sys));
  bool extra_witness = false;
  for (const auto& p : got_l2)
    if (p.contains({rat("455/3"), Rational(125)})) extra_witness = true;
  CHECK(extra_witness);
  CHECK_FALSE(l2_sys.contains({rat("455/3"), Rational(125)}));

  // restriction to the second sample: points at l0 and l1 with x2 = 117
  // (the restriction value; the appendix prints 127 in one spot, a typo)
  Sample s1{{Rational(123), Rational(117)}, Rational(10)};
  auto st1 = restrict_to_sample(reach1.states, s1);
  REQUIRE(st1.size() == 2);
  for (const auto& st : st1) {
    auto id = m.location(st.location).id;
    CHECK((id == "l0" || id == "l1"));
    CHECK(model_region(st, sp).contains({Rational(123), Rational(117)}));
    CHECK(model_region(st, sp).points().size() == 1);
  }

  // the third sample is reachable at all four locations
  auto reach2 = bounded_reach(m, st1, Rational(10), cfg);
  Sample s2{{Rational(203), Rational(201)}, Rational(20)};
  auto st2 = restrict_to_sample(reach2.states, s2);
  CHECK(st2.size() == 4);

  // restriction of the empty set is empty
  CHECK(restrict_to_sample({}, s2).empty());
}

TEST_CASE("run_monitor on the platooning fixture") {
  auto m = builtin_acci();
  auto w = fixtures::platooning_log();
  MonitorConfig cfg;
  auto v = run_monitor(m, w, cfg);
  REQUIRE(v.indices.size() == 3);
  CHECK(v.indices[0].verdict == IndexVerdict::rejected);
  CHECK(v.indices[1].verdict == IndexVerdict::rejected);
  CHECK(v.indices[2].verdict == IndexVerdict::accepted);
  CHECK(v.accepted_set() == std::vector<std::size_t>{3});
  CHECK(v.saturated_intervals.empty());

  auto vp = run_monitor(m, w.prefix(2), cfg);
  CHECK(vp.accepted_set().empty());

  CHECK(run_monitor(m, w.prefix(0), cfg).indices.empty());
}

TEST_CASE("witness is recorded and replayable") {
  auto m = builtin_acci();
  auto w = fixtures::platooning_log();
  MonitorConfig cfg;
  cfg.emit_witness = true;
  auto v = run_monitor(m, w, cfg);
  REQUIRE(v.indices.size() == 3);
  REQUIRE(v.indices[2].witness.has_value());
  CHECK_FALSE(v.indices[2].witness->empty());
  CHECK(replay_witness(m, w, v.indices[2]));
  // tampering breaks the replay
  auto bad = v.indices[2];
  bad.witness->back().location = "l0";
  CHECK_FALSE(replay_witness(m, w, bad));
}

TEST_CASE("inconsistent log rejects all remaining indices") {
  auto m = builtin_acci();
  auto sp = m.space();
  std::vector<Sample> s{{{Rational(40), Rational(35)}, Rational(0)},
                        {{Rational(240), Rational(100)}, Rational(10)}, // slope 20: impossible
                        {{Rational(250), Rational(110)}, Rational(11)}};
  TimedQuantitativeWord w(sp, s);
  auto v = run_monitor(m, w, MonitorConfig{});
  REQUIRE(v.indices.size() == 3);
  CHECK(v.indices[1].verdict == IndexVerdict::rejected);
  CHECK(v.indices[1].diagnostic == "log inconsistent with bounding model");
  CHECK(v.indices[2].verdict == IndexVerdict::rejected);
}

TEST_CASE("saturation: cap hit is flagged and never silently rejected") {
  // reset-ratchet cycle: every loop takes one time unit and resets x, so the
  // per-interval fixpoint needs about d discrete steps
  auto sp = VarSpace::make({"x"});
  auto universe = Polyhedron::universe(sp);
  auto rate1 = Polyhedron::from_constraints(sp, {make_constraint({Rational(1)}, Rel::eq, Rational(1))});
  auto zero = Polyhedron::from_constraints(sp, {make_constraint({Rational(1)}, Rel::eq, Rational(0))});
  auto ge1 = Polyhedron::from_constraints(sp, {make_constraint({Rational(1)}, Rel::ge, Rational(1))});
  IntervalUpdate reset;
  reset.set(0, Interval{Rational(0), Rational(0)});
  Lha zeno(sp,
           {Location{"a", rate1, universe, zero, false},
            Location{"b", rate1, universe, Polyhedron::empty_set(sp), true}},
           {Edge{"a", "b", ge1, reset, ""}, Edge{"b", "a", ge1, reset, ""}});

  std::vector<Sample> s{{{Rational(0)}, Rational(60)}};
  TimedQuantitativeWord w(sp, s);

  MonitorConfig tight;
  tight.max_discrete_steps_per_interval = 8;
  auto v = run_monitor(zeno, w, tight);
  REQUIRE(v.indices.size() == 1);
  CHECK(v.indices[0].verdict == IndexVerdict::inconclusive);
  CHECK(v.saturated_intervals == std::vector<std::size_t>{1});

  // a generous cap resolves the same index
  MonitorConfig wide;
  wide.max_discrete_steps_per_interval = 1000;
  auto v2 = run_monitor(zeno, w, wide);
  CHECK(v2.saturated_intervals.empty());
  CHECK(v2.indices[0].verdict == IndexVerdict::accepted);
}

TEST_CASE("forced cap on a guard-free two-location cycle") {
  auto sp = VarSpace::make({"x"});
  auto universe = Polyhedron::universe(sp);
  auto rate = [&](long r) {
    return Polyhedron::from_constraints(sp, {make_constraint({Rational(1)}, Rel::eq, Rational(r))});
  };
  auto zero = Polyhedron::from_constraints(sp, {make_constraint({Rational(1)}, Rel::eq, Rational(0))});
  IntervalUpdate up;
  up.set(0, Interval{Rational(0), Rational(1)});
  Lha pingpong(sp,
               {Location{"a", rate(1), universe, zero, false},
                Location{"b", rate(-1), universe, Polyhedron::empty_set(sp), false}},
               {Edge{"a", "b", universe, up, ""}, Edge{"b", "a", universe, IntervalUpdate{}, ""}});
  MonitorConfig cfg;
  cfg.max_discrete_steps_per_interval = 4;
  auto g = explore(pingpong, initial_states(pingpong), Rational(5), cfg);
  CHECK(g.saturated);
}

TEST_CASE("brute-force oracle on the platooning fixture") {
  auto m = builtin_acci();
  auto w = fixtures::platooning_log();
  OracleGrid grid;
  auto r = brute_force_membership(m, w, grid);
  REQUIRE(r.size() == 3);
  CHECK_FALSE(r[0]);
  CHECK_FALSE(r[1]);
  CHECK(r[2]); // the violation run exists and the oracle finds one

  // zero-length word
  CHECK(brute_force_membership(m, w.prefix(0), grid).empty());

  // a log whose slope exceeds every rate is rejected by both
  std::vector<Sample> s{{{Rational(40), Rational(35)}, Rational(0)},
                        {{Rational(240), Rational(100)}, Rational(10)}};
  TimedQuantitativeWord fast(m.space(), s);
  auto rf = brute_force_membership(m, fast, grid);
  CHECK_FALSE(rf[0]);
  CHECK_FALSE(rf[1]);
  auto v = run_monitor(m, fast, MonitorConfig{});
  CHECK(v.indices[1].verdict == IndexVerdict::rejected);
}

TEST_CASE("oracle soundness on random tiny instances") {
  // one-sided: whenever the trajectory oracle proves membership at an
  // index, the exact monitor must accept that index
  std::mt19937_64 rng(2024);
  OracleGrid grid;
  grid.time_divisions = 4;
  grid.rate_divisions = 4;
  MonitorConfig cfg;
  cfg.max_discrete_steps_per_interval = 400;
  int done = 0;
  while (done < 60) {
    auto m = fixtures::random_tiny_model(rng);
    auto w = fixtures::random_tiny_word(m, rng);
    std::vector<bool> oracle;
    try {
      oracle = brute_force_membership(m, w, grid);
    } catch (const DomainError&) {
      continue; // unbounded flow drawn; skip
    }
    auto v = run_monitor(m, w, cfg);
    REQUIRE(v.indices.size() == oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      if (!oracle[i]) continue;
      CAPTURE(done);
      CAPTURE(i);
      REQUIRE(v.indices[i].verdict == IndexVerdict::accepted);
    }
    ++done;
  }
}

TEST_CASE("restriction collapses to at most |L| point states") {
  auto m = builtin_acci();
  auto w = fixtures::platooning_log();
  MonitorConfig cfg;
  auto states = initial_states(m);
  Rational prev(0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto r = bounded_reach(m, states, w[i].timestamp - prev, cfg);
    states = restrict_to_sample(r.states, w[i]);
    CHECK(states.size() <= m.locations().size());
    for (const auto& st : states) CHECK(model_region(st, m.space()).points().size() == 1);
    prev = w[i].timestamp;
  }
}

TEST_CASE("verdicts are independent of merging and deterministic") {
  auto m = builtin_acci();
  MonitorConfig with_merge, without_merge;
  without_merge.merge_polyhedra = false;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto w = generate_log(m, seed, 6, Rational(1), Rational(4));
    auto a = run_monitor(m, w, with_merge);
    auto b = run_monitor(m, w, without_merge);
    auto c = run_monitor(m, w, with_merge);
    REQUIRE(a.indices.size() == b.indices.size());
    for (std::size_t i = 0; i < a.indices.size(); ++i) {
      CHECK(a.indices[i].verdict == b.indices[i].verdict);
      CHECK(a.indices[i].verdict == c.indices[i].verdict);
    }
  }
}

TEST_CASE("monotone emptiness: once inconsistent, never recovers") {
  auto m = builtin_acci();
  std::vector<Sample> s{{{Rational(40), Rational(35)}, Rational(0)},
                        {{Rational(0), Rational(0)}, Rational(5)},
                        {{Rational(80), Rational(75)}, Rational(10)}, // plausible again
                        {{Rational(120), Rational(110)}, Rational(15)}};
  TimedQuantitativeWord w(m.space(), s);
  auto v = run_monitor(m, w, MonitorConfig{});
  for (std::size_t i = 1; i < v.indices.size(); ++i)
    CHECK(v.indices[i].verdict == IndexVerdict::rejected);
}
