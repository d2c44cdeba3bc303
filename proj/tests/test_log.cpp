#include "hamon/builtin_models.hpp"
#include "hamon/log_gen.hpp"
#include "hamon/monitor.hpp"
#include "hamon/word.hpp"

#include <doctest.h>

#include "support/fixtures.hpp"

using namespace hamon;

TEST_CASE("parse_log reads the platooning log") {
  auto sp = VarSpace::make({"x1", "x2"});
  auto w = parse_log("time,x1,x2\n0,40,35\n10,123,117\n20,203,201\n", sp);
  REQUIRE(w.size() == 3);
  CHECK(w[0].timestamp == Rational(0));
  CHECK(w[1].values[0] == Rational(123));
  CHECK(w[2].values[1] == Rational(201));
}

TEST_CASE("parse_log: empty body, comments, errors") {
  auto sp = VarSpace::make({"x1", "x2"});
  CHECK(parse_log("time,x1,x2\n", sp).size() == 0);
  CHECK(parse_log("# a comment\ntime,x1,x2\n0,1,2 # trailing\n", sp).size() == 1);
  CHECK_THROWS_AS(parse_log("time,x1,x2\n5,1,2\n3,1,2\n", sp), DomainError); // decreasing
  CHECK_THROWS_AS(parse_log("time,x1\n0,1\n", sp), ParseError);              // missing column
  CHECK_THROWS_AS(parse_log("time,x1,x2\n0,zz,2\n", sp), ParseError);        // bad literal
  CHECK_THROWS_AS(parse_log("", sp), ParseError);                            // no header
}

TEST_CASE("format/parse round-trip") {
  auto w = fixtures::platooning_log();
  auto again = parse_log(format_log(w), w.space());
  REQUIRE(again.size() == w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    CHECK(again[i].timestamp == w[i].timestamp);
    CHECK(again[i].values == w[i].values);
  }
}

TEST_CASE("prefix access") {
  auto w = fixtures::platooning_log();
  CHECK(w.prefix(0).size() == 0);
  CHECK(w.prefix(2).size() == 2);
  CHECK(w.prefix(2)[1].timestamp == Rational(10));
  CHECK_THROWS_AS(w.prefix(4), DomainError);
}

TEST_CASE("generate_log: determinism and shape") {
  auto m = builtin_acci();
  auto a = generate_log(m, 7, 8, Rational(1), Rational(5));
  auto b = generate_log(m, 7, 8, Rational(1), Rational(5));
  REQUIRE(a.size() == 8);
  CHECK(a[0].timestamp == Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].timestamp == b[i].timestamp);
    CHECK(a[i].values == b[i].values);
  }
  auto c = generate_log(m, 8, 8, Rational(1), Rational(5));
  bool same = true;
  for (std::size_t i = 0; i < a.size() && same; ++i)
    same = a[i].values == c[i].values && a[i].timestamp == c[i].timestamp;
  CHECK_FALSE(same);

  CHECK(generate_log(m, 1, 0, Rational(1), Rational(5)).size() == 0);
}

TEST_CASE("generated logs are model-consistent") {
  // the monitor's restriction stays nonempty at every index when a log is
  // replayed against the model that produced it
  MonitorConfig cfg;
  for (const char* selector : {"ACCI", "ACCD:2:9/10", "ACCD:3:2"}) {
    auto m = builtin_model(selector);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto w = generate_log(m, seed, 6, Rational(1), Rational(4));
      auto states = initial_states(m);
      Rational prev(0);
      for (std::size_t i = 0; i < w.size(); ++i) {
        auto r = bounded_reach(m, states, w[i].timestamp - prev, cfg);
        REQUIRE_FALSE(r.saturated);
        states = restrict_to_sample(r.states, w[i]);
        CAPTURE(selector);
        CAPTURE(seed);
        CAPTURE(i);
        REQUIRE_FALSE(states.empty());
        prev = w[i].timestamp;
      }
    }
  }
}
