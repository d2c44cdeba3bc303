#include "hamon/log_gen.hpp"

#include <algorithm>
#include <random>

namespace hamon {

namespace {

using Point = std::vector<Rational>;

Rational eval(const std::vector<Rational>& coeffs, const Point& x) {
  mpq_class acc(0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) acc += coeffs[i].raw() * x[i].raw();
  return Rational::from_raw(std::move(acc));
}

// random rational point inside a polyhedron: convex combination of its
// vertices with small-denominator weights, plus clamped ray contributions
std::optional<Point> sample_point(const Polyhedron& p, std::mt19937_64& rng,
                                  const LogGenOptions& opts) {
  auto pts = p.points();
  if (pts.empty()) return std::nullopt;
  auto rnd = [&](long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
  };
  std::vector<Rational> w(pts.size());
  Rational total(0);
  for (auto& wi : w) {
    wi = Rational(rnd(0, 16));
    total += wi;
  }
  if (total.sign() == 0) {
    w[static_cast<std::size_t>(rnd(0, static_cast<long>(pts.size()) - 1))] = Rational(1);
    total = Rational(1);
  }
  Point x(p.dim(), Rational(0));
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (w[k].sign() == 0) continue;
    Rational f = w[k] / total;
    for (std::size_t i = 0; i < p.dim(); ++i) x[i] += f * pts[k][i];
  }
  for (const auto& ray : p.rays()) {
    Rational f = Rational(rnd(0, 16), 16) * opts.ray_clamp;
    if (f.sign() == 0) continue;
    for (std::size_t i = 0; i < p.dim(); ++i) x[i] += f * ray[i];
  }
  for (const auto& line : p.lines()) {
    Rational f = Rational(rnd(-16, 16), 16) * opts.ray_clamp;
    if (f.sign() == 0) continue;
    for (std::size_t i = 0; i < p.dim(); ++i) x[i] += f * line[i];
  }
  return x;
}

// largest s with x + s*f inside p; nullopt when unbounded
std::optional<Rational> max_dwell(const Polyhedron& p, const Point& x, const Point& f) {
  std::optional<Rational> best;
  for (const auto& c : p.constraints()) {
    Rational cur = eval(c.coeffs, x);
    Rational slope = eval(c.coeffs, f);
    std::optional<Rational> cap;
    switch (c.rel) {
      case Rel::le:
        if (slope.sign() > 0) cap = (c.bound - cur) / slope;
        break;
      case Rel::ge:
        if (slope.sign() < 0) cap = (cur - c.bound) / (-slope);
        break;
      case Rel::eq:
        if (slope.sign() != 0) cap = Rational(0);
        break;
    }
    if (cap && (!best || *cap < *best)) best = cap;
  }
  return best;
}

} // namespace

TimedQuantitativeWord generate_log(const Lha& m, std::uint64_t seed, std::size_t length,
                                   const Rational& interval_lo, const Rational& interval_hi,
                                   const LogGenOptions& opts) {
  if (interval_lo.sign() < 0 || interval_hi < interval_lo)
    throw DomainError("generate_log: need 0 <= lo <= hi");
  std::mt19937_64 rng(seed);
  auto rnd = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };

  std::vector<Sample> out;
  auto word_so_far = [&] { return TimedQuantitativeWord(m.space(), out); };
  if (length == 0) return word_so_far();

  // initial location and point
  std::vector<std::size_t> inits;
  for (std::size_t i = 0; i < m.locations().size(); ++i) {
    auto seed_region = intersect(m.location(i).initial, m.location(i).invariant);
    if (!seed_region.is_empty()) inits.push_back(i);
  }
  if (inits.empty()) throw DomainError("generate_log: model has no initial location");
  std::size_t loc = inits[static_cast<std::size_t>(rnd(0, static_cast<long>(inits.size()) - 1))];
  auto start_region = intersect(m.location(loc).initial, m.location(loc).invariant);
  Point x = *sample_point(start_region, rng, opts);

  Rational t(0);
  out.push_back(Sample{x, t});

  auto draw_interval = [&] {
    long d = opts.grid_denominator;
    mpz_class lo_n, hi_n;
    mpz_cdiv_q(lo_n.get_mpz_t(), mpz_class(interval_lo.raw().get_num() * d).get_mpz_t(),
               interval_lo.raw().get_den().get_mpz_t());
    mpz_fdiv_q(hi_n.get_mpz_t(), mpz_class(interval_hi.raw().get_num() * d).get_mpz_t(),
               interval_hi.raw().get_den().get_mpz_t());
    if (lo_n > hi_n) throw DomainError("generate_log: interval range has no grid point");
    return Rational(rnd(lo_n.get_si(), hi_n.get_si()), d);
  };

  auto enabled_edges = [&](std::size_t at, const Point& pos) {
    std::vector<std::size_t> es;
    for (std::size_t e = 0; e < m.edges().size(); ++e) {
      const auto& edge = m.edges()[e];
      if (m.location_index_or_throw(edge.source) != at) continue;
      if (edge.guard.contains(pos)) es.push_back(e);
    }
    return es;
  };

  auto try_fire = [&](std::size_t e) -> bool {
    const auto& edge = m.edges()[e];
    Point nx = x;
    for (const auto& [var, iv] : edge.update.entries()) {
      Rational f = Rational(rnd(0, 16), 16);
      nx[var] = iv.lo + f * (iv.hi - iv.lo);
    }
    std::size_t tgt = m.location_index_or_throw(edge.target);
    if (!m.location(tgt).invariant.contains(nx)) return false;
    if (m.location(tgt).flow.is_empty()) return false;
    loc = tgt;
    x = std::move(nx);
    return true;
  };

  for (std::size_t k = 1; k < length; ++k) {
    Rational target = t + draw_interval();
    int stall = 0;
    while (t < target) {
      auto f = sample_point(m.location(loc).flow, rng, opts);
      if (!f) throw SimulationStuck("empty flow in location " + m.location(loc).id, word_so_far());
      Rational want = target - t;
      if (rnd(0, 2) == 0) want = want * Rational(rnd(1, 4), 4);
      auto cap = max_dwell(m.location(loc).invariant, x, *f);
      Rational dwell = cap && *cap < want ? *cap : want;
      if (dwell.sign() > 0) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += dwell * (*f)[i];
        t += dwell;
      }
      bool blocked = cap && dwell == *cap && t < target;
      auto es = enabled_edges(loc, x);
      std::shuffle(es.begin(), es.end(), rng);
      bool fired = false;
      for (auto e : es) {
        if (blocked || rnd(1, 100) <= static_cast<long>(opts.edge_fire_percent)) {
          if (try_fire(e)) { fired = true; break; }
        }
      }
      if (dwell.sign() > 0) {
        stall = 0;
      } else if (++stall > 40) {
        throw SimulationStuck("no usable flow or edge in location " + m.location(loc).id +
                                  " at time " + t.str(),
                              word_so_far());
      }
      (void)fired;
    }
    out.push_back(Sample{x, t});
  }
  return word_so_far();
}

} // namespace hamon
