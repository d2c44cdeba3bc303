#include "hamon/oracle.hpp"

#include "hamon/errors.hpp"

#include <map>
#include <set>

namespace hamon {

namespace {

using Point = std::vector<Rational>;

struct Box {
  std::vector<Interval> ranges; // per variable
  bool contains(const Point& f) const {
    for (std::size_t i = 0; i < ranges.size(); ++i)
      if (f[i] < ranges[i].lo || f[i] > ranges[i].hi) return false;
    return true;
  }
};

Box flow_box(const Polyhedron& flow, std::size_t dim, const std::string& loc_id) {
  if (flow.is_empty()) throw DomainError("oracle: empty flow in location " + loc_id);
  Box b;
  b.ranges.assign(dim, Interval{Rational(0), Rational(0)});
  std::vector<bool> lo_set(dim, false), hi_set(dim, false);
  std::vector<Rational> lo(dim), hi(dim);
  for (const auto& c : flow.constraints()) {
    int var = -1;
    for (std::size_t i = 0; i < dim; ++i) {
      if (c.coeffs[i].sign() == 0) continue;
      if (var >= 0) throw DomainError("oracle: flow of " + loc_id + " is not a box");
      var = static_cast<int>(i);
    }
    if (var < 0) continue;
    auto v = static_cast<std::size_t>(var);
    Rational bound = c.bound / c.coeffs[v];
    bool upper = (c.rel == Rel::le) == (c.coeffs[v].sign() > 0);
    if (c.rel == Rel::eq) {
      lo[v] = hi[v] = bound;
      lo_set[v] = hi_set[v] = true;
    } else if (upper) {
      if (!hi_set[v] || bound < hi[v]) hi[v] = bound;
      hi_set[v] = true;
    } else {
      if (!lo_set[v] || bound > lo[v]) lo[v] = bound;
      lo_set[v] = true;
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (!lo_set[i] || !hi_set[i])
      throw DomainError("oracle: flow of " + loc_id + " is unbounded in " + std::to_string(i));
    b.ranges[i] = Interval{lo[i], hi[i]};
  }
  return b;
}

std::string key_of(std::size_t loc, const Point& x, const Rational& t_left,
                   std::size_t switches) {
  std::string k = std::to_string(loc) + "|" + t_left.str() + "|" + std::to_string(switches);
  for (const auto& v : x) k += "," + v.str();
  return k;
}

struct Search {
  const Lha& m;
  const OracleGrid& grid;
  std::vector<Box> boxes;
  std::vector<std::vector<std::size_t>> out_edges;

  std::vector<std::vector<Point>> rate_cache;

  explicit Search(const Lha& model, const OracleGrid& g) : m(model), grid(g) {
    for (const auto& l : m.locations())
      boxes.push_back(flow_box(l.flow, m.space()->dim(), l.id));
    out_edges.resize(m.locations().size());
    for (std::size_t e = 0; e < m.edges().size(); ++e)
      out_edges[m.location_index_or_throw(m.edges()[e].source)].push_back(e);
    for (std::size_t i = 0; i < m.locations().size(); ++i) rate_cache.push_back(make_rate_grid(i));
  }

  const std::vector<Point>& rate_grid(std::size_t loc) const { return rate_cache[loc]; }

  std::vector<Point> make_rate_grid(std::size_t loc) const {
    const auto& b = boxes[loc];
    std::vector<Point> acc{{}};
    for (std::size_t i = 0; i < b.ranges.size(); ++i) {
      std::vector<Point> nxt;
      std::vector<Rational> vals;
      if (b.ranges[i].lo == b.ranges[i].hi) {
        vals.push_back(b.ranges[i].lo);
      } else {
        for (std::size_t k = 0; k <= grid.rate_divisions; ++k)
          vals.push_back(b.ranges[i].lo + (b.ranges[i].hi - b.ranges[i].lo) *
                                              Rational((long)k, (long)grid.rate_divisions));
      }
      for (const auto& p : acc)
        for (const auto& v : vals) {
          auto q = p;
          q.push_back(v);
          nxt.push_back(std::move(q));
        }
      acc = std::move(nxt);
    }
    return acc;
  }

  std::vector<Rational> update_values(const Interval& iv) const {
    std::vector<Rational> vals{iv.lo};
    if (iv.lo == iv.hi) return vals;
    for (std::size_t k = 1; k <= grid.update_divisions; ++k)
      vals.push_back(iv.lo + (iv.hi - iv.lo) * Rational((long)k, (long)grid.update_divisions));
    return vals;
  }

  bool segment_ok(std::size_t loc, const Point& from, const Point& to) const {
    // endpoints inside the (convex) invariant keep the whole segment inside
    return m.location(loc).invariant.contains(from) && m.location(loc).invariant.contains(to);
  }

  // all (location, point) states reachable at exactly t_left more time with
  // position `target` at the end; switches = remaining flow/edge switches
  void reach_target(std::size_t loc, const Point& x, const Rational& t_left,
                    std::size_t switches, const Point& target,
                    std::set<std::string>& visited, std::set<std::size_t>& found_locs) {
    auto k = key_of(loc, x, t_left, switches);
    if (!visited.insert(k).second) return;

    // finish with one final segment (rate solved exactly)
    if (t_left.sign() == 0) {
      if (x == target) found_locs.insert(loc);
    } else {
      Point f(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) f[i] = (target[i] - x[i]) / t_left;
      if (boxes[loc].contains(f) && segment_ok(loc, x, target)) found_locs.insert(loc);
    }

    if (switches == 0) return;

    // zero-time edge firings
    for (auto e : out_edges[loc]) {
      const auto& edge = m.edges()[e];
      if (!edge.guard.contains(x)) continue;
      std::vector<Point> nxts{x};
      for (const auto& [var, iv] : edge.update.entries()) {
        std::vector<Point> acc;
        for (const auto& p : nxts)
          for (const auto& v : update_values(iv)) {
            auto q = p;
            q[var] = v;
            acc.push_back(std::move(q));
          }
        nxts = std::move(acc);
      }
      std::size_t tgt = m.location_index_or_throw(edge.target);
      for (const auto& nx : nxts)
        if (m.location(tgt).invariant.contains(nx))
          reach_target(tgt, nx, t_left, switches - 1, target, visited, found_locs);
    }

    // dwell a grid fraction of the remaining time, then switch flow
    if (t_left.sign() > 0) {
      for (std::size_t j = 1; j <= grid.time_divisions; ++j) {
        Rational dt = t_left * Rational((long)j, (long)grid.time_divisions);
        for (const auto& f : rate_grid(loc)) {
          Point nx(x.size());
          for (std::size_t i = 0; i < x.size(); ++i) nx[i] = x[i] + dt * f[i];
          if (!segment_ok(loc, x, nx)) continue;
          reach_target(loc, nx, t_left - dt, switches - 1, target, visited, found_locs);
        }
      }
    }
  }

  // zero-time closure of (loc, x): states reachable by firing edges without
  // letting time pass; bounded depth
  void closure(std::size_t loc, const Point& x, std::set<std::pair<std::size_t, std::string>>& seen,
               std::vector<std::pair<std::size_t, Point>>& out, std::size_t depth) const {
    std::string xk;
    for (const auto& v : x) xk += v.str() + ",";
    if (!seen.insert({loc, xk}).second) return;
    out.push_back({loc, x});
    if (depth == 0) return;
    for (auto e : out_edges[loc]) {
      const auto& edge = m.edges()[e];
      if (!edge.guard.contains(x)) continue;
      std::vector<Point> nxts{x};
      for (const auto& [var, iv] : edge.update.entries()) {
        std::vector<Point> acc;
        for (const auto& p : nxts)
          for (const auto& v : update_values(iv)) {
            auto q = p;
            q[var] = v;
            acc.push_back(std::move(q));
          }
        nxts = std::move(acc);
      }
      std::size_t tgt = m.location_index_or_throw(edge.target);
      for (const auto& nx : nxts)
        if (m.location(tgt).invariant.contains(nx)) closure(tgt, nx, seen, out, depth - 1);
    }
  }
};

} // namespace

std::vector<bool> brute_force_membership(const Lha& m, const TimedQuantitativeWord& w,
                                         const OracleGrid& grid) {
  if (!same_space(w.space(), m.space()))
    throw DimensionError("word variables do not match the model");
  Search search(m, grid);

  // entry states: vertices of each initial region (within the invariant)
  std::vector<std::pair<std::size_t, Point>> states;
  for (std::size_t i = 0; i < m.locations().size(); ++i) {
    auto init = intersect(m.location(i).initial, m.location(i).invariant);
    if (init.is_empty()) continue;
    for (const auto& p : init.points()) states.push_back({i, p});
  }

  std::vector<bool> result;
  Rational prev(0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    Rational d = w[i].timestamp - prev;
    prev = w[i].timestamp;

    std::set<std::size_t> found_locs;
    std::set<std::string> visited;
    for (const auto& [loc, x] : states)
      search.reach_target(loc, x, d, grid.max_switches, w[i].values, visited, found_locs);

    // landed on the sample: close under zero-time firings; the closure both
    // decides acceptance and seeds the next interval
    std::vector<std::pair<std::size_t, Point>> closed;
    std::set<std::pair<std::size_t, std::string>> seen;
    for (auto loc : found_locs) search.closure(loc, w[i].values, seen, closed, 3);

    bool acc = false;
    for (const auto& [loc, x] : closed)
      if (m.location(loc).accepting) acc = true;
    result.push_back(acc);
    states = std::move(closed);
    if (states.empty()) {
      for (std::size_t rest = i + 1; rest < w.size(); ++rest) result.push_back(false);
      break;
    }
  }
  return result;
}

} // namespace hamon
