#include "hamon/monitor.hpp"

#include "hamon/errors.hpp"

#include <algorithm>
#include <deque>

namespace hamon {

const std::string kIntervalClock = "@t";

VarSpacePtr extended_space(const VarSpacePtr& model_space) {
  auto names = model_space->names();
  names.push_back(kIntervalClock);
  return VarSpace::make(std::move(names));
}

std::string_view verdict_text(IndexVerdict v) {
  switch (v) {
    case IndexVerdict::accepted: return "accepted";
    case IndexVerdict::rejected: return "rejected";
    case IndexVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<std::size_t> MonitorVerdict::accepted_set() const {
  std::vector<std::size_t> c;
  for (const auto& r : indices)
    if (r.verdict == IndexVerdict::accepted) c.push_back(r.index);
  return c;
}

bool MonitorVerdict::any(IndexVerdict v) const {
  return std::any_of(indices.begin(), indices.end(),
                     [&](const IndexResult& r) { return r.verdict == v; });
}

namespace {

// per-location data precomputed for one exploration
struct LocCtx {
  Polyhedron inv;         // invariant over the extended space
  Polyhedron flow;        // flow over the extended space, clock rate = 1
  std::vector<std::size_t> out_edges;
};

struct ExploreCtx {
  const Lha& m;
  VarSpacePtr ext;
  std::size_t clock;
  std::vector<LocCtx> locs;
  std::vector<std::size_t> edge_target;
  std::vector<Polyhedron> edge_guard; // over the extended space
  Polyhedron budget_cut;              // {clock <= budget}

  ExploreCtx(const Lha& model, const Rational& budget)
      : m(model), ext(extended_space(model.space())), clock(model.space()->dim()),
        budget_cut(Polyhedron::universe(ext)) {
    std::vector<Rational> ck(ext->dim(), Rational(0));
    ck[clock] = Rational(1);
    auto clock_rate_one =
        Polyhedron::from_constraints(ext, {make_constraint(ck, Rel::eq, Rational(1))});
    budget_cut = Polyhedron::from_constraints(ext, {make_constraint(ck, Rel::le, budget)});

    locs.reserve(m.locations().size());
    for (const auto& l : m.locations())
      locs.push_back(LocCtx{intersect(l.invariant.embedded(ext), budget_cut),
                            intersect(l.flow.embedded(ext), clock_rate_one),
                            {}});
    edge_target.reserve(m.edges().size());
    edge_guard.reserve(m.edges().size());
    for (std::size_t e = 0; e < m.edges().size(); ++e) {
      const auto& edge = m.edges()[e];
      locs.at(m.location_index_or_throw(edge.source)).out_edges.push_back(e);
      edge_target.push_back(m.location_index_or_throw(edge.target));
      edge_guard.push_back(edge.guard.embedded(ext));
    }
  }

  // post-elapse region at location loc from entry region r
  Polyhedron elapse(std::size_t loc, const Polyhedron& r, const Rational& budget) const {
    if (locs[loc].flow.is_empty()) return Polyhedron::empty_set(ext);
    return intersect(time_elapse(r, locs[loc].flow, budget, clock), locs[loc].inv);
  }
};

} // namespace

std::vector<SymbolicState> initial_states(const Lha& m) {
  auto ext = extended_space(m.space());
  std::size_t clock = m.space()->dim();
  std::vector<Rational> ck(ext->dim(), Rational(0));
  ck[clock] = Rational(1);
  auto clock_zero = Polyhedron::from_constraints(ext, {make_constraint(ck, Rel::eq, Rational(0))});
  std::vector<SymbolicState> out;
  for (std::size_t i = 0; i < m.locations().size(); ++i) {
    const auto& l = m.location(i);
    auto r = intersect(intersect(l.initial.embedded(ext), l.invariant.embedded(ext)), clock_zero);
    if (!r.is_empty()) out.push_back(SymbolicState{i, std::move(r)});
  }
  return out;
}

ReachGraph explore(const Lha& m, const std::vector<SymbolicState>& start,
                   const Rational& budget, const MonitorConfig& cfg) {
  if (budget.sign() < 0) throw DomainError("explore: negative budget");
  ExploreCtx ctx(m, budget);
  ReachGraph g;
  std::vector<std::vector<std::size_t>> stored(m.locations().size());
  std::deque<std::size_t> queue;
  std::size_t cap = cfg.effective_cap(m);
  bool merge_stored = cfg.merge_polyhedra && !cfg.emit_witness;

  auto push_node = [&](std::size_t loc, Polyhedron region, int pred, int via,
                       std::size_t start_idx) {
    if (region.is_empty()) return;
    for (auto id : stored[loc])
      if (includes(g.nodes[id].region, region)) return;
    if (merge_stored) {
      for (auto id : stored[loc]) {
        if (auto merged = merge_if_convex(g.nodes[id].region, region)) {
          g.nodes[id].region = std::move(*merged);
          queue.push_back(id); // successors of the grown region need revisiting
          return;
        }
      }
    }
    g.nodes.push_back(ReachNode{loc, std::move(region), pred, via, start_idx});
    stored[loc].push_back(g.nodes.size() - 1);
    queue.push_back(g.nodes.size() - 1);
  };

  for (std::size_t s = 0; s < start.size(); ++s) {
    const auto& st = start[s];
    if (!same_space(st.region.space(), ctx.ext))
      throw DimensionError("start state region not over the extended space");
    auto r = ctx.elapse(st.location, intersect(st.region, ctx.locs[st.location].inv), budget);
    push_node(st.location, std::move(r), -1, -1, s);
  }

  while (!queue.empty()) {
    std::size_t id = queue.front();
    queue.pop_front();
    std::size_t loc = g.nodes[id].location;
    for (auto e : ctx.locs[loc].out_edges) {
      if (++g.expansions > cap) {
        g.saturated = true;
        return g;
      }
      auto guarded = intersect(g.nodes[id].region, ctx.edge_guard[e]);
      if (guarded.is_empty()) continue;
      auto updated = apply_update(guarded, m.edges()[e].update);
      std::size_t tgt = ctx.edge_target[e];
      auto entered = intersect(updated, ctx.locs[tgt].inv);
      if (entered.is_empty()) continue;
      push_node(tgt, ctx.elapse(tgt, entered, budget), static_cast<int>(id),
                static_cast<int>(e), g.nodes[id].start);
    }
  }
  return g;
}

namespace {

Polyhedron clock_slice(const VarSpacePtr& ext, std::size_t clock, const Rational& d) {
  std::vector<Rational> ck(ext->dim(), Rational(0));
  ck[clock] = Rational(1);
  return Polyhedron::from_constraints(ext, {make_constraint(ck, Rel::eq, d)});
}

} // namespace

BoundedReachResult bounded_reach(const Lha& m, const std::vector<SymbolicState>& start,
                                 const Rational& d, const MonitorConfig& cfg) {
  auto g = explore(m, start, d, cfg);
  auto ext = extended_space(m.space());
  std::size_t clock = m.space()->dim();
  auto at_d = clock_slice(ext, clock, d);
  IntervalUpdate reset;
  reset.set(clock, Interval{Rational(0), Rational(0)});

  std::vector<std::vector<Polyhedron>> per_loc(m.locations().size());
  for (const auto& node : g.nodes) {
    auto r = intersect(node.region, at_d);
    if (r.is_empty()) continue;
    per_loc[node.location].push_back(apply_update(r, reset));
  }

  BoundedReachResult out;
  out.saturated = g.saturated;
  for (std::size_t loc = 0; loc < per_loc.size(); ++loc) {
    auto& regions = per_loc[loc];
    // drop included pieces, merge exactly when allowed
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < regions.size() && !changed; ++i)
        for (std::size_t j = 0; j < regions.size() && !changed; ++j) {
          if (i == j) continue;
          if (includes(regions[i], regions[j])) {
            regions.erase(regions.begin() + static_cast<long>(j));
            changed = true;
          } else if (cfg.merge_polyhedra) {
            if (auto merged = merge_if_convex(regions[i], regions[j])) {
              regions[i] = std::move(*merged);
              regions.erase(regions.begin() + static_cast<long>(j));
              changed = true;
            }
          }
        }
    }
    for (auto& r : regions) out.states.push_back(SymbolicState{loc, std::move(r)});
  }
  return out;
}

std::vector<SymbolicState> restrict_to_sample(const std::vector<SymbolicState>& states,
                                              const Sample& sample) {
  std::vector<SymbolicState> out;
  for (const auto& st : states) {
    const auto& ext = st.region.space();
    if (sample.values.size() + 1 != ext->dim())
      throw DimensionError("sample does not match the state space");
    std::vector<LinearConstraint> cs;
    for (std::size_t i = 0; i < sample.values.size(); ++i) {
      std::vector<Rational> c(ext->dim(), Rational(0));
      c[i] = Rational(1);
      cs.push_back(make_constraint(std::move(c), Rel::eq, sample.values[i]));
    }
    auto r = intersect(st.region, Polyhedron::from_constraints(ext, cs));
    if (r.is_empty()) continue;
    bool dup = false;
    for (const auto& prev : out)
      if (prev.location == st.location && equals(prev.region, r)) { dup = true; break; }
    if (!dup) out.push_back(SymbolicState{st.location, std::move(r)});
  }
  return out;
}

Polyhedron model_region(const SymbolicState& s, const VarSpacePtr& model_space) {
  return eliminate(s.region, std::vector<std::string>{kIntervalClock}).embedded(model_space);
}

namespace {

// witness bookkeeping for one interval
struct IntervalTrace {
  ReachGraph graph;
  // for each restricted state: source node in this interval's graph
  std::vector<int> source_node;
};

std::vector<WitnessStep> rebuild_witness(const Lha& m,
                                         const std::vector<IntervalTrace>& traces,
                                         std::size_t interval, int node_id) {
  std::vector<WitnessStep> steps;
  auto model_sp = m.space();
  int iv = static_cast<int>(interval);
  int node = node_id;
  while (iv >= 0) {
    const auto& g = traces[static_cast<std::size_t>(iv)].graph;
    std::size_t start_idx = 0;
    // walk the chain inside this interval, back to its entry
    std::vector<WitnessStep> chain;
    int cur = node;
    while (cur >= 0) {
      const auto& n = g.nodes[static_cast<std::size_t>(cur)];
      chain.push_back(WitnessStep{
          m.location(n.location).id, n.via_edge,
          eliminate(n.region, std::vector<std::string>{kIntervalClock})});
      start_idx = n.start;
      cur = n.pred;
    }
    std::reverse(chain.begin(), chain.end());
    steps.insert(steps.begin(), chain.begin(), chain.end());
    // the interval's entry state is a restricted state of the previous index
    if (iv == 0) break;
    node = traces[static_cast<std::size_t>(iv - 1)].source_node.at(start_idx);
    --iv;
  }
  return steps;
}

} // namespace

MonitorVerdict run_monitor(const Lha& m, const TimedQuantitativeWord& w,
                           const MonitorConfig& cfg) {
  if (!same_space(w.space(), m.space()))
    throw DimensionError("word variables do not match the model");
  auto ext = extended_space(m.space());
  std::size_t clock = m.space()->dim();
  IntervalUpdate reset;
  reset.set(clock, Interval{Rational(0), Rational(0)});

  MonitorVerdict verdict;
  std::vector<SymbolicState> states = initial_states(m);
  std::vector<IntervalTrace> traces;
  bool sat_seen = false;
  Rational prev_time(0);

  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& sample = w[i];
    Rational d = sample.timestamp - prev_time;
    prev_time = sample.timestamp;

    auto graph = explore(m, states, d, cfg);
    bool sat_i = graph.saturated;
    sat_seen = sat_seen || sat_i;

    auto at_d = clock_slice(ext, clock, d);
    std::vector<LinearConstraint> pin;
    for (std::size_t k = 0; k < sample.values.size(); ++k) {
      std::vector<Rational> c(ext->dim(), Rational(0));
      c[k] = Rational(1);
      pin.push_back(make_constraint(std::move(c), Rel::eq, sample.values[k]));
    }
    auto sample_poly = intersect(at_d, Polyhedron::from_constraints(ext, pin));

    // restricted states: at most one per location (a single point each)
    std::vector<SymbolicState> next;
    std::vector<int> sources;
    std::vector<bool> seen(m.locations().size(), false);
    for (std::size_t nid = 0; nid < graph.nodes.size(); ++nid) {
      const auto& node = graph.nodes[nid];
      if (seen[node.location]) continue;
      auto r = intersect(node.region, sample_poly);
      if (r.is_empty()) continue;
      seen[node.location] = true;
      next.push_back(SymbolicState{node.location, apply_update(r, reset)});
      sources.push_back(static_cast<int>(nid));
    }

    bool accepted = false;
    std::size_t accepted_at = 0;
    for (std::size_t k = 0; k < next.size(); ++k)
      if (m.location(next[k].location).accepting) { accepted = true; accepted_at = k; }

    IndexResult res;
    res.index = i + 1;
    res.timestamp = sample.timestamp;
    if (sat_i) verdict.saturated_intervals.push_back(i + 1);

    if (cfg.emit_witness) traces.push_back(IntervalTrace{std::move(graph), sources});

    if (accepted) {
      res.verdict = IndexVerdict::accepted;
      if (cfg.emit_witness) {
        auto wsteps = rebuild_witness(m, traces, i, sources[accepted_at]);
        res.witness = std::move(wsteps);
      }
    } else if (sat_seen) {
      res.verdict = IndexVerdict::inconclusive;
      res.diagnostic = "exploration cap exceeded; acceptance neither proven nor refuted";
    } else if (next.empty()) {
      res.verdict = IndexVerdict::rejected;
      res.diagnostic = "log inconsistent with bounding model";
    } else {
      res.verdict = IndexVerdict::rejected;
    }
    verdict.indices.push_back(std::move(res));
    states = std::move(next);
  }
  return verdict;
}

bool replay_witness(const Lha& m, const TimedQuantitativeWord& w, const IndexResult& result) {
  if (!result.witness || result.witness->empty()) return false;
  auto ext = extended_space(m.space());
  std::size_t clock = m.space()->dim();

  // interval boundaries: steps with via_edge == -1 start a new interval
  const auto& steps = *result.witness;
  std::size_t interval = 0; // 0-based sample index
  Rational prev_time(0);

  std::vector<SymbolicState> cur = initial_states(m);
  std::size_t pos = 0;
  while (pos < steps.size()) {
    if (interval >= result.index) return false;
    Rational d = w[interval].timestamp - prev_time;
    prev_time = w[interval].timestamp;
    ExploreCtx ctx(m, d);

    // entry region for this interval
    std::size_t loc = m.location_index_or_throw(steps[pos].location);
    Polyhedron region = Polyhedron::empty_set(ext);
    for (const auto& s : cur)
      if (s.location == loc) region = s.region;
    if (region.is_empty()) return false;

    region = ctx.elapse(loc, intersect(region, ctx.locs[loc].inv), d);
    if (region.is_empty()) return false;
    if (!equals(eliminate(region, std::vector<std::string>{kIntervalClock}), steps[pos].region))
      return false;
    ++pos;
    while (pos < steps.size() && steps[pos].via_edge >= 0) {
      std::size_t e = static_cast<std::size_t>(steps[pos].via_edge);
      if (e >= m.edges().size()) return false;
      if (m.edges()[e].source != m.location(loc).id) return false;
      auto guarded = intersect(region, ctx.edge_guard[e]);
      if (guarded.is_empty()) return false;
      auto updated = apply_update(guarded, m.edges()[e].update);
      loc = ctx.edge_target[e];
      auto entered = intersect(updated, ctx.locs[loc].inv);
      if (entered.is_empty()) return false;
      region = ctx.elapse(loc, entered, d);
      if (region.is_empty()) return false;
      if (!equals(eliminate(region, std::vector<std::string>{kIntervalClock}), steps[pos].region))
        return false;
      ++pos;
    }
    // end of interval: slice at clock = d and impose the sample
    auto at_d = clock_slice(ext, clock, d);
    std::vector<LinearConstraint> pin;
    for (std::size_t k = 0; k < w[interval].values.size(); ++k) {
      std::vector<Rational> c(ext->dim(), Rational(0));
      c[k] = Rational(1);
      pin.push_back(make_constraint(std::move(c), Rel::eq, w[interval].values[k]));
    }
    auto r = intersect(intersect(region, at_d), Polyhedron::from_constraints(ext, pin));
    if (r.is_empty()) return false;
    IntervalUpdate reset;
    reset.set(clock, Interval{Rational(0), Rational(0)});
    cur = {SymbolicState{loc, apply_update(r, reset)}};
    ++interval;
  }
  if (interval != result.index) return false;
  return m.location(m.location_index_or_throw(steps.back().location)).accepting;
}

} // namespace hamon
