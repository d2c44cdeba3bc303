#pragma once

#include "hamon/lha.hpp"
#include "hamon/word.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hamon {

/// Name of the internal interval-elapsed-time clock. Not a legal model
/// variable name, so it can never collide with user models.
extern const std::string kIntervalClock;

/// Model space with the interval clock appended (model indices preserved).
VarSpacePtr extended_space(const VarSpacePtr& model_space);

/// (location, region) pair. Regions live over the extended space; the
/// clock coordinate holds the time elapsed since the current interval
/// started. Regions are nonempty and contained in the location invariant.
struct SymbolicState {
  std::size_t location;
  Polyhedron region;
};

struct MonitorConfig {
  /// Cap on discrete-successor computations per interval; 0 = 10 * |L|.
  /// Exceeding it flags the interval as saturated (partial exploration).
  std::size_t max_discrete_steps_per_interval = 0;
  bool merge_polyhedra = true;
  bool emit_witness = false;

  std::size_t effective_cap(const Lha& m) const {
    return max_discrete_steps_per_interval ? max_discrete_steps_per_interval
                                           : 10 * m.locations().size();
  }
};

enum class IndexVerdict { accepted, rejected, inconclusive };

std::string_view verdict_text(IndexVerdict v);

struct WitnessStep {
  std::string location;
  int via_edge; // index into edges(); -1 for an interval entry point
  Polyhedron region; // over the model space
};

struct IndexResult {
  std::size_t index; // 1-based
  Rational timestamp;
  IndexVerdict verdict;
  std::string diagnostic;
  std::optional<std::vector<WitnessStep>> witness;
};

struct MonitorVerdict {
  std::vector<IndexResult> indices;
  std::vector<std::size_t> saturated_intervals; // 1-based
  std::vector<std::size_t> accepted_set() const;
  bool any(IndexVerdict v) const;
};

// --- exploration engine -----------------------------------------------

struct ReachNode {
  std::size_t location;
  Polyhedron region; // post-elapse, over the extended space
  int pred;          // node index, -1 for an interval entry
  int via_edge;      // model edge index, -1 for an interval entry
  std::size_t start; // index into the start-state vector
};

struct ReachGraph {
  std::vector<ReachNode> nodes;
  bool saturated = false;
  std::size_t expansions = 0;
};

/// Worklist fixpoint over alternating continuous and discrete steps within
/// one observation interval: every stored region is post-elapse, kept
/// inside the location invariant and {0 <= clock <= budget}; a new region
/// included in a stored one at the same location is pruned.
ReachGraph explore(const Lha& m, const std::vector<SymbolicState>& start,
                   const Rational& budget, const MonitorConfig& cfg);

/// State_0 of the incremental procedure: one state per location with a
/// nonempty initial set, region = (Init and Inv) x {clock = 0}.
std::vector<SymbolicState> initial_states(const Lha& m);

struct BoundedReachResult {
  std::vector<SymbolicState> states; // clock reset to 0
  bool saturated = false;
};

/// Reachable states after exactly d time units: explore, slice the stored
/// regions at clock = d, reset the clock; per-location exact merging when
/// enabled.
BoundedReachResult bounded_reach(const Lha& m, const std::vector<SymbolicState>& start,
                                 const Rational& d, const MonitorConfig& cfg);

/// Keeps the part of each region compatible with the sample: intersects
/// with {x = sample} pointwise over the model variables, drops empties.
std::vector<SymbolicState> restrict_to_sample(const std::vector<SymbolicState>& states,
                                              const Sample& sample);

/// The incremental membership procedure: per index i, accepted iff some
/// restricted state sits at an accepting location. Saturation makes later
/// non-accepted indices inconclusive (never silently rejected); an empty
/// restriction without saturation rejects the remaining indices with a
/// log-inconsistency diagnostic.
MonitorVerdict run_monitor(const Lha& m, const TimedQuantitativeWord& w,
                           const MonitorConfig& cfg = {});

/// Forward re-verification of a recorded witness: replays the chain and
/// checks every step region is nonempty and consistent with its
/// predecessor. True iff the witness is replayable.
bool replay_witness(const Lha& m, const TimedQuantitativeWord& w, const IndexResult& result);

/// Projection of a symbolic state's region onto the model variables.
Polyhedron model_region(const SymbolicState& s, const VarSpacePtr& model_space);

} // namespace hamon
