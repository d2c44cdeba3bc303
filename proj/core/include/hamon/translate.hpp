#pragma once

#include "hamon/lha.hpp"
#include "hamon/monitor.hpp"
#include "hamon/word.hpp"

#include <string>
#include <string_view>

namespace hamon {

extern const std::string kAbsClock; // "t_abs": absolute time since the word start
extern const std::string kRelClock; // "t_rel": time since the last sample

/// Word automaton: a chain wl0 .. wlm over the model variables plus the two
/// clocks. Location wli carries the invariant t_abs <= tau_{i+1}; the edge
/// into wl_{i+1} tests t_abs = tau_{i+1} and the sampled valuation, resets
/// t_rel, and is labeled "sample". Model-variable derivatives are free.
/// Requires a nonempty word and a model space without clock-name clashes.
Lha tqw2lha(const TimedQuantitativeWord& w, const VarSpacePtr& model_space);

/// Membership via reachability on product(m, tqw2lha(w)) over the whole
/// horizon: index i is accepted iff a state (accepting location, wli) is
/// reachable with t_rel = 0 (i.e. at the instant sample i was taken).
MonitorVerdict method1_verdict(const Lha& m, const TimedQuantitativeWord& w,
                               const MonitorConfig& cfg = {});

/// Model-component locations reachable anywhere in the product exploration,
/// with no t_rel condition. The naive reachability query this method
/// deliberately avoids; kept for regression checks.
std::vector<std::string> naive_reachable_locations(const Lha& m, const TimedQuantitativeWord& w,
                                                   const MonitorConfig& cfg = {});

/// Deterministic text export of the product automaton and the reachability
/// query, in the dialect documented in docs/export-dialect.md. Byte-stable
/// for fixed inputs.
std::string export_external(const Lha& m, const TimedQuantitativeWord& w);

/// Parses the export dialect back (used to validate the emission).
Lha parse_external(std::string_view text);

} // namespace hamon
