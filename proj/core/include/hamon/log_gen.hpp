#pragma once

#include "hamon/errors.hpp"
#include "hamon/lha.hpp"
#include "hamon/word.hpp"

#include <cstdint>
#include <optional>

namespace hamon {

struct LogGenOptions {
  /// Probability (numerator over 100) of firing each enabled edge at a
  /// dwell step.
  unsigned edge_fire_percent = 50;
  /// Magnitude cap for ray contributions when a flow set is unbounded.
  Rational ray_clamp{10};
  /// Timestamps and weights are drawn from grids with this denominator.
  long grid_denominator = 1000;
};

/// The simulation reached a state with no usable flow and no enabled edge
/// before the next sample was due; carries the samples emitted so far.
class SimulationStuck : public Error {
public:
  SimulationStuck(const std::string& what, TimedQuantitativeWord partial)
      : Error(what), partial_(std::move(partial)) {}
  const TimedQuantitativeWord& partial() const { return partial_; }

private:
  TimedQuantitativeWord partial_;
};

/// Simulates a concrete run of the model and samples it: the first sample
/// at time 0, then at intervals drawn uniformly from [lo, hi] on the grid.
/// Deterministic for a fixed seed. Every emitted sample lies on the
/// simulated trajectory, so generated logs are model-consistent.
TimedQuantitativeWord generate_log(const Lha& m, std::uint64_t seed, std::size_t length,
                                   const Rational& interval_lo, const Rational& interval_hi,
                                   const LogGenOptions& opts = {});

} // namespace hamon
