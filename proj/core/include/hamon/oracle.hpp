#pragma once

#include "hamon/lha.hpp"
#include "hamon/word.hpp"

namespace hamon {

/// Discretization of the trajectory search: switch instants on a rational
/// grid over each interval, segment rates on per-dimension grids over the
/// (box-shaped) flow sets, update values on grids over update intervals.
struct OracleGrid {
  std::size_t time_divisions = 10;
  std::size_t rate_divisions = 10;
  std::size_t update_divisions = 2;
  std::size_t max_switches = 2;
};

/// One-sided membership oracle: enumerates piecewise-constant-flow runs on
/// the grid. The final segment's rate is solved exactly from the sample, so
/// trajectories with off-grid rates are still found whenever every earlier
/// segment is on the grid. True at index i means a concrete witness run
/// exists (so an exact monitor must accept); false is not conclusive.
///
/// Requires every flow set to be a bounded box (per-variable interval
/// rates); throws DomainError otherwise.
std::vector<bool> brute_force_membership(const Lha& m, const TimedQuantitativeWord& w,
                                         const OracleGrid& grid = {});

} // namespace hamon
