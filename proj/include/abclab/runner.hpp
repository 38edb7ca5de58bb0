#pragma once

#include <cstddef>

#include "abclab/report.hpp"
#include "abclab/scenario.hpp"

namespace abclab {

struct RunOptions {
  /// Execute the sweep block (one row group per grid point) instead of the base point.
  bool use_sweep{false};
  /// 0: read ABCLAB_MAX_WORKERS, falling back to the hardware concurrency.
  std::size_t max_workers{0};
};

/// Worker count honouring the ABCLAB_MAX_WORKERS environment variable.
std::size_t worker_count(std::size_t requested = 0);

/// Runs the scenario's module pipeline. Rows and checks are ordered by sweep
/// index regardless of execution order; an error at one point is recorded in
/// `errors` and does not suppress the other points.
RunReport run_scenario(const scenario::Scenario& s, RunOptions opts = {});

/// JSON echo of a scenario (kind, units, constants, params, sweep).
Json scenario_echo(const scenario::Scenario& s);

}  // namespace abclab
