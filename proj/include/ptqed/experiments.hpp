// Experiment drivers: one RunConfig in, one ResultTable out. The CLI wraps
// these with file output; callers embedding the library can use them
// directly.
#pragma once

#include <string>

#include "ptqed/config.hpp"
#include "ptqed/table.hpp"

namespace ptqed {

// Runs config.experiment and returns its table (rows plus any
// experiment-specific metadata; the CLI prepends tool/version/hash entries).
// `jobs` >= 1 is the sweep parallelism degree; row order never depends on it.
ResultTable run_experiment(const RunConfig& config, int jobs = 1);

// Self-contained matplotlib script that reads "<experiment>.csv" from its
// own directory and renders "<experiment>.png" next to it.
std::string plot_script(const RunConfig& config);

}  // namespace ptqed
