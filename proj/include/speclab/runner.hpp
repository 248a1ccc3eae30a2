#pragma once

// Batch experiment runner: binds parsed configs to the probe/maximal/
// hyperbolic machinery, writes report CSVs (plus per-experiment side
// artifacts and optional SVG charts), and aggregates exit status:
// 0 all checks pass, 2 any check fails, 1 error.

#include <iosfwd>
#include <string>
#include <vector>

#include "speclab/config.hpp"
#include "speclab/probe.hpp"

namespace speclab::runner {

struct RunOptions {
  std::string out_dir = "out";
  bool plot = false;
  bool slow = false;           // enables torus3 / zonal-sphere runs
  bool seed_override = false;
  std::uint64_t seed = 0;
};

// Fill unset fields from the id's defaults; throws config_error for unknown
// ids or parameter combinations outside module preconditions.
void fill_defaults(config::ExperimentConfig& cfg);

// Run one experiment to a list of reports (most ids yield one; smoothing_3_1
// adds the rescaled-denominator series). Side artifacts are written under
// opt.out_dir when non-empty.
std::vector<probe::ExperimentReport> run_experiment(const config::ExperimentConfig& cfg,
                                                    const RunOptions& opt, std::ostream& log);

// Run every section, write <out_dir>/report.csv and summaries to log.
int run_experiments(std::vector<config::ExperimentConfig> cfgs, const RunOptions& opt,
                    std::ostream& log);

}  // namespace speclab::runner
