#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ldoskit/cli/config.hpp"
#include "ldoskit/cli/csv.hpp"
#include "ldoskit/cli/scenario.hpp"

namespace ldoskit::cli {

/// --threads if given, else LDOSKIT_THREADS, else 1. Throws on values < 1.
int resolve_threads(std::optional<int> flag);

struct Job {
  ScenarioConfig config;
  bool analytic = false;
  std::string path;  // CSV destination; empty keeps the table in memory only
};

struct JobResult {
  SpectrumTable table;
  double seconds = 0.0;
};

/// Runs independent jobs on up to `threads` workers. With fewer jobs than
/// threads the spare threads go to the field update of each run. Results are
/// in job order and each CSV is written atomically as soon as its job ends.
/// The first failure is rethrown after all workers stop.
std::vector<JobResult> run_jobs(const std::vector<Job>& jobs, int threads, const LogFn& log = {});

/// Copies of base with grid.delta set to each sweep.delta_nm (or base's own).
std::vector<ScenarioConfig> grid_variants(const ScenarioConfig& base);

/// Copies of base, one per (delta, z/a) pair, named <name>_z<z/a>_d<delta>.
std::vector<ScenarioConfig> height_variants(const ScenarioConfig& base);

/// Peak of one height-sweep spectrum.
struct HeightPoint {
  double z_over_a = 0.0;
  double delta_nm = 0.0;  // 0 for the point-emitter series
  std::string source;     // fdtd | analytic
  double peak_energy_ev = 0.0;
  double peak_purcell = 0.0;
  std::string scenario_hash;
  std::string flag;
};

/// Version line, then z_over_a,delta_nm,source,peak_energy_ev,peak_purcell,scenario_hash,flag.
std::string format_height_summary(const std::vector<HeightPoint>& points);

}  // namespace ldoskit::cli
