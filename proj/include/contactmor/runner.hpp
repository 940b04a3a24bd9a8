#pragma once

#include <optional>
#include <string>

#include "contactmor/output.hpp"
#include "contactmor/reduction.hpp"
#include "contactmor/scenario.hpp"

namespace contactmor {

inline constexpr const char* kVersion = "contactmor 0.1.0";

struct RunOptions {
  std::string out_dir;       // empty: no files written
  std::string cache_dir;     // empty: "fom-cache" next to out_dir
  bool use_cache = true;     // reuse / populate the FOM baseline cache
  bool export_basis = false; // write basis.txt, Mhat.txt, Khat.txt
};

struct RunResult {
  ContactSystem sys;
  std::vector<int> sensor_nodes;
  Trajectory traj;                        // requested solver
  std::optional<Trajectory> fom_baseline; // present when a reduction ran
  bool baseline_from_cache = false;
  ComparisonReport report;
  std::string scenario_hash;
};

/// Run the scenario's solver; when a reduction is requested, also obtain the
/// FOM baseline (from the on-disk cache when the scenario hash matches,
/// otherwise by running it) and fill the comparison report. Writes
/// trajectory.csv, report.csv, plots/*.csv and meta under out_dir.
RunResult run_scenario(const Scenario& sc, const RunOptions& opt = {});

/// Matrix Market / text exports of the assembled system (M.mtx, K.mtx,
/// C.txt, b.txt, mesh.txt).
void export_matrices(const Scenario& sc, const std::string& dir);

}  // namespace contactmor
