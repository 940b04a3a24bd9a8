#pragma once

#include <string>

#include "contactmor/time_integration.hpp"

namespace contactmor {

/// One row per recorded step: t, per-sensor ux/uy, per-contact-point lambda
/// and gap, energy. Values are printed with %.17g so a read-back reproduces
/// the doubles bit-exactly.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);
Trajectory read_trajectory_csv(const std::string& path);

struct ComparisonReport {
  std::vector<double> sensor_err_x;  // relative L2 vs the baseline, per sensor
  std::vector<double> sensor_err_y;
  std::vector<double> lambda_err;  // relative L2 per contact point
  double max_penetration = 0.0;    // max(0, -min gap) over the run
  // wall clock; kept out of report.csv so repeated runs stay bit-identical
  double offline_seconds = 0.0;
  double online_seconds = 0.0;
  double fom_offline_seconds = 0.0;
  double fom_online_seconds = 0.0;
};

/// Stacked relative L2 error over every sensor component; the scalar used
/// for convergence comparisons.
double combined_sensor_error(const Trajectory& fom, const Trajectory& rom);

ComparisonReport compare_trajectories(const Trajectory& fom, const Trajectory& rom);

/// metric,value rows; timings excluded by design.
void write_report_csv(const ComparisonReport& rep, bool with_errors, const std::string& path);

/// Per-figure overlay files for one sensor: sensor<i>_displacement.csv with
/// t, fom_ux, rom_ux, fom_uy, rom_uy, plus lambda_contact<j>.csv overlays for
/// every contact point. Throws on mismatched time axes or when the
/// trajectories carry no sensors.
void emit_plot_data(const Trajectory& fom, const Trajectory& rom, int sensor,
                    const std::string& dir);

}  // namespace contactmor
