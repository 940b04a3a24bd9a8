#include "contactmor/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace contactmor {

namespace {

void put_num(std::FILE* f, double v, bool last) {
  std::fprintf(f, "%.17g%c", v, last ? '\n' : ',');
}

}  // namespace

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw Error("cannot open " + path);
  std::fprintf(f, "t");
  for (int s = 0; s < traj.n_sensors(); ++s) std::fprintf(f, ",s%d_ux,s%d_uy", s, s);
  const int m = traj.lambda_series.empty() ? 0 : int(traj.lambda_series[0].size());
  for (int j = 0; j < m; ++j) std::fprintf(f, ",lambda%d", j);
  for (int j = 0; j < m; ++j) std::fprintf(f, ",gap%d", j);
  std::fprintf(f, ",energy\n");
  for (int k = 0; k < traj.steps(); ++k) {
    put_num(f, traj.times[k], false);
    for (int s = 0; s < traj.n_sensors(); ++s) {
      put_num(f, traj.sensor_disp[s][0][k], false);
      put_num(f, traj.sensor_disp[s][1][k], false);
    }
    for (int j = 0; j < m; ++j) put_num(f, traj.lambda_series[k][j], false);
    for (int j = 0; j < m; ++j) put_num(f, traj.gap_series[k][j], false);
    put_num(f, traj.energy[k], true);
  }
  std::fclose(f);
}

Trajectory read_trajectory_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  std::string header;
  if (!std::getline(f, header)) throw Error(path + ": empty trajectory file");

  int n_sensors = 0, m = 0;
  {
    std::istringstream hs(header);
    std::string tok;
    while (std::getline(hs, tok, ',')) {
      if (tok.rfind("s", 0) == 0 && tok.find("_ux") != std::string::npos) ++n_sensors;
      if (tok.rfind("lambda", 0) == 0) ++m;
    }
  }
  Trajectory traj;
  traj.sensor_nodes.assign(n_sensors, -1);  // node ids live in the run meta
  traj.sensor_disp.resize(n_sensors);

  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    const std::size_t expect = 1 + 2 * n_sensors + 2 * m + 1;
    if (row.size() != expect) throw Error(path + ": malformed row");
    std::size_t c = 0;
    traj.times.push_back(row[c++]);
    for (int s = 0; s < n_sensors; ++s) {
      traj.sensor_disp[s][0].push_back(row[c++]);
      traj.sensor_disp[s][1].push_back(row[c++]);
    }
    Vector lam(m), gap(m);
    for (int j = 0; j < m; ++j) lam[j] = row[c++];
    for (int j = 0; j < m; ++j) gap[j] = row[c++];
    traj.lambda_series.push_back(std::move(lam));
    traj.gap_series.push_back(std::move(gap));
    traj.energy.push_back(row[c++]);
  }
  return traj;
}

namespace {

double rel_l2(const std::vector<double>& ref, const std::vector<double>& test) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < ref.size(); ++k) {
    num += (test[k] - ref[k]) * (test[k] - ref[k]);
    den += ref[k] * ref[k];
  }
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

void check_axes(const Trajectory& fom, const Trajectory& rom) {
  if (fom.steps() != rom.steps()) throw DimensionMismatch("trajectories: step counts differ");
  for (int k = 0; k < fom.steps(); ++k)
    if (std::abs(fom.times[k] - rom.times[k]) > 1e-12 * (1.0 + std::abs(fom.times[k])))
      throw DimensionMismatch("trajectories: time axes differ");
}

}  // namespace

double combined_sensor_error(const Trajectory& fom, const Trajectory& rom) {
  check_axes(fom, rom);
  if (fom.n_sensors() != rom.n_sensors()) throw DimensionMismatch("sensor counts differ");
  double num = 0.0, den = 0.0;
  for (int s = 0; s < fom.n_sensors(); ++s)
    for (int axis = 0; axis < 2; ++axis)
      for (int k = 0; k < fom.steps(); ++k) {
        const double r = fom.sensor_disp[s][axis][k];
        const double d = rom.sensor_disp[s][axis][k] - r;
        num += d * d;
        den += r * r;
      }
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

ComparisonReport compare_trajectories(const Trajectory& fom, const Trajectory& rom) {
  check_axes(fom, rom);
  if (fom.n_sensors() != rom.n_sensors()) throw DimensionMismatch("sensor counts differ");
  ComparisonReport rep;
  for (int s = 0; s < fom.n_sensors(); ++s) {
    rep.sensor_err_x.push_back(rel_l2(fom.sensor_disp[s][0], rom.sensor_disp[s][0]));
    rep.sensor_err_y.push_back(rel_l2(fom.sensor_disp[s][1], rom.sensor_disp[s][1]));
  }
  const int m = fom.lambda_series.empty() ? 0 : int(fom.lambda_series[0].size());
  for (int j = 0; j < m; ++j) {
    std::vector<double> lf(fom.steps()), lr(fom.steps());
    for (int k = 0; k < fom.steps(); ++k) {
      lf[k] = fom.lambda_series[k][j];
      lr[k] = rom.lambda_series[k][j];
    }
    rep.lambda_err.push_back(rel_l2(lf, lr));
  }
  rep.max_penetration = std::max(fom.max_penetration(), rom.max_penetration());
  return rep;
}

void write_report_csv(const ComparisonReport& rep, bool with_errors, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw Error("cannot open " + path);
  std::fprintf(f, "metric,value\n");
  if (with_errors) {
    for (std::size_t s = 0; s < rep.sensor_err_x.size(); ++s) {
      std::fprintf(f, "sensor%zu_rel_l2_x,%.17g\n", s, rep.sensor_err_x[s]);
      std::fprintf(f, "sensor%zu_rel_l2_y,%.17g\n", s, rep.sensor_err_y[s]);
    }
    for (std::size_t j = 0; j < rep.lambda_err.size(); ++j)
      std::fprintf(f, "lambda%zu_rel_l2,%.17g\n", j, rep.lambda_err[j]);
  }
  std::fprintf(f, "max_penetration,%.17g\n", rep.max_penetration);
  std::fclose(f);
}

void emit_plot_data(const Trajectory& fom, const Trajectory& rom, int sensor,
                    const std::string& dir) {
  check_axes(fom, rom);
  if (fom.n_sensors() == 0 || rom.n_sensors() == 0)
    throw ConfigError("plot-data: trajectories carry no sensors");
  if (sensor < 0 || sensor >= fom.n_sensors() || sensor >= rom.n_sensors())
    throw ConfigError("plot-data: sensor index out of range");
  std::filesystem::create_directories(dir);

  {
    const std::string path = dir + "/sensor" + std::to_string(sensor) + "_displacement.csv";
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw Error("cannot open " + path);
    std::fprintf(f, "t,fom_ux,rom_ux,fom_uy,rom_uy\n");
    for (int k = 0; k < fom.steps(); ++k) {
      put_num(f, fom.times[k], false);
      put_num(f, fom.sensor_disp[sensor][0][k], false);
      put_num(f, rom.sensor_disp[sensor][0][k], false);
      put_num(f, fom.sensor_disp[sensor][1][k], false);
      put_num(f, rom.sensor_disp[sensor][1][k], true);
    }
    std::fclose(f);
  }

  const int m = fom.lambda_series.empty() ? 0 : int(fom.lambda_series[0].size());
  for (int j = 0; j < m; ++j) {
    const std::string path = dir + "/lambda_contact" + std::to_string(j) + ".csv";
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw Error("cannot open " + path);
    std::fprintf(f, "t,fom_lambda,rom_lambda\n");
    for (int k = 0; k < fom.steps(); ++k) {
      put_num(f, fom.times[k], false);
      put_num(f, fom.lambda_series[k][j], false);
      put_num(f, rom.lambda_series[k][j], true);
    }
    std::fclose(f);
  }
}

}  // namespace contactmor
