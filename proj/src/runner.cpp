#include "contactmor/runner.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace contactmor {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<int> resolve_sensors(const ContactSystem& sys, const Scenario& sc) {
  std::vector<int> nodes;
  for (const Scenario::Sensor& s : sc.sensors)
    nodes.push_back(sys.nearest_node(s.point[0], s.point[1], s.side));
  return nodes;
}

struct CacheHit {
  Trajectory traj;
};

std::optional<CacheHit> try_load_baseline(const std::string& dir, const std::string& hash,
                                          const std::vector<int>& sensor_nodes) {
  const fs::path meta_path = fs::path(dir) / "meta";
  const fs::path traj_path = fs::path(dir) / "trajectory.csv";
  if (!fs::exists(meta_path) || !fs::exists(traj_path)) return std::nullopt;
  json meta;
  try {
    std::ifstream f(meta_path);
    f >> meta;
  } catch (...) {
    return std::nullopt;
  }
  if (meta.value("scenario_hash", "") != hash) return std::nullopt;
  // the hash covers (mesh, material, load, sim); sensors are read-out only,
  // so a hit additionally requires the same sensor nodes
  if (meta.value("sensor_nodes", std::vector<int>{}) != sensor_nodes) return std::nullopt;
  CacheHit hit;
  hit.traj = read_trajectory_csv(traj_path.string());
  hit.traj.sensor_nodes = sensor_nodes;
  return hit;
}

void write_meta(const std::string& path, const Scenario& sc, const std::string& hash,
                const ContactSystem& sys, const std::vector<int>& sensor_nodes,
                const ComparisonReport& rep, const std::string& solver, bool from_cache) {
  json meta;
  meta["version"] = kVersion;
  meta["scenario"] = sc.name;
  meta["scenario_hash"] = hash;
  meta["solver"] = solver;
  meta["n_raw_dofs"] = sys.n_raw;
  meta["n_free_dofs"] = sys.n_free;
  meta["n_contact_points"] = sys.m();
  meta["sensor_nodes"] = sensor_nodes;
  meta["load_node"] = sys.load_node;
  meta["timings"] = {{"offline_seconds", rep.offline_seconds},
                     {"online_seconds", rep.online_seconds},
                     {"fom_offline_seconds", rep.fom_offline_seconds},
                     {"fom_online_seconds", rep.fom_online_seconds}};
  meta["baseline_from_cache"] = from_cache;
  std::ofstream f(path);
  if (!f) throw Error("cannot open " + path);
  f << meta.dump(2) << "\n";
}

}  // namespace

RunResult run_scenario(const Scenario& sc, const RunOptions& opt) {
  sc.material.validate();
  sc.sim.validate();

  RunResult res;
  res.scenario_hash = sc.baseline_hash();

  auto t_offline = std::chrono::steady_clock::now();
  const Mesh mesh = build_mesh(sc.mesh);
  res.sys = assemble(mesh, sc.material, sc.load);
  res.sensor_nodes = resolve_sensors(res.sys, sc);
  const ContactSystem& sys = res.sys;

  std::string solver_name = to_string(sc.reduction);

  if (sc.reduction == Scenario::Reduction::None) {
    DynamicOperator op(sys, sc.sim.h);
    res.report.offline_seconds = seconds_since(t_offline);
    auto t_online = std::chrono::steady_clock::now();
    res.traj = simulate(op, sc.sim, res.sensor_nodes);
    res.report.online_seconds = seconds_since(t_online);
    res.report.max_penetration = res.traj.max_penetration();
    solver_name = "fom";
  } else {
    // FOM baseline, cached when possible
    std::string cache_dir = opt.cache_dir;
    if (cache_dir.empty() && !opt.out_dir.empty())
      cache_dir = (fs::path(opt.out_dir).parent_path() / "fom-cache").string();
    const std::string entry =
        cache_dir.empty() ? "" : (fs::path(cache_dir) / ("fom-" + res.scenario_hash)).string();

    std::optional<CacheHit> hit;
    if (opt.use_cache && !entry.empty())
      hit = try_load_baseline(entry, res.scenario_hash, res.sensor_nodes);
    if (hit) {
      res.fom_baseline = std::move(hit->traj);
      res.baseline_from_cache = true;
    } else {
      auto t_fom = std::chrono::steady_clock::now();
      DynamicOperator op(sys, sc.sim.h);
      res.report.fom_offline_seconds = seconds_since(t_fom);
      t_fom = std::chrono::steady_clock::now();
      res.fom_baseline = simulate(op, sc.sim, res.sensor_nodes);
      res.report.fom_online_seconds = seconds_since(t_fom);
      if (opt.use_cache && !entry.empty()) {
        fs::create_directories(entry);
        write_trajectory_csv(*res.fom_baseline, (fs::path(entry) / "trajectory.csv").string());
        ComparisonReport fom_rep;
        fom_rep.offline_seconds = res.report.fom_offline_seconds;
        fom_rep.online_seconds = res.report.fom_online_seconds;
        fom_rep.max_penetration = res.fom_baseline->max_penetration();
        write_meta((fs::path(entry) / "meta").string(), sc, res.scenario_hash, sys,
                   res.sensor_nodes, fom_rep, "fom", false);
      }
    }

    // reduced run
    t_offline = std::chrono::steady_clock::now();
    ReductionBasis basis;
    switch (sc.reduction) {
      case Scenario::Reduction::Krylov:
        basis = krylov_basis(sys, sc.n_r, sc.shift_omega2);
        break;
      case Scenario::Reduction::Modal:
        basis = modal_basis(sys, sc.n_r);
        break;
      case Scenario::Reduction::CraigBampton:
        basis = craig_bampton_basis(sys, sc.n_k);
        break;
      case Scenario::Reduction::None:
        break;
    }
    ReducedSystem red = reduce(sys, basis);
    RomOperator op(red, sc.sim.h);
    res.report.offline_seconds = seconds_since(t_offline);

    auto t_online = std::chrono::steady_clock::now();
    res.traj = simulate_rom(op, sc.sim, res.sensor_nodes);
    res.report.online_seconds = seconds_since(t_online);

    const ComparisonReport cmp = compare_trajectories(*res.fom_baseline, res.traj);
    res.report.sensor_err_x = cmp.sensor_err_x;
    res.report.sensor_err_y = cmp.sensor_err_y;
    res.report.lambda_err = cmp.lambda_err;
    res.report.max_penetration = cmp.max_penetration;

    if (!opt.out_dir.empty() && opt.export_basis) {
      fs::create_directories(opt.out_dir);
      write_dense_text(basis.Q, (fs::path(opt.out_dir) / "basis.txt").string());
      write_dense_text(red.Mhat, (fs::path(opt.out_dir) / "Mhat.txt").string());
      write_dense_text(red.Khat, (fs::path(opt.out_dir) / "Khat.txt").string());
    }
  }

  if (!opt.out_dir.empty()) {
    fs::create_directories(opt.out_dir);
    write_trajectory_csv(res.traj, (fs::path(opt.out_dir) / "trajectory.csv").string());
    write_report_csv(res.report, res.fom_baseline.has_value(),
                     (fs::path(opt.out_dir) / "report.csv").string());
    if (res.fom_baseline) {
      const std::string plots = (fs::path(opt.out_dir) / "plots").string();
      for (int s = 0; s < int(res.sensor_nodes.size()); ++s)
        emit_plot_data(*res.fom_baseline, res.traj, s, plots);
    }
    write_meta((fs::path(opt.out_dir) / "meta").string(), sc, res.scenario_hash, sys,
               res.sensor_nodes, res.report, solver_name, res.baseline_from_cache);
  }
  return res;
}

void export_matrices(const Scenario& sc, const std::string& dir) {
  sc.material.validate();
  const Mesh mesh = build_mesh(sc.mesh);
  const ContactSystem sys = assemble(mesh, sc.material, sc.load);
  fs::create_directories(dir);
  sys.M.write_matrix_market((fs::path(dir) / "M.mtx").string());
  sys.K.write_matrix_market((fs::path(dir) / "K.mtx").string());
  write_mesh_text(mesh, (fs::path(dir) / "mesh.txt").string());

  std::FILE* f = std::fopen((fs::path(dir) / "C.txt").string().c_str(), "w");
  if (!f) throw Error("cannot write C.txt");
  std::fprintf(f, "%d %d\n", sys.m(), sys.n_free);
  for (const Triplet& t : sys.C.triplets()) std::fprintf(f, "%d %d %.17g\n", t.row, t.col, t.val);
  std::fclose(f);

  f = std::fopen((fs::path(dir) / "b.txt").string().c_str(), "w");
  if (!f) throw Error("cannot write b.txt");
  for (double v : sys.b) std::fprintf(f, "%.17g\n", v);
  std::fclose(f);
}

}  // namespace contactmor
