#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "contactmor/kernels.hpp"
#include "contactmor/runner.hpp"

using namespace contactmor;

namespace {

// flags shared by run: override any scenario key from the command line
struct Overrides {
  int nr = -1;
  int nk = -1;
  double h = -1.0;
  double t_end = -1.0;
  std::string method;

  void apply(Scenario& sc) const {
    if (nr >= 0) sc.n_r = nr;
    if (nk >= 0) sc.n_k = nk;
    if (h > 0.0) sc.sim.h = h;
    if (t_end >= 0.0) sc.sim.t_end = t_end;
    if (!method.empty()) {
      if (method == "fom" || method == "none") sc.reduction = Scenario::Reduction::None;
      else if (method == "krylov") sc.reduction = Scenario::Reduction::Krylov;
      else if (method == "modal") sc.reduction = Scenario::Reduction::Modal;
      else if (method == "cb" || method == "craig_bampton")
        sc.reduction = Scenario::Reduction::CraigBampton;
      else throw ConfigError("unknown --method '" + method + "'");
    }
  }
};

void print_report(const RunResult& res) {
  std::printf("scenario hash   %s\n", res.scenario_hash.c_str());
  std::printf("dofs            raw %d, free %d, contact points %d\n", res.sys.n_raw,
              res.sys.n_free, res.sys.m());
  std::printf("offline         %.3f s\n", res.report.offline_seconds);
  std::printf("online          %.3f s\n", res.report.online_seconds);
  if (res.fom_baseline) {
    std::printf("baseline        %s\n", res.baseline_from_cache ? "cache" : "computed");
    if (!res.baseline_from_cache)
      std::printf("fom offline/online  %.3f / %.3f s\n", res.report.fom_offline_seconds,
                  res.report.fom_online_seconds);
    for (std::size_t s = 0; s < res.report.sensor_err_x.size(); ++s)
      std::printf("sensor %zu rel L2    x %.4e, y %.4e\n", s, res.report.sensor_err_x[s],
                  res.report.sensor_err_y[s]);
  }
  std::printf("max penetration %.3e\n", res.report.max_penetration);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamic contact simulation with LCP constraints and Krylov /"
               " Craig-Bampton model order reduction"};
  app.set_help_flag("--help", "print help");  // frees -h / --h for the time step
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "kernel threads (default: hardware)");

  // run
  auto* run = app.add_subcommand("run", "run a scenario file");
  std::string scenario_path, out_dir = "out", cache_dir;
  bool no_cache = false, export_basis = false;
  Overrides ovr;
  run->add_option("scenario", scenario_path, "scenario file")->required();
  run->add_option("-o,--out", out_dir, "output directory");
  run->add_option("--cache-dir", cache_dir, "FOM baseline cache directory");
  run->add_flag("--no-cache", no_cache, "ignore and do not write the baseline cache");
  run->add_flag("--export-basis", export_basis, "write basis.txt / Mhat.txt / Khat.txt");
  run->add_option("--nr", ovr.nr, "override reduction dimension");
  run->add_option("--nk", ovr.nk, "override Craig-Bampton slave mode count");
  run->add_option("--h,--dt", ovr.h, "override time step");
  run->add_option("--t-end", ovr.t_end, "override simulation end time");
  run->add_option("--method", ovr.method, "override solver: fom|krylov|modal|cb");

  // compare
  auto* cmp = app.add_subcommand("compare", "compare the trajectories of two run directories");
  std::string dir_a, dir_b, cmp_out;
  cmp->add_option("baseline", dir_a, "baseline run directory")->required();
  cmp->add_option("test", dir_b, "run directory to compare against the baseline")->required();
  cmp->add_option("-o,--out", cmp_out, "write report.csv here");

  // export-matrices
  auto* exm = app.add_subcommand("export-matrices", "write M.mtx, K.mtx, C.txt, b.txt, mesh.txt");
  std::string exm_scenario, exm_out = "matrices";
  exm->add_option("scenario", exm_scenario, "scenario file")->required();
  exm->add_option("-o,--out", exm_out, "output directory");

  // plot-data
  auto* plot = app.add_subcommand("plot-data", "overlay CSVs from a FOM and a ROM run directory");
  std::string plot_fom, plot_rom, plot_out = "plots";
  int plot_sensor = 0;
  plot->add_option("fom", plot_fom, "FOM run directory")->required();
  plot->add_option("rom", plot_rom, "ROM run directory")->required();
  plot->add_option("-o,--out", plot_out, "output directory");
  plot->add_option("--sensor", plot_sensor, "sensor index");

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) kernels::set_threads(threads);

  try {
    if (*run) {
      Scenario sc = parse_scenario_file(scenario_path);
      ovr.apply(sc);
      RunOptions opt;
      opt.out_dir = out_dir;
      opt.cache_dir = cache_dir;
      opt.use_cache = !no_cache;
      opt.export_basis = export_basis;
      const RunResult res = run_scenario(sc, opt);
      print_report(res);
      std::printf("outputs in %s\n", out_dir.c_str());
    } else if (*cmp) {
      const Trajectory a = read_trajectory_csv(dir_a + "/trajectory.csv");
      const Trajectory b = read_trajectory_csv(dir_b + "/trajectory.csv");
      const ComparisonReport rep = compare_trajectories(a, b);
      for (std::size_t s = 0; s < rep.sensor_err_x.size(); ++s)
        std::printf("sensor %zu rel L2    x %.4e, y %.4e\n", s, rep.sensor_err_x[s],
                    rep.sensor_err_y[s]);
      for (std::size_t j = 0; j < rep.lambda_err.size(); ++j)
        std::printf("lambda %zu rel L2   %.4e\n", j, rep.lambda_err[j]);
      std::printf("max penetration %.3e\n", rep.max_penetration);
      if (!cmp_out.empty()) {
        std::filesystem::create_directories(cmp_out);
        write_report_csv(rep, true, cmp_out + "/report.csv");
      }
    } else if (*exm) {
      export_matrices(parse_scenario_file(exm_scenario), exm_out);
      std::printf("matrices in %s\n", exm_out.c_str());
    } else if (*plot) {
      const Trajectory f = read_trajectory_csv(plot_fom + "/trajectory.csv");
      const Trajectory r = read_trajectory_csv(plot_rom + "/trajectory.csv");
      emit_plot_data(f, r, plot_sensor, plot_out);
      std::printf("plot data in %s\n", plot_out.c_str());
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
