// Throughput comparison of the serial reference kernels against the OpenMP
// variants on FEM-shaped workloads. Run with no arguments for the default
// size sweep; pass a thread count to pin it.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "contactmor/contact_system.hpp"
#include "contactmor/kernels.hpp"
#include "contactmor/mesh.hpp"
#include "contactmor/spd_factorization.hpp"

using namespace contactmor;

namespace {

double now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now();
    fn();
    best = std::min(best, now() - t0);
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int threads = argc > 1 ? std::atoi(argv[1]) : kernels::hardware_threads();
  kernels::set_threads(threads);
  std::printf("kernel benchmark: serial reference vs OpenMP (%d threads)\n\n", threads);

  std::mt19937 rng(42);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  for (int nx : {20, 40, 80}) {
    MeshSpec spec;
    spec.nx = spec.ny = nx;
    MeshSpec::Tear tear;
    tear.orientation = 'v';
    tear.line = 0.5;
    tear.from = 0.5;
    tear.to = 1.0 - 1.0 / nx;
    spec.tears.push_back(tear);
    const Mesh mesh = build_mesh(spec);
    LoadSpec load;
    load.point = {1.0, 1.0};
    const ContactSystem sys = assemble(mesh, Material{}, load);
    const int n = sys.n_free;

    Vector x(n), y(n), y2(n);
    for (double& v : x) v = uni(rng);
    const auto& rp = sys.K.row_ptr();
    const auto& ci = sys.K.col_idx();
    const auto& va = sys.K.values();

    const int spmv_reps = 200;
    const double ts = time_best_of(5, [&] {
      for (int r = 0; r < spmv_reps; ++r)
        kernels::serial::spmv_csr(n, rp.data(), ci.data(), va.data(), x.data(), y.data());
    });
    const double tp = time_best_of(5, [&] {
      for (int r = 0; r < spmv_reps; ++r)
        kernels::omp::spmv_csr(n, rp.data(), ci.data(), va.data(), x.data(), y2.data());
    });
    std::printf("spmv            n=%6d   serial %8.3f ms   omp %8.3f ms   speedup %.2fx\n", n,
                1e3 * ts / spmv_reps, 1e3 * tp / spmv_reps, ts / tp);

    // multi-RHS banded solve, one column per constraint
    const SpdFactorization fact = spd_factorize(sys.K);
    DenseMatrix rhs(n, 32);
    for (int j = 0; j < rhs.cols(); ++j)
      for (int i = 0; i < n; ++i) rhs(i, j) = uni(rng);
    Vector col_sol;
    const double bs_serial = time_best_of(5, [&] {
      for (int j = 0; j < rhs.cols(); ++j) col_sol = fact.solve(rhs.col_vec(j));
    });
    DenseMatrix sol;
    const double bs_par = time_best_of(5, [&] { sol = fact.solve_multi(rhs); });
    std::printf("band solve x32  n=%6d   serial %8.3f ms   omp %8.3f ms   speedup %.2fx\n", n,
                1e3 * bs_serial, 1e3 * bs_par, bs_serial / bs_par);

    // projection product Q^T (M Q)
    const int nr = 32;
    DenseMatrix q(n, nr);
    for (int j = 0; j < nr; ++j)
      for (int i = 0; i < n; ++i) q(i, j) = uni(rng);
    DenseMatrix mq = sys.M.apply_dense(q);
    DenseMatrix out1(nr, nr), out2(nr, nr);
    const double gs = time_best_of(5, [&] {
      kernels::serial::gemm_tn(n, nr, nr, q.data(), mq.data(), out1.data());
    });
    const double gp = time_best_of(5, [&] {
      kernels::omp::gemm_tn(n, nr, nr, q.data(), mq.data(), out2.data());
    });
    std::printf("gemm_tn 32x32   n=%6d   serial %8.3f ms   omp %8.3f ms   speedup %.2fx\n\n", n,
                1e3 * gs, 1e3 * gp, gs / gp);
  }
  return 0;
}
