#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <random>

#include "contactmor/contact_system.hpp"
#include "contactmor/kernels.hpp"
#include "contactmor/mesh.hpp"
#include "contactmor/spd_factorization.hpp"
#include "oracles.hpp"

using namespace contactmor;

namespace {

// The parallel kernels split work across independent outputs only, so they
// must reproduce the serial reference bit for bit at any thread count.
bool bits_equal(const double* a, const double* b, std::size_t n) {
  return std::memcmp(a, b, n * sizeof(double)) == 0;
}

ContactSystem small_system() {
  MeshSpec spec;
  spec.nx = spec.ny = 12;
  MeshSpec::Tear tear;
  tear.orientation = 'v';
  tear.line = 0.5;
  tear.from = 0.5;
  tear.to = 1.0;
  spec.tears.push_back(tear);
  LoadSpec load;
  load.point = {1.0, 1.0};
  return assemble(build_mesh(spec), Material{}, load);
}

}  // namespace

TEST_CASE("spmv_csr: omp output equals serial bitwise") {
  const ContactSystem sys = small_system();
  std::mt19937 rng(1);
  const Vector x = oracles::random_vector(sys.n_free, rng);
  Vector ys(sys.n_free), yp(sys.n_free);
  const auto& rp = sys.K.row_ptr();
  const auto& ci = sys.K.col_idx();
  const auto& va = sys.K.values();
  for (int threads : {1, 2, 3, 7}) {
    kernels::set_threads(threads);
    kernels::serial::spmv_csr(sys.n_free, rp.data(), ci.data(), va.data(), x.data(), ys.data());
    kernels::omp::spmv_csr(sys.n_free, rp.data(), ci.data(), va.data(), x.data(), yp.data());
    CHECK(bits_equal(ys.data(), yp.data(), ys.size()));
  }
  kernels::set_threads(kernels::hardware_threads());
}

TEST_CASE("gemm kernels: omp output equals serial bitwise") {
  std::mt19937 rng(2);
  const int n = 257, p = 13, q = 9;
  DenseMatrix a(n, p), b(n, q), bb(p, q);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = oracles::random_vector(1, rng)[0];
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < n; ++i) b(i, j) = oracles::random_vector(1, rng)[0];
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < p; ++i) bb(i, j) = oracles::random_vector(1, rng)[0];

  DenseMatrix c1(p, q), c2(p, q);
  kernels::serial::gemm_tn(n, p, q, a.data(), b.data(), c1.data());
  kernels::omp::gemm_tn(n, p, q, a.data(), b.data(), c2.data());
  CHECK(bits_equal(c1.data(), c2.data(), std::size_t(p) * q));

  DenseMatrix d1(n, q), d2(n, q);
  kernels::serial::gemm_nn(n, p, q, a.data(), bb.data(), d1.data());
  kernels::omp::gemm_nn(n, p, q, a.data(), bb.data(), d2.data());
  CHECK(bits_equal(d1.data(), d2.data(), std::size_t(n) * q));
}

TEST_CASE("gemm_tn matches a naive triple loop") {
  std::mt19937 rng(3);
  const int n = 40, p = 6, q = 5;
  DenseMatrix a(n, p), b(n, q);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = oracles::random_vector(1, rng)[0];
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < n; ++i) b(i, j) = oracles::random_vector(1, rng)[0];
  const DenseMatrix c = matT_mul(a, b);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += a(k, i) * b(k, j);
      CHECK(c(i, j) == doctest::Approx(s).epsilon(1e-13));
    }
}

TEST_CASE("band_solve_cols: omp equals serial bitwise for many rhs") {
  const ContactSystem sys = small_system();
  const SpdFactorization f = spd_factorize(sys.K);
  std::mt19937 rng(4);
  DenseMatrix rhs(sys.n_free, 11);
  for (int j = 0; j < rhs.cols(); ++j)
    for (int i = 0; i < sys.n_free; ++i) rhs(i, j) = oracles::random_vector(1, rng)[0];

  kernels::set_threads(1);
  const DenseMatrix xs = f.solve_multi(rhs);
  kernels::set_threads(4);
  const DenseMatrix xp = f.solve_multi(rhs);
  kernels::set_threads(kernels::hardware_threads());
  CHECK(bits_equal(xs.data(), xp.data(), std::size_t(xs.rows()) * xs.cols()));
}
