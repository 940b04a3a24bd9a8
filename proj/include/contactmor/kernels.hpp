#pragma once

#include <cstddef>

// Data-parallel inner kernels. Every kernel exists twice: a serial reference
// in kernels::serial and an OpenMP version in kernels::omp. The parallel
// versions split work only across independent output entries (rows of a
// sparse matvec, columns of a dense product), so both variants produce
// bit-identical results for any thread count. Tests assert exact equality;
// tools/bench_kernels compares their throughput.

namespace contactmor::kernels {

/// Number of threads used by the omp kernels (1 = serial dispatch).
int threads();
/// Set the thread count; n <= 1 forces the serial path everywhere.
void set_threads(int n);
/// Hardware default (omp_get_max_threads, or 1 without OpenMP).
int hardware_threads();

namespace serial {

/// y = A x for CSR A (n rows).
void spmv_csr(int n, const int* row_ptr, const int* col_idx, const double* val,
              const double* x, double* y);

/// C = A^T B with A (n x p), B (n x q), C (p x q); all column-major.
void gemm_tn(int n, int p, int q, const double* a, const double* b, double* c);

/// C = A B with A (n x p), B (p x q), C (n x q); all column-major.
void gemm_nn(int n, int p, int q, const double* a, const double* b, double* c);

/// X(:,j) <- L^-T L^-1 X(:,j) for k columns, banded Cholesky factor L
/// (lower band, bandwidth bw, row i stores slots [i-bw..i] at l[i*(bw+1)..]).
void band_solve_cols(int n, int bw, const double* l, double* x, int k);

}  // namespace serial

namespace omp {

void spmv_csr(int n, const int* row_ptr, const int* col_idx, const double* val,
              const double* x, double* y);
void gemm_tn(int n, int p, int q, const double* a, const double* b, double* c);
void gemm_nn(int n, int p, int q, const double* a, const double* b, double* c);
void band_solve_cols(int n, int bw, const double* l, double* x, int k);

}  // namespace omp

// Dispatch: omp variant when threads() > 1, serial otherwise.
void spmv_csr(int n, const int* row_ptr, const int* col_idx, const double* val,
              const double* x, double* y);
void gemm_tn(int n, int p, int q, const double* a, const double* b, double* c);
void gemm_nn(int n, int p, int q, const double* a, const double* b, double* c);
void band_solve_cols(int n, int bw, const double* l, double* x, int k);

}  // namespace contactmor::kernels
