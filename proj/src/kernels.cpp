#include "contactmor/kernels.hpp"

#include <algorithm>
#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace contactmor::kernels {

namespace {

std::atomic<int> g_threads{0};  // 0 = not yet initialized

}  // namespace

int hardware_threads() {
#ifdef _OPENMP
  return std::max(1, omp_get_max_threads());
#else
  return 1;
#endif
}

int threads() {
  int t = g_threads.load(std::memory_order_relaxed);
  if (t == 0) {
    t = hardware_threads();
    g_threads.store(t, std::memory_order_relaxed);
  }
  return t;
}

void set_threads(int n) { g_threads.store(std::max(1, n), std::memory_order_relaxed); }

namespace serial {

void spmv_csr(int n, const int* row_ptr, const int* col_idx, const double* val,
              const double* x, double* y) {
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col_idx[k]];
    y[i] = s;
  }
}

void gemm_tn(int n, int p, int q, const double* a, const double* b, double* c) {
  for (int j = 0; j < q; ++j) {
    const double* bj = b + static_cast<std::size_t>(j) * n;
    double* cj = c + static_cast<std::size_t>(j) * p;
    for (int i = 0; i < p; ++i) {
      const double* ai = a + static_cast<std::size_t>(i) * n;
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += ai[k] * bj[k];
      cj[i] = s;
    }
  }
}

void gemm_nn(int n, int p, int q, const double* a, const double* b, double* c) {
  for (int j = 0; j < q; ++j) {
    const double* bj = b + static_cast<std::size_t>(j) * p;
    double* cj = c + static_cast<std::size_t>(j) * n;
    for (int i = 0; i < n; ++i) cj[i] = 0.0;
    for (int k = 0; k < p; ++k) {
      const double* ak = a + static_cast<std::size_t>(k) * n;
      const double bkj = bj[k];
      for (int i = 0; i < n; ++i) cj[i] += bkj * ak[i];
    }
  }
}

namespace {

inline void band_solve_one(int n, int bw, const double* l, double* x) {
  const int ld = bw + 1;
  // forward: L y = b
  for (int i = 0; i < n; ++i) {
    const int j0 = std::max(0, i - bw);
    const double* li = l + static_cast<std::size_t>(i) * ld;
    double s = x[i];
    for (int j = j0; j < i; ++j) s -= li[j - i + bw] * x[j];
    x[i] = s / li[bw];
  }
  // backward: L^T x = y
  for (int i = n - 1; i >= 0; --i) {
    const int k1 = std::min(n - 1, i + bw);
    double s = x[i];
    for (int k = i + 1; k <= k1; ++k)
      s -= l[static_cast<std::size_t>(k) * ld + (i - k + bw)] * x[k];
    x[i] = s / l[static_cast<std::size_t>(i) * ld + bw];
  }
}

}  // namespace

void band_solve_cols(int n, int bw, const double* l, double* x, int k) {
  for (int j = 0; j < k; ++j) band_solve_one(n, bw, l, x + static_cast<std::size_t>(j) * n);
}

}  // namespace serial

namespace omp {

void spmv_csr(int n, const int* row_ptr, const int* col_idx, const double* val,
              const double* x, double* y) {
#pragma omp parallel for schedule(static) num_threads(threads())
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col_idx[k]];
    y[i] = s;
  }
}

void gemm_tn(int n, int p, int q, const double* a, const double* b, double* c) {
#pragma omp parallel for schedule(static) num_threads(threads())
  for (int j = 0; j < q; ++j) {
    const double* bj = b + static_cast<std::size_t>(j) * n;
    double* cj = c + static_cast<std::size_t>(j) * p;
    for (int i = 0; i < p; ++i) {
      const double* ai = a + static_cast<std::size_t>(i) * n;
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += ai[k] * bj[k];
      cj[i] = s;
    }
  }
}

void gemm_nn(int n, int p, int q, const double* a, const double* b, double* c) {
#pragma omp parallel for schedule(static) num_threads(threads())
  for (int j = 0; j < q; ++j) {
    const double* bj = b + static_cast<std::size_t>(j) * p;
    double* cj = c + static_cast<std::size_t>(j) * n;
    for (int i = 0; i < n; ++i) cj[i] = 0.0;
    for (int k = 0; k < p; ++k) {
      const double* ak = a + static_cast<std::size_t>(k) * n;
      const double bkj = bj[k];
      for (int i = 0; i < n; ++i) cj[i] += bkj * ak[i];
    }
  }
}

void band_solve_cols(int n, int bw, const double* l, double* x, int k) {
#pragma omp parallel for schedule(static) num_threads(threads())
  for (int j = 0; j < k; ++j)
    serial::band_solve_cols(n, bw, l, x + static_cast<std::size_t>(j) * n, 1);
}

}  // namespace omp

void spmv_csr(int n, const int* row_ptr, const int* col_idx, const double* val,
              const double* x, double* y) {
  if (threads() > 1)
    omp::spmv_csr(n, row_ptr, col_idx, val, x, y);
  else
    serial::spmv_csr(n, row_ptr, col_idx, val, x, y);
}

void gemm_tn(int n, int p, int q, const double* a, const double* b, double* c) {
  if (threads() > 1)
    omp::gemm_tn(n, p, q, a, b, c);
  else
    serial::gemm_tn(n, p, q, a, b, c);
}

void gemm_nn(int n, int p, int q, const double* a, const double* b, double* c) {
  if (threads() > 1)
    omp::gemm_nn(n, p, q, a, b, c);
  else
    serial::gemm_nn(n, p, q, a, b, c);
}

void band_solve_cols(int n, int bw, const double* l, double* x, int k) {
  if (threads() > 1 && k > 1)
    omp::band_solve_cols(n, bw, l, x, k);
  else
    serial::band_solve_cols(n, bw, l, x, k);
}

}  // namespace contactmor::kernels
