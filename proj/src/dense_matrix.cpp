#include "contactmor/dense_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "contactmor/kernels.hpp"

namespace contactmor {

Vector matvec(const DenseMatrix& a, const Vector& x) {
  if (int(x.size()) != a.cols()) throw DimensionMismatch("matvec: size mismatch");
  Vector y(a.rows(), 0.0);
  for (int j = 0; j < a.cols(); ++j) {
    const double* cj = a.col(j);
    const double xj = x[j];
    for (int i = 0; i < a.rows(); ++i) y[i] += cj[i] * xj;
  }
  return y;
}

Vector matTvec(const DenseMatrix& a, const Vector& x) {
  if (int(x.size()) != a.rows()) throw DimensionMismatch("matTvec: size mismatch");
  Vector y(a.cols());
  for (int j = 0; j < a.cols(); ++j) {
    const double* cj = a.col(j);
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += cj[i] * x[i];
    y[j] = s;
  }
  return y;
}

DenseMatrix matT_mul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("matT_mul: size mismatch");
  DenseMatrix c(a.cols(), b.cols());
  kernels::gemm_tn(a.rows(), a.cols(), b.cols(), a.data(), b.data(), c.data());
  return c;
}

DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("mat_mul: size mismatch");
  DenseMatrix c(a.rows(), b.cols());
  kernels::gemm_nn(a.rows(), a.cols(), b.cols(), a.data(), b.data(), c.data());
  return c;
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols(), a.rows());
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) t(j, i) = a(i, j);
  return t;
}

double max_abs(const DenseMatrix& a) {
  double m = 0.0;
  const double* p = a.data();
  const std::size_t n = std::size_t(a.rows()) * a.cols();
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::abs(p[k]));
  return m;
}

double max_asymmetry(const DenseMatrix& a) {
  double m = 0.0;
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < std::min(j, a.rows()); ++i)
      if (i < a.cols() && j < a.rows()) m = std::max(m, std::abs(a(i, j) - a(j, i)));
  return m;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("max_abs_diff: shape mismatch");
  double m = 0.0;
  const std::size_t n = std::size_t(a.rows()) * a.cols();
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

}  // namespace contactmor
