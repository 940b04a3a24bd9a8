#pragma once

#include <cassert>
#include <vector>

#include "contactmor/errors.hpp"
#include "contactmor/vector_ops.hpp"

namespace contactmor {

/// Dense matrix with (i, j) element access. Stored column-major so that
/// appending basis columns and the projection products stay contiguous.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0.0) {}

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[std::size_t(j) * rows_ + i];
  }
  double operator()(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[std::size_t(j) * rows_ + i];
  }

  double* col(int j) { return a_.data() + std::size_t(j) * rows_; }
  const double* col(int j) const { return a_.data() + std::size_t(j) * rows_; }
  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

  void append_col(const Vector& v) {
    if (cols_ == 0 && rows_ == 0) rows_ = int(v.size());
    if (int(v.size()) != rows_) throw DimensionMismatch("append_col: length mismatch");
    a_.insert(a_.end(), v.begin(), v.end());
    ++cols_;
  }

  Vector col_vec(int j) const { return Vector(col(j), col(j) + rows_); }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

// ---- products (heavy ones dispatch to the kernel layer) ----

Vector matvec(const DenseMatrix& a, const Vector& x);
Vector matTvec(const DenseMatrix& a, const Vector& x);
/// A^T B
DenseMatrix matT_mul(const DenseMatrix& a, const DenseMatrix& b);
/// A B
DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix transpose(const DenseMatrix& a);

double max_abs(const DenseMatrix& a);
/// max |A - A^T|
double max_asymmetry(const DenseMatrix& a);
/// max |(A - B)_ij|
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace contactmor
