#pragma once

#include <array>
#include <string>
#include <vector>

#include "contactmor/dense_matrix.hpp"
#include "contactmor/errors.hpp"
#include "contactmor/vector_ops.hpp"

namespace contactmor {

struct Triplet {
  int row, col;
  double val;
};

/// Symmetric sparse matrix. Assembly accumulates (row, col, value) triplets;
/// only the upper triangle is kept (entries are mirrored on insert).
/// finalize() merges duplicates and builds the full CSR pattern used by
/// matvec. Immutable afterwards.
class SparseSymMatrix {
 public:
  SparseSymMatrix() = default;
  explicit SparseSymMatrix(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  bool finalized() const { return finalized_; }

  void add(int i, int j, double v);
  void finalize();

  /// Canonical upper-triangle triplets (row <= col), sorted, no duplicates.
  const std::vector<Triplet>& triplets() const { return upper_; }
  int nnz_upper() const { return int(upper_.size()); }

  /// y = A x, treating the stored upper triangle as a full symmetric matrix.
  Vector apply(const Vector& x) const;
  void apply(const Vector& x, Vector& y) const;

  /// A X column by column.
  DenseMatrix apply_dense(const DenseMatrix& x) const;

  DenseMatrix to_dense() const;

  double diag_max() const;

  /// Largest |i - j| over stored entries.
  int bandwidth() const;

  /// Matrix Market coordinate format, symmetric (lower triangle, 1-based).
  void write_matrix_market(const std::string& path) const;

  // full CSR view (valid after finalize)
  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return val_; }

 private:
  int dim_ = 0;
  bool finalized_ = false;
  std::vector<Triplet> upper_;
  std::vector<int> row_ptr_, col_idx_;
  std::vector<double> val_;
};

/// alpha * A + beta * B (both finalized, same dimension).
SparseSymMatrix add_scaled(double alpha, const SparseSymMatrix& a, double beta,
                           const SparseSymMatrix& b);

/// Symmetric submatrix A(sel, sel); sel must be sorted ascending.
SparseSymMatrix submatrix_sym(const SparseSymMatrix& a, const std::vector<int>& sel);

/// Dense block A(row_sel, col_sel) of the full symmetric matrix.
DenseMatrix block_dense(const SparseSymMatrix& a, const std::vector<int>& row_sel,
                        const std::vector<int>& col_sel);

}  // namespace contactmor
