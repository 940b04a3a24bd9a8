#pragma once

#include <vector>

#include "contactmor/dense_matrix.hpp"
#include "contactmor/sparse_matrix.hpp"
#include "contactmor/vector_ops.hpp"

namespace contactmor {

/// Cholesky factorization of a symmetric positive definite matrix, stored in
/// banded form (the assembly orders degrees of freedom so FEM matrices stay
/// narrow-banded; a full matrix degrades to bandwidth dim-1 and still works).
/// Reusable for many right-hand sides; immutable after construction.
class SpdFactorization {
 public:
  SpdFactorization() = default;

  int dim() const { return n_; }
  int bandwidth() const { return bw_; }

  /// x with A x = rhs.
  Vector solve(const Vector& rhs) const;

  /// Column-wise solve for many right-hand sides (parallel across columns).
  DenseMatrix solve_multi(const DenseMatrix& rhs) const;

  friend SpdFactorization spd_factorize(const SparseSymMatrix& a);

 private:
  int n_ = 0, bw_ = 0;
  std::vector<double> band_;  // lower band, row-major, ld = bw_ + 1
};

/// Factor A = L L^T.
/// Throws NotPositiveDefinite when a pivot falls below 1e-10 * max|diag(A)|
/// (typically a modeling error: missing Dirichlet constraints leave
/// rigid-body modes in the stiffness matrix).
SpdFactorization spd_factorize(const SparseSymMatrix& a);

}  // namespace contactmor
