#pragma once

#include "contactmor/dense_matrix.hpp"
#include "contactmor/vector_ops.hpp"

namespace contactmor {

/// Dense Cholesky for the small reduced-order matrices.
class DenseCholesky {
 public:
  DenseCholesky() = default;
  /// Throws NotPositiveDefinite on a non-positive pivot.
  explicit DenseCholesky(const DenseMatrix& a);

  int dim() const { return l_.rows(); }
  Vector solve(const Vector& rhs) const;
  DenseMatrix solve_multi(const DenseMatrix& rhs) const;
  /// x <- L^-1 x (forward substitution only).
  void forward(Vector& x) const;
  /// x <- L^-T x.
  void backward(Vector& x) const;
  const DenseMatrix& factor() const { return l_; }

 private:
  DenseMatrix l_;
};

/// Dense LU with partial pivoting (small systems: Newton Jacobians,
/// active-set subproblems). Throws SingularMatrix.
class DenseLu {
 public:
  explicit DenseLu(const DenseMatrix& a);
  Vector solve(const Vector& rhs) const;

 private:
  DenseMatrix lu_;
  std::vector<int> piv_;
};

struct SymEig {
  Vector eigenvalues;    // ascending
  DenseMatrix vectors;   // column k pairs with eigenvalues[k]
};

/// Cyclic Jacobi for dense symmetric matrices. Deterministic.
SymEig jacobi_eigensolve(const DenseMatrix& a, int max_sweeps = 64);

/// Generalized symmetric problem K y = lambda M y with M SPD, solved by
/// Cholesky reduction to standard form. Returned vectors are M-orthonormal.
SymEig generalized_eigensolve(const DenseMatrix& k, const DenseMatrix& m);

}  // namespace contactmor
