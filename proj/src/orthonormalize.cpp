#include "contactmor/orthonormalize.hpp"

#include <cmath>

namespace contactmor {

AppendResult orthonormalize_append(DenseMatrix& basis, const Vector& v, double deflate_tol) {
  if (basis.cols() > 0 && basis.rows() != int(v.size()))
    throw DimensionMismatch("orthonormalize_append: length mismatch");
  const double norm_in = norm2(v);
  if (!(norm_in > 0.0)) return AppendResult::Rejected;

  Vector w = v;
  const int n = int(v.size());
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < basis.cols(); ++j) {
      const double* qj = basis.col(j);
      double h = 0.0;
      for (int i = 0; i < n; ++i) h += qj[i] * w[i];
      for (int i = 0; i < n; ++i) w[i] -= h * qj[i];
    }
  }
  const double rem = norm2(w);
  if (rem < deflate_tol * norm_in) return AppendResult::Rejected;
  scale(w, 1.0 / rem);
  basis.append_col(w);
  return AppendResult::Appended;
}

}  // namespace contactmor
