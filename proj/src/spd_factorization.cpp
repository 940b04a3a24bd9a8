#include "contactmor/spd_factorization.hpp"

#include <algorithm>
#include <cmath>

#include "contactmor/kernels.hpp"

namespace contactmor {

SpdFactorization spd_factorize(const SparseSymMatrix& a) {
  if (!a.finalized()) throw Error("spd_factorize: matrix not finalized");
  SpdFactorization f;
  f.n_ = a.dim();
  f.bw_ = a.bandwidth();
  const int n = f.n_, bw = f.bw_, ld = bw + 1;
  f.band_.assign(std::size_t(n) * ld, 0.0);
  auto at = [&](int i, int j) -> double& {  // j in [i-bw, i]
    return f.band_[std::size_t(i) * ld + (j - i + bw)];
  };
  for (const Triplet& t : a.triplets()) at(t.col, t.row) += t.val;  // lower: (col, row)

  const double pivot_floor = 1e-10 * std::max(a.diag_max(), 1e-300);
  for (int i = 0; i < n; ++i) {
    const int j0 = std::max(0, i - bw);
    for (int j = j0; j <= i; ++j) {
      double s = at(i, j);
      const int k0 = std::max(j0, j - bw);
      for (int k = k0; k < j; ++k) s -= at(i, k) * at(j, k);
      if (j < i) {
        at(i, j) = s / at(j, j);
      } else {
        if (!(s > pivot_floor))
          throw NotPositiveDefinite("spd_factorize: pivot " + std::to_string(s) + " at row " +
                                    std::to_string(i));
        at(i, i) = std::sqrt(s);
      }
    }
  }
  return f;
}

Vector SpdFactorization::solve(const Vector& rhs) const {
  if (int(rhs.size()) != n_) throw DimensionMismatch("SpdFactorization::solve: size mismatch");
  Vector x = rhs;
  kernels::serial::band_solve_cols(n_, bw_, band_.data(), x.data(), 1);
  return x;
}

DenseMatrix SpdFactorization::solve_multi(const DenseMatrix& rhs) const {
  if (rhs.rows() != n_) throw DimensionMismatch("SpdFactorization::solve_multi: size mismatch");
  DenseMatrix x = rhs;
  kernels::band_solve_cols(n_, bw_, band_.data(), x.data(), x.cols());
  return x;
}

}  // namespace contactmor
