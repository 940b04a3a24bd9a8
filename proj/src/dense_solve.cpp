#include "contactmor/dense_solve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace contactmor {

DenseCholesky::DenseCholesky(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("DenseCholesky: not square");
  const int n = a.rows();
  l_ = DenseMatrix(n, n);
  double diag_max = 0.0;
  for (int i = 0; i < n; ++i) diag_max = std::max(diag_max, std::abs(a(i, i)));
  const double floor = 1e-14 * std::max(diag_max, 1e-300);
  for (int j = 0; j < n; ++j) {
    for (int i = j; i < n; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= l_(i, k) * l_(j, k);
      if (i == j) {
        if (!(s > floor)) throw NotPositiveDefinite("DenseCholesky: pivot " + std::to_string(s));
        l_(j, j) = std::sqrt(s);
      } else {
        l_(i, j) = s / l_(j, j);
      }
    }
  }
}

void DenseCholesky::forward(Vector& x) const {
  const int n = l_.rows();
  for (int i = 0; i < n; ++i) {
    double s = x[i];
    for (int k = 0; k < i; ++k) s -= l_(i, k) * x[k];
    x[i] = s / l_(i, i);
  }
}

void DenseCholesky::backward(Vector& x) const {
  const int n = l_.rows();
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k < n; ++k) s -= l_(k, i) * x[k];
    x[i] = s / l_(i, i);
  }
}

Vector DenseCholesky::solve(const Vector& rhs) const {
  if (int(rhs.size()) != l_.rows()) throw DimensionMismatch("DenseCholesky::solve");
  Vector x = rhs;
  forward(x);
  backward(x);
  return x;
}

DenseMatrix DenseCholesky::solve_multi(const DenseMatrix& rhs) const {
  if (rhs.rows() != l_.rows()) throw DimensionMismatch("DenseCholesky::solve_multi");
  DenseMatrix x = rhs;
  for (int j = 0; j < x.cols(); ++j) {
    Vector c = x.col_vec(j);
    forward(c);
    backward(c);
    std::copy(c.begin(), c.end(), x.col(j));
  }
  return x;
}

DenseLu::DenseLu(const DenseMatrix& a) : lu_(a), piv_(a.rows()) {
  if (a.rows() != a.cols()) throw DimensionMismatch("DenseLu: not square");
  const int n = a.rows();
  std::iota(piv_.begin(), piv_.end(), 0);
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(lu_(k, k));
    for (int i = k + 1; i < n; ++i)
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        p = i;
      }
    if (best == 0.0) throw SingularMatrix("DenseLu: singular at column " + std::to_string(k));
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
      std::swap(piv_[k], piv_[p]);
    }
    for (int i = k + 1; i < n; ++i) {
      lu_(i, k) /= lu_(k, k);
      const double m = lu_(i, k);
      for (int j = k + 1; j < n; ++j) lu_(i, j) -= m * lu_(k, j);
    }
  }
}

Vector DenseLu::solve(const Vector& rhs) const {
  const int n = lu_.rows();
  if (int(rhs.size()) != n) throw DimensionMismatch("DenseLu::solve");
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = rhs[piv_[i]];
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < i; ++k) x[i] -= lu_(i, k) * x[k];
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k < n; ++k) x[i] -= lu_(i, k) * x[k];
    x[i] /= lu_(i, i);
  }
  return x;
}

SymEig jacobi_eigensolve(const DenseMatrix& a_in, int max_sweeps) {
  if (a_in.rows() != a_in.cols()) throw DimensionMismatch("jacobi_eigensolve: not square");
  const int n = a_in.rows();
  DenseMatrix a = a_in;
  DenseMatrix v = DenseMatrix::identity(n);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < j; ++i) off = std::max(off, std::abs(a(i, j)));
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(a(i, i)));
    if (off <= 1e-15 * std::max(scale, 1e-300)) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  SymEig e;
  e.eigenvalues.resize(n);
  for (int i = 0; i < n; ++i) e.eigenvalues[i] = a(i, i);
  // sort ascending, reorder vectors accordingly
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return e.eigenvalues[x] < e.eigenvalues[y]; });
  SymEig out;
  out.eigenvalues.resize(n);
  out.vectors = DenseMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = e.eigenvalues[order[k]];
    for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

SymEig generalized_eigensolve(const DenseMatrix& k, const DenseMatrix& m) {
  if (k.rows() != m.rows() || k.cols() != m.cols())
    throw DimensionMismatch("generalized_eigensolve: shape mismatch");
  DenseCholesky chol(m);  // M = L L^T
  const int n = k.rows();
  // S = L^-1 K L^-T
  DenseMatrix s(n, n);
  for (int j = 0; j < n; ++j) {
    Vector c = k.col_vec(j);
    chol.forward(c);
    std::copy(c.begin(), c.end(), s.col(j));
  }
  // now columns hold L^-1 K; apply forward to rows via transpose
  s = transpose(s);
  for (int j = 0; j < n; ++j) {
    Vector c = s.col_vec(j);
    chol.forward(c);
    std::copy(c.begin(), c.end(), s.col(j));
  }
  // symmetrize against roundoff
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      const double v = 0.5 * (s(i, j) + s(j, i));
      s(i, j) = s(j, i) = v;
    }
  SymEig std_eig = jacobi_eigensolve(s);
  // back-transform: y = L^-T u  (then Y^T M Y = I)
  for (int j = 0; j < n; ++j) {
    Vector c = std_eig.vectors.col_vec(j);
    chol.backward(c);
    std::copy(c.begin(), c.end(), std_eig.vectors.col(j));
  }
  return std_eig;
}

}  // namespace contactmor
