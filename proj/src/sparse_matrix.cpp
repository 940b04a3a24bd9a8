#include "contactmor/sparse_matrix.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>

#include "contactmor/kernels.hpp"

namespace contactmor {

void SparseSymMatrix::add(int i, int j, double v) {
  if (finalized_) throw Error("SparseSymMatrix: add after finalize");
  if (i < 0 || i >= dim_ || j < 0 || j >= dim_) throw DimensionMismatch("sparse add: out of range");
  if (i > j) std::swap(i, j);
  upper_.push_back({i, j, v});
}

void SparseSymMatrix::finalize() {
  if (finalized_) return;
  std::sort(upper_.begin(), upper_.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  // merge duplicates
  std::size_t w = 0;
  for (std::size_t r = 0; r < upper_.size(); ++r) {
    if (w > 0 && upper_[w - 1].row == upper_[r].row && upper_[w - 1].col == upper_[r].col) {
      upper_[w - 1].val += upper_[r].val;
    } else {
      upper_[w++] = upper_[r];
    }
  }
  upper_.resize(w);

  // full CSR (mirror the strict upper into the lower part)
  std::vector<int> count(dim_ + 1, 0);
  for (const Triplet& t : upper_) {
    ++count[t.row + 1];
    if (t.row != t.col) ++count[t.col + 1];
  }
  row_ptr_.assign(dim_ + 1, 0);
  for (int i = 0; i < dim_; ++i) row_ptr_[i + 1] = row_ptr_[i] + count[i + 1];
  col_idx_.assign(row_ptr_[dim_], 0);
  val_.assign(row_ptr_[dim_], 0.0);
  std::vector<int> next(row_ptr_.begin(), row_ptr_.end() - 1);
  for (const Triplet& t : upper_) {
    col_idx_[next[t.row]] = t.col;
    val_[next[t.row]++] = t.val;
    if (t.row != t.col) {
      col_idx_[next[t.col]] = t.row;
      val_[next[t.col]++] = t.val;
    }
  }
  finalized_ = true;
}

void SparseSymMatrix::apply(const Vector& x, Vector& y) const {
  if (!finalized_) throw Error("SparseSymMatrix: apply before finalize");
  if (int(x.size()) != dim_) throw DimensionMismatch("sparse apply: size mismatch");
  y.resize(dim_);
  kernels::spmv_csr(dim_, row_ptr_.data(), col_idx_.data(), val_.data(), x.data(), y.data());
}

Vector SparseSymMatrix::apply(const Vector& x) const {
  Vector y;
  apply(x, y);
  return y;
}

DenseMatrix SparseSymMatrix::apply_dense(const DenseMatrix& x) const {
  if (x.rows() != dim_) throw DimensionMismatch("sparse apply_dense: size mismatch");
  DenseMatrix y(dim_, x.cols());
  for (int j = 0; j < x.cols(); ++j)
    kernels::spmv_csr(dim_, row_ptr_.data(), col_idx_.data(), val_.data(), x.col(j), y.col(j));
  return y;
}

DenseMatrix SparseSymMatrix::to_dense() const {
  DenseMatrix d(dim_, dim_);
  for (const Triplet& t : upper_) {
    d(t.row, t.col) += t.val;
    if (t.row != t.col) d(t.col, t.row) += t.val;
  }
  return d;
}

double SparseSymMatrix::diag_max() const {
  double m = 0.0;
  for (const Triplet& t : upper_)
    if (t.row == t.col) m = std::max(m, std::abs(t.val));
  return m;
}

int SparseSymMatrix::bandwidth() const {
  int b = 0;
  for (const Triplet& t : upper_) b = std::max(b, t.col - t.row);
  return b;
}

void SparseSymMatrix::write_matrix_market(const std::string& path) const {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw Error("cannot open " + path);
  std::fprintf(f, "%%%%MatrixMarket matrix coordinate real symmetric\n");
  std::fprintf(f, "%d %d %zu\n", dim_, dim_, upper_.size());
  // symmetric MM stores the lower triangle: emit (col, row)
  for (const Triplet& t : upper_)
    std::fprintf(f, "%d %d %.17g\n", t.col + 1, t.row + 1, t.val);
  std::fclose(f);
}

SparseSymMatrix add_scaled(double alpha, const SparseSymMatrix& a, double beta,
                           const SparseSymMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("add_scaled: dim mismatch");
  SparseSymMatrix c(a.dim());
  for (const Triplet& t : a.triplets()) c.add(t.row, t.col, alpha * t.val);
  for (const Triplet& t : b.triplets()) c.add(t.row, t.col, beta * t.val);
  c.finalize();
  return c;
}

SparseSymMatrix submatrix_sym(const SparseSymMatrix& a, const std::vector<int>& sel) {
  std::vector<int> map(a.dim(), -1);
  for (std::size_t k = 0; k < sel.size(); ++k) map[sel[k]] = int(k);
  SparseSymMatrix s(int(sel.size()));
  for (const Triplet& t : a.triplets()) {
    const int i = map[t.row], j = map[t.col];
    if (i >= 0 && j >= 0) s.add(i, j, t.val);
  }
  s.finalize();
  return s;
}

DenseMatrix block_dense(const SparseSymMatrix& a, const std::vector<int>& row_sel,
                        const std::vector<int>& col_sel) {
  std::vector<int> rmap(a.dim(), -1), cmap(a.dim(), -1);
  for (std::size_t k = 0; k < row_sel.size(); ++k) rmap[row_sel[k]] = int(k);
  for (std::size_t k = 0; k < col_sel.size(); ++k) cmap[col_sel[k]] = int(k);
  DenseMatrix d(int(row_sel.size()), int(col_sel.size()));
  auto put = [&](int i, int j, double v) {
    if (rmap[i] >= 0 && cmap[j] >= 0) d(rmap[i], cmap[j]) += v;
  };
  for (const Triplet& t : a.triplets()) {
    put(t.row, t.col, t.val);
    if (t.row != t.col) put(t.col, t.row, t.val);
  }
  return d;
}

}  // namespace contactmor
