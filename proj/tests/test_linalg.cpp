#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "contactmor/dense_solve.hpp"
#include "contactmor/orthonormalize.hpp"
#include "contactmor/spd_factorization.hpp"
#include "oracles.hpp"

using namespace contactmor;

TEST_CASE("spd_factorize: identity and diagonal") {
  SparseSymMatrix eye(3);
  for (int i = 0; i < 3; ++i) eye.add(i, i, 1.0);
  eye.finalize();
  const SpdFactorization f = spd_factorize(eye);
  const Vector e1 = {1.0, 0.0, 0.0};
  CHECK(f.solve(e1) == e1);

  SparseSymMatrix d(2);
  d.add(0, 0, 2.0);
  d.add(1, 1, 4.0);
  d.finalize();
  const Vector x = spd_factorize(d).solve({2.0, 4.0});
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("spd_factorize: random SPD residual within 1e-10") {
  std::mt19937 rng(7);
  const int n = 20;
  const DenseMatrix a = oracles::random_spd(n, rng, 1.0);  // A^T A + I
  SparseSymMatrix s(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) s.add(i, j, a(i, j));
  s.finalize();
  const SpdFactorization f = spd_factorize(s);
  for (int rep = 0; rep < 5; ++rep) {
    const Vector r = oracles::random_vector(n, rng);
    const Vector x = f.solve(r);
    const Vector ax = s.apply(x);
    CHECK(max_abs_diff(ax, r) <= 1e-10 * norm2(r));
  }
}

TEST_CASE("spd_factorize: solve is a left inverse on many random rhs") {
  std::mt19937 rng(21);
  for (int n : {1, 5, 13, 40}) {
    const DenseMatrix a = oracles::random_spd(n, rng, 0.5);
    SparseSymMatrix s(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        if (a(i, j) != 0.0) s.add(i, j, a(i, j));
    s.finalize();
    const SpdFactorization f = spd_factorize(s);
    const Vector x0 = oracles::random_vector(n, rng);
    const Vector x = f.solve(s.apply(x0));
    CHECK(max_abs_diff(x, x0) <= 1e-9 * (1.0 + norm2(x0)));
  }
}

TEST_CASE("spd_factorize rejects indefinite matrices") {
  SparseSymMatrix s(2);
  s.add(0, 0, 1.0);
  s.add(1, 1, -1.0);
  s.finalize();
  CHECK_THROWS_AS(spd_factorize(s), NotPositiveDefinite);

  // singular (rank deficient) must be rejected too
  SparseSymMatrix r(2);
  r.add(0, 0, 1.0);
  r.add(0, 1, 1.0);
  r.add(1, 1, 1.0);
  r.finalize();
  CHECK_THROWS_AS(spd_factorize(r), NotPositiveDefinite);
}

TEST_CASE("solve_multi matches column-wise solve bitwise") {
  std::mt19937 rng(3);
  const int n = 30;
  const DenseMatrix a = oracles::random_spd(n, rng, 1.0);
  SparseSymMatrix s(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) s.add(i, j, a(i, j));
  s.finalize();
  const SpdFactorization f = spd_factorize(s);
  DenseMatrix rhs(n, 7);
  for (int j = 0; j < 7; ++j)
    for (int i = 0; i < n; ++i) rhs(i, j) = double(i + 1) / (j + 1);
  const DenseMatrix multi = f.solve_multi(rhs);
  for (int j = 0; j < 7; ++j) {
    const Vector one = f.solve(rhs.col_vec(j));
    for (int i = 0; i < n; ++i) CHECK(multi(i, j) == one[i]);
  }
}

TEST_CASE("orthonormalize_append: basic cases and deflation") {
  DenseMatrix basis;
  CHECK(orthonormalize_append(basis, {3.0, 0.0, 0.0}) == AppendResult::Appended);
  CHECK(basis.cols() == 1);
  CHECK(basis(0, 0) == doctest::Approx(1.0));
  CHECK(basis(1, 0) == 0.0);
  CHECK(basis(2, 0) == 0.0);

  CHECK(orthonormalize_append(basis, {1.0, 1.0, 0.0}) == AppendResult::Appended);
  CHECK(basis.cols() == 2);
  CHECK(basis(0, 1) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(basis(1, 1) == doctest::Approx(1.0));
  CHECK(basis(2, 1) == 0.0);

  CHECK(orthonormalize_append(basis, {1e-15, 0.0, 0.0}) == AppendResult::Rejected);
  CHECK(basis.cols() == 2);
}

TEST_CASE("orthonormalize_append keeps Q^T Q close to the identity") {
  std::mt19937 rng(11);
  DenseMatrix basis;
  const int n = 60;
  int appended = 0;
  for (int k = 0; k < 25; ++k)
    if (orthonormalize_append(basis, oracles::random_vector(n, rng)) == AppendResult::Appended)
      ++appended;
  CHECK(appended == 25);
  const DenseMatrix gram = matT_mul(basis, basis);
  double worst = 0.0;
  for (int i = 0; i < gram.rows(); ++i)
    for (int j = 0; j < gram.cols(); ++j)
      worst = std::max(worst, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
  CHECK(worst <= 1e-10);
}

TEST_CASE("dense LU and Cholesky agree with the elimination oracle") {
  std::mt19937 rng(5);
  const DenseMatrix a = oracles::random_spd(9, rng, 0.3);
  const Vector rhs = oracles::random_vector(9, rng);
  const Vector ref = oracles::dense_gauss_solve(a, rhs);
  CHECK(max_abs_diff(DenseCholesky(a).solve(rhs), ref) <= 1e-9);
  CHECK(max_abs_diff(DenseLu(a).solve(rhs), ref) <= 1e-9);
}

TEST_CASE("jacobi eigensolver: 2x2 pencil by hand") {
  DenseMatrix k(2, 2);
  k(0, 0) = 2.0;
  k(0, 1) = k(1, 0) = -1.0;
  k(1, 1) = 2.0;
  const SymEig e = jacobi_eigensolve(k);
  CHECK(e.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));

  const SymEig g = generalized_eigensolve(k, DenseMatrix::identity(2));
  CHECK(g.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));
  // M-orthonormal = plain orthonormal for M = I
  const DenseMatrix gram = matT_mul(g.vectors, g.vectors);
  CHECK(gram(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gram(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("matrix market export round-trips through a text parse") {
  SparseSymMatrix s(3);
  s.add(0, 0, 2.0);
  s.add(0, 2, -0.5);
  s.add(1, 1, 1.25);
  s.add(2, 2, 3.0);
  s.finalize();
  const std::string path = "mm_test.mtx";
  s.write_matrix_market(path);
  std::FILE* f = std::fopen(path.c_str(), "r");
  REQUIRE(f != nullptr);
  char header[128];
  REQUIRE(std::fgets(header, sizeof header, f) != nullptr);
  CHECK(std::string(header).find("symmetric") != std::string::npos);
  int rows = 0, cols = 0, nnz = 0;
  REQUIRE(std::fscanf(f, "%d %d %d", &rows, &cols, &nnz) == 3);
  CHECK(rows == 3);
  CHECK(nnz == 4);
  double sum = 0.0;
  for (int k = 0; k < nnz; ++k) {
    int i, j;
    double v;
    REQUIRE(std::fscanf(f, "%d %d %lf", &i, &j, &v) == 3);
    CHECK(i >= j);  // lower triangle
    sum += v;
  }
  CHECK(sum == doctest::Approx(2.0 - 0.5 + 1.25 + 3.0));
  std::fclose(f);
  std::remove(path.c_str());
}
