#include "contactmor/lcp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "contactmor/dense_solve.hpp"

namespace contactmor {

const char* to_string(LcpStatus s) {
  switch (s) {
    case LcpStatus::Solved: return "solved";
    case LcpStatus::RayTermination: return "ray_termination";
    case LcpStatus::IterationLimit: return "iteration_limit";
    case LcpStatus::StalledLineSearch: return "stalled_line_search";
    case LcpStatus::Infeasible: return "infeasible";
  }
  return "?";
}

namespace {

Vector residual_w(const LcpProblem& p, const Vector& lambda) {
  Vector w = p.B;
  for (int j = 0; j < p.m(); ++j) {
    const double lj = lambda[j];
    if (lj == 0.0) continue;
    const double* aj = p.A.col(j);
    for (int i = 0; i < p.m(); ++i) w[i] += aj[i] * lj;
  }
  return w;
}

}  // namespace

bool complementarity_ok(const LcpProblem& p, const LcpSolution& sol, double tol) {
  if (sol.status != LcpStatus::Solved) return false;
  const double scale = tol * (1.0 + norm_inf(p.B));
  for (int i = 0; i < p.m(); ++i) {
    if (sol.lambda[i] < -tol || sol.w[i] < -tol) return false;
    if (std::abs(sol.lambda[i] * sol.w[i]) > scale) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Lemke ----

namespace {

// Tableau columns: [w_0..w_m-1 | z_0..z_m-1 | z0 | q]. The w block starts as
// the identity and always holds the inverse of the current basis, which is
// what the lexicographic ratio test compares.
class LemkeTableau {
 public:
  explicit LemkeTableau(const LcpProblem& p) : m_(p.m()), t_(m_, 2 * m_ + 2), basis_(m_) {
    for (int i = 0; i < m_; ++i) {
      t_(i, i) = 1.0;
      for (int j = 0; j < m_; ++j) t_(i, m_ + j) = -p.A(i, j);
      t_(i, 2 * m_) = -1.0;  // covering vector d = ones
      t_(i, 2 * m_ + 1) = p.B[i];
      basis_[i] = i;
    }
  }

  int q_col() const { return 2 * m_ + 1; }
  int z0_col() const { return 2 * m_; }
  double q(int i) const { return t_(i, q_col()); }
  int basis(int i) const { return basis_[i]; }

  void pivot(int row, int col, int entering_var) {
    const double piv = t_(row, col);
    for (int j = 0; j < t_.cols(); ++j) t_(row, j) /= piv;
    t_(row, col) = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f == 0.0) continue;
      for (int j = 0; j < t_.cols(); ++j) t_(i, j) -= f * t_(row, j);
      t_(i, col) = 0.0;
    }
    basis_[row] = entering_var;
  }

  // Minimum-ratio row for the entering column; lexicographic tie-breaking
  // over the inverse-basis block, preferring the z0 row so the algorithm
  // can terminate. Returns -1 on ray termination.
  int ratio_row(int col, int z0_row) const {
    const double eps = 1e-11;
    double min_ratio = std::numeric_limits<double>::infinity();
    std::vector<int> cand;
    for (int i = 0; i < m_; ++i) {
      const double d = t_(i, col);
      if (d <= eps) continue;
      const double r = q(i) / d;
      if (r < min_ratio - 1e-9 * (1.0 + std::abs(min_ratio))) {
        min_ratio = r;
        cand.clear();
        cand.push_back(i);
      } else if (r <= min_ratio + 1e-9 * (1.0 + std::abs(min_ratio))) {
        min_ratio = std::min(min_ratio, r);
        cand.push_back(i);
      }
    }
    if (cand.empty()) return -1;
    if (cand.size() == 1) return cand[0];
    for (int i : cand)
      if (i == z0_row) return z0_row;
    for (int lex = 0; lex < m_ && cand.size() > 1; ++lex) {
      double best = std::numeric_limits<double>::infinity();
      std::vector<int> keep;
      for (int i : cand) {
        const double r = t_(i, lex) / t_(i, col);
        if (r < best - 1e-12 * (1.0 + std::abs(best))) {
          best = r;
          keep.clear();
          keep.push_back(i);
        } else if (r <= best + 1e-12 * (1.0 + std::abs(best))) {
          best = std::min(best, r);
          keep.push_back(i);
        }
      }
      cand.swap(keep);
    }
    return cand.front();
  }

 private:
  int m_;
  DenseMatrix t_;
  std::vector<int> basis_;
};

}  // namespace

LcpSolution lemke_solve(const LcpProblem& p) {
  const int m = p.m();
  if (m < 1) throw DimensionMismatch("lemke_solve: empty problem");
  if (p.A.rows() != m || p.A.cols() != m) throw DimensionMismatch("lemke_solve: A shape");

  LcpSolution sol;
  sol.lambda.assign(m, 0.0);

  // trivial case: B >= 0 needs no pivot
  int first = 0;
  for (int i = 1; i < m; ++i)
    if (p.B[i] < p.B[first]) first = i;
  if (p.B[first] >= 0.0) {
    sol.w = p.B;
    sol.status = LcpStatus::Solved;
    return sol;
  }

  LemkeTableau t(p);
  const int z0 = 2 * m;
  t.pivot(first, t.z0_col(), z0);
  const int z0_row = first;
  int entering = m + first;  // complement of the leaving w_first

  const int max_pivots = 50 * m;
  for (int it = 1; it <= max_pivots; ++it) {
    const int row = t.ratio_row(entering, z0_row);
    if (row < 0) {
      sol.status = LcpStatus::RayTermination;
      sol.iterations = it;
      sol.w = residual_w(p, sol.lambda);
      return sol;
    }
    const int leaving = t.basis(row);
    t.pivot(row, entering, entering);
    sol.iterations = it;
    if (leaving == z0) {
      // complementary basic solution: nonbasic variables are exactly zero,
      // which keeps every product lambda_i * w_i identically zero
      sol.w.assign(m, 0.0);
      for (int i = 0; i < m; ++i) {
        const int v = t.basis(i);
        if (v >= m && v < 2 * m)
          sol.lambda[v - m] = std::max(0.0, t.q(i));
        else if (v < m)
          sol.w[v] = std::max(0.0, t.q(i));
      }
      sol.status = LcpStatus::Solved;
      return sol;
    }
    entering = leaving < m ? leaving + m : leaving - m;
  }
  sol.status = LcpStatus::IterationLimit;
  sol.iterations = max_pivots;
  sol.w = residual_w(p, sol.lambda);
  return sol;
}

// ---------------------------------------- Fischer-Burmeister / Newton ----

Vector fb_residual(const LcpProblem& p, const Vector& lambda) {
  if (int(lambda.size()) != p.m()) throw DimensionMismatch("fb_residual: lambda size");
  const Vector w = residual_w(p, lambda);
  Vector phi(p.m());
  for (int i = 0; i < p.m(); ++i) {
    const double a = w[i], b = lambda[i];
    phi[i] = std::sqrt(a * a + b * b) - a - b;
  }
  return phi;
}

LcpSolution fb_newton_solve(const LcpProblem& p, const Vector& lambda0,
                            std::vector<double>* merit_trace) {
  const int m = p.m();
  LcpSolution sol;
  sol.lambda = lambda0.empty() ? Vector(m, 0.0) : lambda0;
  if (int(sol.lambda.size()) != m) throw DimensionMismatch("fb_newton_solve: lambda0 size");

  const int max_iter = 100;
  const double armijo_c = 1e-4;

  // the FB residual alone does not bound the complementarity products when
  // lambda and w are large, so convergence demands both
  auto converged = [&](const Vector& phi_now) {
    if (norm_inf(phi_now) > kLcpTol) return false;
    const Vector w = residual_w(p, sol.lambda);
    const double prod_tol = kLcpTol * (1.0 + norm_inf(p.B));
    for (int i = 0; i < m; ++i)
      if (std::abs(sol.lambda[i] * w[i]) > prod_tol) return false;
    return true;
  };

  Vector phi = fb_residual(p, sol.lambda);
  double merit = 0.5 * dot(phi, phi);
  if (merit_trace) merit_trace->push_back(merit);

  for (int it = 0; it < max_iter; ++it) {
    if (converged(phi)) {
      sol.iterations = it;
      sol.w = residual_w(p, sol.lambda);
      sol.status = LcpStatus::Solved;
      return sol;
    }
    // generalized Jacobian row i: da * A_i + db * e_i
    const Vector w = residual_w(p, sol.lambda);
    DenseMatrix jac(m, m);
    for (int i = 0; i < m; ++i) {
      const double a = w[i], b = sol.lambda[i];
      const double r = std::sqrt(a * a + b * b);
      double da, db;
      if (r > 0.0) {
        da = a / r - 1.0;
        db = b / r - 1.0;
      } else {
        // kink: limit along direction (1,1)
        da = db = 1.0 / std::sqrt(2.0) - 1.0;
      }
      for (int j = 0; j < m; ++j) jac(i, j) = da * p.A(i, j);
      jac(i, i) += db;
    }
    Vector step;
    try {
      Vector rhs(m);
      for (int i = 0; i < m; ++i) rhs[i] = -phi[i];
      step = DenseLu(jac).solve(rhs);
    } catch (const SingularMatrix&) {
      // Tikhonov fallback keeps the iteration alive on degenerate Jacobians
      for (int i = 0; i < m; ++i) jac(i, i) += 1e-10;
      Vector rhs(m);
      for (int i = 0; i < m; ++i) rhs[i] = -phi[i];
      step = DenseLu(jac).solve(rhs);
    }

    // Armijo backtracking on the merit function
    double t_step = 1.0;
    bool accepted = false;
    while (t_step >= 1e-12) {
      Vector trial = sol.lambda;
      axpy(t_step, step, trial);
      const Vector phi_t = fb_residual(p, trial);
      const double merit_t = 0.5 * dot(phi_t, phi_t);
      if (merit_t <= (1.0 - 2.0 * armijo_c * t_step) * merit) {
        sol.lambda = trial;
        phi = phi_t;
        merit = merit_t;
        if (merit_trace) merit_trace->push_back(merit);
        accepted = true;
        break;
      }
      t_step *= 0.5;
    }
    if (!accepted) {
      sol.iterations = it;
      sol.w = residual_w(p, sol.lambda);
      sol.status = converged(phi) ? LcpStatus::Solved : LcpStatus::StalledLineSearch;
      return sol;
    }
  }
  sol.iterations = max_iter;
  sol.w = residual_w(p, sol.lambda);
  sol.status = converged(phi) ? LcpStatus::Solved : LcpStatus::IterationLimit;
  return sol;
}

// ------------------------------------------------------- brute force ----

LcpSolution brute_force_solve(const LcpProblem& p) {
  const int m = p.m();
  if (m > 20) throw DimensionMismatch("brute_force_solve: m > 20");
  LcpSolution sol;
  sol.lambda.assign(m, 0.0);

  for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
    std::vector<int> active;
    for (int i = 0; i < m; ++i)
      if (mask & (1ul << i)) active.push_back(i);

    Vector lambda(m, 0.0);
    if (!active.empty()) {
      const int k = int(active.size());
      DenseMatrix ass(k, k);
      Vector rhs(k);
      for (int r = 0; r < k; ++r) {
        rhs[r] = -p.B[active[r]];
        for (int c = 0; c < k; ++c) ass(r, c) = p.A(active[r], active[c]);
      }
      Vector ls;
      try {
        ls = DenseLu(ass).solve(rhs);
      } catch (const SingularMatrix&) {
        continue;
      }
      for (int r = 0; r < k; ++r) lambda[active[r]] = ls[r];
    }

    Vector w = residual_w(p, lambda);
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      if (lambda[i] < -kLcpTol) ok = false;
      if (w[i] < -kLcpTol) ok = false;
    }
    if (ok) {
      // the active-set rows solve A_SS lambda_S = -B_S, so their slacks are
      // structurally zero; zeroing them keeps the products exact
      for (int i = 0; i < m; ++i)
        if (mask & (1ul << i)) w[i] = 0.0;
      sol.lambda = lambda;
      sol.w = std::move(w);
      sol.status = LcpStatus::Solved;
      sol.iterations = int(mask);
      return sol;
    }
  }
  sol.status = LcpStatus::Infeasible;
  sol.w = residual_w(p, sol.lambda);
  return sol;
}

}  // namespace contactmor
