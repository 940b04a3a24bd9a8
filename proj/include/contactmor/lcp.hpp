#pragma once

#include "contactmor/dense_matrix.hpp"
#include "contactmor/vector_ops.hpp"

namespace contactmor {

/// Complementarity tolerance: a solution must satisfy
/// lambda >= -eps_c, w >= -eps_c and |lambda_i w_i| <= eps_c (1 + |B|_inf).
inline constexpr double kLcpTol = 1e-9;

/// Standard-form linear complementarity problem:
/// find lambda >= 0 with w = B + A lambda >= 0 and lambda^T w = 0.
struct LcpProblem {
  DenseMatrix A;  // m x m, positive semi-definite in this artifact
  Vector B;

  int m() const { return int(B.size()); }
};

enum class LcpStatus {
  Solved,
  RayTermination,   // secondary ray; numerical trouble for our PSD problems
  IterationLimit,
  StalledLineSearch,
  Infeasible,       // brute force found no admissible active set
};

struct LcpSolution {
  Vector lambda;
  Vector w;
  LcpStatus status = LcpStatus::Solved;
  int iterations = 0;
};

const char* to_string(LcpStatus s);

/// Lemke complementary pivoting with covering vector d = (1,...,1) and
/// lexicographic ratio-test tie-breaking (deterministic, cycle-free).
/// Gives up after 50*m pivots.
LcpSolution lemke_solve(const LcpProblem& p);

/// Componentwise Fischer-Burmeister residual phi(a, b) = sqrt(a^2+b^2)-a-b
/// with a = (B + A lambda)_i, b = lambda_i; zero exactly at solutions.
Vector fb_residual(const LcpProblem& p, const Vector& lambda);

/// Semismooth Newton on the FB residual with Armijo backtracking on the
/// merit 1/2 |phi|^2. At the kink (0,0) the subgradient limit along (1,1)
/// is used. Terminates when |phi|_inf <= kLcpTol. merit_trace, when given,
/// receives the merit value at every accepted iterate.
LcpSolution fb_newton_solve(const LcpProblem& p, const Vector& lambda0 = {},
                            std::vector<double>* merit_trace = nullptr);

/// Test oracle: enumerate all 2^m active sets in increasing bitmask order,
/// solve A_SS lambda_S = -B_S, and return the first admissible one.
/// Requires m <= 20.
LcpSolution brute_force_solve(const LcpProblem& p);

/// True when sol satisfies the LcpSolution tolerances against p.
bool complementarity_ok(const LcpProblem& p, const LcpSolution& sol, double tol = kLcpTol);

}  // namespace contactmor
