#pragma once

#include "contactmor/contact_system.hpp"
#include "contactmor/lcp.hpp"
#include "contactmor/spd_factorization.hpp"

namespace contactmor {

/// Static LCP A = C K^-1 C^T, B = C K^-1 f + b, plus the cached solves
/// needed to recover displacements afterwards.
struct StaticLcp {
  LcpProblem problem;
  Vector k_inv_f;        // K^-1 f
  DenseMatrix k_inv_ct;  // K^-1 C^T, one column per constraint
};

StaticLcp static_lcp_assemble(const ContactSystem& sys, const SpdFactorization& k_fact,
                              double t = 0.0);
StaticLcp static_lcp_assemble(const ContactSystem& sys, double t = 0.0);

struct StaticSolution {
  Vector q;
  Vector lambda;
  Vector gap;  // C q + b
};

/// lambda from Lemke on the static LCP, then q = K^-1 (f + C^T lambda).
/// Falls back to FB-Newton when Lemke reports trouble; throws SolverError
/// when both fail.
StaticSolution static_solve(const ContactSystem& sys, double t = 0.0);

}  // namespace contactmor
