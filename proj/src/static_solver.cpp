#include "contactmor/static_solver.hpp"

namespace contactmor {

StaticLcp static_lcp_assemble(const ContactSystem& sys, const SpdFactorization& k_fact,
                              double t) {
  StaticLcp s;
  s.k_inv_f = k_fact.solve(sys.load_vector(t));
  s.k_inv_ct = k_fact.solve_multi(sys.C.denseT());
  s.problem.A = sys.C.apply_dense(s.k_inv_ct);
  s.problem.B = sys.C.apply(s.k_inv_f);
  for (int i = 0; i < sys.m(); ++i) s.problem.B[i] += sys.b[i];
  return s;
}

StaticLcp static_lcp_assemble(const ContactSystem& sys, double t) {
  return static_lcp_assemble(sys, spd_factorize(sys.K), t);
}

StaticSolution static_solve(const ContactSystem& sys, double t) {
  const SpdFactorization k_fact = spd_factorize(sys.K);
  const StaticLcp s = static_lcp_assemble(sys, k_fact, t);

  if (sys.m() == 0) {
    StaticSolution out;
    out.q = s.k_inv_f;
    return out;
  }

  LcpSolution lcp = lemke_solve(s.problem);
  if (lcp.status != LcpStatus::Solved) lcp = fb_newton_solve(s.problem);
  if (lcp.status != LcpStatus::Solved)
    throw SolverError(std::string("static LCP failed: ") + to_string(lcp.status));

  StaticSolution out;
  out.lambda = lcp.lambda;
  out.q = s.k_inv_f;
  for (int j = 0; j < sys.m(); ++j) {
    const double lj = out.lambda[j];
    if (lj == 0.0) continue;
    const double* col = s.k_inv_ct.col(j);
    for (int i = 0; i < sys.n_free; ++i) out.q[i] += lj * col[i];
  }
  out.gap = sys.C.apply(out.q);
  for (int i = 0; i < sys.m(); ++i) out.gap[i] += sys.b[i];
  return out;
}

}  // namespace contactmor
