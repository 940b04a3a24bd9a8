#include "contactmor/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "contactmor/orthonormalize.hpp"

namespace contactmor {

// ------------------------------------------------------------- Krylov ----

ReductionBasis krylov_basis(const ContactSystem& sys, int n_r, const SpdFactorization& k_fact) {
  if (n_r < 1 || n_r > sys.n_free) throw ConfigError("krylov_basis: n_r out of range");
  const Vector& seed = sys.load_seed();
  if (norm_inf(seed) == 0.0) throw ZeroSeed("krylov_basis: load pattern is zero");

  ReductionBasis basis;
  basis.kind = BasisKind::Krylov;
  Vector v = k_fact.solve(seed);
  if (orthonormalize_append(basis.Q, v) == AppendResult::Rejected)
    throw ZeroSeed("krylov_basis: K^-1 f0 vanishes");
  while (basis.Q.cols() < n_r) {
    v = k_fact.solve(sys.M.apply(basis.Q.col_vec(basis.Q.cols() - 1)));
    if (orthonormalize_append(basis.Q, v) == AppendResult::Rejected) break;  // Krylov breakdown
  }
  return basis;
}

ReductionBasis krylov_basis(const ContactSystem& sys, int n_r, double shift_omega2) {
  if (shift_omega2 == 0.0) return krylov_basis(sys, n_r, spd_factorize(sys.K));
  const SparseSymMatrix k_shifted = add_scaled(1.0, sys.K, -shift_omega2, sys.M);
  return krylov_basis(sys, n_r, spd_factorize(k_shifted));
}

// -------------------------------------------------------------- modal ----

ReductionBasis modal_basis(const ContactSystem& sys, int n_r) {
  const int n = sys.n_free;
  if (n_r < 1 || n_r > n) throw ConfigError("modal_basis: n_r out of range");
  const SpdFactorization k_fact = spd_factorize(sys.K);

  const int p = std::min(n, std::max(2 * n_r, n_r + 8));
  DenseMatrix x(n, p);
  std::mt19937 rng(0x9e3779b9u);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i) x(i, j) = uni(rng);

  const int max_iter = 500;
  Vector prev_ev(n_r, std::numeric_limits<double>::infinity());
  for (int iter = 0; iter < max_iter; ++iter) {
    const DenseMatrix mx = sys.M.apply_dense(x);
    const DenseMatrix xb = k_fact.solve_multi(mx);  // K xb = M x
    // projected pencil: Kr = xb^T K xb = xb^T M x, Mr = xb^T M xb
    DenseMatrix kr = matT_mul(xb, mx);
    DenseMatrix mr = matT_mul(xb, sys.M.apply_dense(xb));
    for (int j = 0; j < p; ++j)
      for (int i = 0; i < j; ++i) {
        kr(i, j) = kr(j, i) = 0.5 * (kr(i, j) + kr(j, i));
        mr(i, j) = mr(j, i) = 0.5 * (mr(i, j) + mr(j, i));
      }
    SymEig small = generalized_eigensolve(kr, mr);
    x = mat_mul(xb, small.vectors);  // M-orthonormal block

    bool converged = true;
    for (int i = 0; i < n_r; ++i) {
      const double ev = small.eigenvalues[i];
      if (std::abs(ev - prev_ev[i]) > 1e-12 * std::max(1.0, std::abs(ev))) converged = false;
      prev_ev[i] = ev;
    }
    if (!converged && iter < max_iter - 1) continue;

    // residual check on the leading n_r pairs
    bool ok = true;
    for (int j = 0; j < n_r && ok; ++j) {
      const Vector y = x.col_vec(j);
      Vector ky = sys.K.apply(y);
      const double ky_norm = norm2(ky);
      axpy(-prev_ev[j], sys.M.apply(y), ky);
      if (norm2(ky) > 1e-8 * std::max(ky_norm, 1e-300)) ok = false;
    }
    if (ok) {
      ReductionBasis basis;
      basis.kind = BasisKind::Modal;
      basis.Q = DenseMatrix(n, 0);
      for (int j = 0; j < n_r; ++j) basis.Q.append_col(x.col_vec(j));
      basis.eigenvalues.assign(prev_ev.begin(), prev_ev.end());
      return basis;
    }
    if (iter == max_iter - 1) break;
  }
  throw EigensolverFailure("modal_basis: subspace iteration did not reach the residual target");
}

// ------------------------------------------------------ Craig-Bampton ----

ReductionBasis craig_bampton_basis(const ContactSystem& sys, int n_k) {
  if (n_k < 1) throw ConfigError("craig_bampton_basis: n_k must be >= 1");
  const int n = sys.n_free;

  // master set: every DOF of every double node touched by the constraints
  std::vector<char> is_master(n, 0);
  for (const ContactPairRef& pr : sys.contact_pairs)
    for (int node : {pr.left_node, pr.right_node})
      for (int axis = 0; axis < 2; ++axis) {
        const int d = sys.dof_map[node][axis];
        if (d >= 0) is_master[d] = 1;
      }
  std::vector<int> masters, slaves;
  for (int i = 0; i < n; ++i) (is_master[i] ? masters : slaves).push_back(i);
  if (masters.empty()) throw ConfigError("craig_bampton_basis: no contact DOFs");
  const int n_c = int(masters.size());
  const int n_s = int(slaves.size());

  const SparseSymMatrix k_ss = submatrix_sym(sys.K, slaves);
  const SparseSymMatrix m_ss = submatrix_sym(sys.M, slaves);
  const DenseMatrix k_sm = block_dense(sys.K, slaves, masters);

  SpdFactorization kss_fact;
  try {
    kss_fact = spd_factorize(k_ss);
  } catch (const NotPositiveDefinite& e) {
    throw SingularSlaveBlock(std::string("craig_bampton_basis: ") + e.what());
  }

  // constraint modes: psi = -K_SS^-1 K_SM
  DenseMatrix psi = kss_fact.solve_multi(k_sm);
  for (int j = 0; j < psi.cols(); ++j)
    for (int i = 0; i < psi.rows(); ++i) psi(i, j) = -psi(i, j);

  // slave Krylov seed from the load pattern
  const Vector& seed = sys.load_seed();
  if (norm_inf(seed) == 0.0) throw ZeroSeed("craig_bampton_basis: load pattern is zero");
  Vector f_s(n_s);
  for (int i = 0; i < n_s; ++i) f_s[i] = seed[slaves[i]];
  if (norm_inf(f_s) == 0.0) {
    // load acts on master DOFs only: route it into the slave block through
    // the constraint modes
    Vector f_m(n_c);
    for (int i = 0; i < n_c; ++i) f_m[i] = seed[masters[i]];
    f_s = matvec(psi, f_m);
    if (norm_inf(f_s) == 0.0) throw ZeroSeed("craig_bampton_basis: slave seed is zero");
  }

  DenseMatrix q_s(n_s, 0);
  Vector v = kss_fact.solve(f_s);
  if (orthonormalize_append(q_s, v) == AppendResult::Rejected)
    throw ZeroSeed("craig_bampton_basis: K_SS^-1 F_S vanishes");
  while (q_s.cols() < n_k) {
    v = kss_fact.solve(m_ss.apply(q_s.col_vec(q_s.cols() - 1)));
    if (orthonormalize_append(q_s, v) == AppendResult::Rejected) break;
  }

  ReductionBasis basis;
  basis.kind = BasisKind::CraigBampton;
  basis.master_dofs = masters;
  basis.n_c = n_c;
  basis.n_k = q_s.cols();
  basis.Q = DenseMatrix(n, n_c + q_s.cols());
  for (int j = 0; j < n_c; ++j) {
    basis.Q(masters[j], j) = 1.0;
    for (int i = 0; i < n_s; ++i) basis.Q(slaves[i], j) = psi(i, j);
  }
  for (int j = 0; j < q_s.cols(); ++j)
    for (int i = 0; i < n_s; ++i) basis.Q(slaves[i], n_c + j) = q_s(i, j);
  return basis;
}

// ------------------------------------------------------------- reduce ----

ReducedSystem reduce(const ContactSystem& sys, const ReductionBasis& basis) {
  if (basis.Q.rows() != sys.n_free) throw DimensionMismatch("reduce: basis rows != n_free");
  ReducedSystem red;
  red.sys = &sys;
  red.basis = basis;

  const DenseMatrix& q = red.basis.Q;
  DenseMatrix mq = sys.M.apply_dense(q);
  DenseMatrix kq = sys.K.apply_dense(q);
  red.Mhat = matT_mul(q, mq);
  red.Khat = matT_mul(q, kq);

  const double m_scale = std::max(max_abs(red.Mhat), 1e-300);
  const double k_scale = std::max(max_abs(red.Khat), 1e-300);
  if (max_asymmetry(red.Mhat) > 1e-10 * m_scale || max_asymmetry(red.Khat) > 1e-10 * k_scale)
    throw Error("reduce: projected matrices lost symmetry");
  for (int j = 0; j < red.Mhat.cols(); ++j)
    for (int i = 0; i < j; ++i) {
      red.Mhat(i, j) = red.Mhat(j, i) = 0.5 * (red.Mhat(i, j) + red.Mhat(j, i));
      red.Khat(i, j) = red.Khat(j, i) = 0.5 * (red.Khat(i, j) + red.Khat(j, i));
    }
  {
    DenseCholesky spd_check(red.Mhat);  // throws NotPositiveDefinite
    (void)spd_check;
  }
  const SymEig khat_eig = jacobi_eigensolve(red.Khat);
  if (khat_eig.eigenvalues.front() < -1e-8 * k_scale)
    throw Error("reduce: Khat is not positive semi-definite");

  red.Chat = sys.C.apply_dense(q);
  red.b = sys.b;
  red.fhat_pattern = matTvec(q, sys.load_pattern);
  red.body_hat = matTvec(q, sys.body_pattern);
  return red;
}

Vector ReducedSystem::reduced_load(double t) const {
  Vector f = body_hat;
  const double a = sys->load.amplitude_at(t);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] += a * fhat_pattern[i];
  return f;
}

Vector ReducedSystem::to_full(const Vector& v) const { return matvec(basis.Q, v); }

Vector ReducedSystem::project(const Vector& q) const {
  Vector qtq = matTvec(basis.Q, q);
  if (basis.kind != BasisKind::CraigBampton) return qtq;
  const DenseMatrix gram = matT_mul(basis.Q, basis.Q);
  return DenseCholesky(gram).solve(qtq);
}

// ---------------------------------------------------------------- ROM ----

RomOperator::RomOperator(const ReducedSystem& red, double h) : red_(&red), h_(h) {
  DenseMatrix s = red.Mhat;
  for (int j = 0; j < s.cols(); ++j)
    for (int i = 0; i < s.rows(); ++i) s(i, j) += h * h * red.Khat(i, j);
  s_chol_ = DenseCholesky(s);
  s_inv_ct_ = s_chol_.solve_multi(transpose(red.Chat));
  a_ = mat_mul(red.Chat, s_inv_ct_);
  for (int j = 0; j < a_.cols(); ++j)
    for (int i = 0; i < a_.rows(); ++i) a_(i, j) *= h * h;
}

LcpProblem RomOperator::assemble_lcp(const SimState& st, Vector& y_out) const {
  const ReducedSystem& red = *red_;
  const double h2 = h_ * h_;
  Vector rhs = red.reduced_load(st.t + h_);
  scale(rhs, h2);
  Vector mv = matvec(red.Mhat, st.q_curr);
  axpy(2.0, mv, rhs);
  mv = matvec(red.Mhat, st.q_prev);
  axpy(-1.0, mv, rhs);

  y_out = s_chol_.solve(rhs);
  LcpProblem p;
  p.A = a_;
  p.B = matvec(red.Chat, y_out);
  for (int i = 0; i < red.m(); ++i) p.B[i] += red.b[i];
  return p;
}

SimState RomOperator::step(const SimState& st) const {
  Vector y;
  const LcpProblem p = assemble_lcp(st, y);

  SimState next;
  next.t = st.t + h_;
  next.q_prev = st.q_curr;
  if (red_->m() == 0) {
    next.q_curr = std::move(y);
    return next;
  }
  const LcpSolution sol = solve_step_lcp(p);
  next.lambda = sol.lambda;
  next.q_curr = std::move(y);
  const double h2 = h_ * h_;
  for (int j = 0; j < red_->m(); ++j) {
    const double lj = h2 * sol.lambda[j];
    if (lj == 0.0) continue;
    const double* col = s_inv_ct_.col(j);
    for (int i = 0; i < red_->n_r(); ++i) next.q_curr[i] += lj * col[i];
  }
  return next;
}

SimState rom_step(const ReducedSystem& red, const SimState& st, double h) {
  return RomOperator(red, h).step(st);
}

namespace {

void record_rom(Trajectory& traj, const ReducedSystem& red, const SimState& st,
                const Vector& vdot, const DenseMatrix& sensor_rows) {
  traj.times.push_back(st.t);
  const Vector disp = matvec(sensor_rows, st.q_curr);
  for (int s = 0; s < traj.n_sensors(); ++s) {
    traj.sensor_disp[s][0].push_back(disp[2 * s]);
    traj.sensor_disp[s][1].push_back(disp[2 * s + 1]);
  }
  Vector gap = matvec(red.Chat, st.q_curr);
  for (int i = 0; i < red.m(); ++i) gap[i] += red.b[i];
  traj.gap_series.push_back(std::move(gap));
  traj.lambda_series.push_back(st.lambda);
  const double e = 0.5 * dot(vdot, matvec(red.Mhat, vdot)) +
                   0.5 * dot(st.q_curr, matvec(red.Khat, st.q_curr));
  traj.energy.push_back(e);
}

}  // namespace

Trajectory simulate_rom(const ReducedSystem& red, const SimParams& p,
                        const std::vector<int>& sensor_nodes) {
  p.validate();
  return simulate_rom(RomOperator(red, p.h), p, sensor_nodes);
}

Trajectory simulate_rom(const RomOperator& op, const SimParams& p,
                        const std::vector<int>& sensor_nodes) {
  p.validate();
  if (std::abs(op.h() - p.h) > 0.0)
    throw DimensionMismatch("simulate_rom: operator built for other h");
  const ReducedSystem& red = op.system();
  const ContactSystem& sys = *red.sys;

  Trajectory traj;
  traj.sensor_nodes = sensor_nodes;
  traj.sensor_disp.resize(sensor_nodes.size());

  // rows of Q that feed the sensor read-out (zero row for a fixed DOF)
  DenseMatrix sensor_rows(2 * int(sensor_nodes.size()), red.n_r());
  for (std::size_t s = 0; s < sensor_nodes.size(); ++s) {
    const int node = sensor_nodes[s];
    if (node < 0 || node >= sys.mesh.n_nodes())
      throw ConfigError("simulate_rom: unknown sensor node");
    for (int axis = 0; axis < 2; ++axis) {
      const int d = sys.dof_map[node][axis];
      if (d < 0) continue;
      for (int j = 0; j < red.n_r(); ++j) sensor_rows(2 * int(s) + axis, j) = red.basis.Q(d, j);
    }
  }

  SimState st;
  st.t = p.t0;
  st.q_curr = p.q0.empty() ? Vector(red.n_r(), 0.0)
                           : red.project(p.q0);
  st.q_prev = st.q_curr;
  st.lambda.assign(red.m(), 0.0);
  Vector v0 = p.v0.empty() ? Vector(red.n_r(), 0.0) : red.project(p.v0);

  record_rom(traj, red, st, v0, sensor_rows);
  const int n_steps = p.steps();
  if (n_steps == 0) return traj;

  SimState st1;
  st1.t = p.t0 + p.h;
  st1.q_prev = st.q_curr;
  st1.q_curr = st.q_curr;
  axpy(p.h, v0, st1.q_curr);
  st1.lambda.assign(red.m(), 0.0);
  record_rom(traj, red, st1, v0, sensor_rows);

  SimState cur = std::move(st1);
  for (int k = 2; k <= n_steps; ++k) {
    SimState next;
    try {
      next = op.step(cur);
    } catch (const SolverError& e) {
      throw SolverError(std::string(e.what()) + " (step " + std::to_string(k) + ", t = " +
                        std::to_string(p.t0 + k * p.h) + ")");
    }
    next.t = p.t0 + k * p.h;
    Vector vdot = next.q_curr;
    axpy(-1.0, next.q_prev, vdot);
    scale(vdot, 1.0 / p.h);
    record_rom(traj, red, next, vdot, sensor_rows);
    cur = std::move(next);
  }
  return traj;
}

void write_dense_text(const DenseMatrix& m, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw Error("cannot open " + path);
  std::fprintf(f, "%d %d\n", m.rows(), m.cols());
  for (int j = 0; j < m.cols(); ++j) {
    for (int i = 0; i < m.rows(); ++i)
      std::fprintf(f, "%.17g%c", m(i, j), i + 1 == m.rows() ? '\n' : ' ');
  }
  std::fclose(f);
}

}  // namespace contactmor
