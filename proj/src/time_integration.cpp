#include "contactmor/time_integration.hpp"

#include <cmath>

namespace contactmor {

int SimParams::steps() const { return int(std::llround((t_end - t0) / h)); }

void SimParams::validate() const {
  if (!(h > 0.0)) throw ConfigError("sim: h must be > 0");
  if (!(t_end >= t0)) throw ConfigError("sim: t_end must be >= t0");
}

double Trajectory::max_penetration() const {
  double pen = 0.0;
  for (const Vector& g : gap_series)
    for (double gi : g) pen = std::max(pen, -gi);
  return std::max(0.0, pen);
}

LcpSolution solve_step_lcp(const LcpProblem& p) {
  LcpSolution sol = lemke_solve(p);
  if (sol.status == LcpStatus::Solved) return sol;
  sol = fb_newton_solve(p);
  if (sol.status == LcpStatus::Solved) return sol;
  throw SolverError(std::string("step LCP failed: ") + to_string(sol.status));
}

DynamicOperator::DynamicOperator(const ContactSystem& sys, double h) : sys_(&sys), h_(h) {
  const SparseSymMatrix s = add_scaled(1.0, sys.M, h * h, sys.K);
  s_fact_ = spd_factorize(s);
  s_inv_ct_ = s_fact_.solve_multi(sys.C.denseT());
  a_ = sys.C.apply_dense(s_inv_ct_);
  for (int j = 0; j < a_.cols(); ++j)
    for (int i = 0; i < a_.rows(); ++i) a_(i, j) *= h * h;
}

LcpProblem DynamicOperator::assemble_lcp(const SimState& st, Vector& y_out) const {
  const ContactSystem& sys = *sys_;
  const double h2 = h_ * h_;
  // rhs = h^2 f(t+h) + 2 M q(t) - M q(t-h)
  Vector rhs = sys.load_vector(st.t + h_);
  scale(rhs, h2);
  Vector mq = sys.M.apply(st.q_curr);
  axpy(2.0, mq, rhs);
  sys.M.apply(st.q_prev, mq);
  axpy(-1.0, mq, rhs);

  y_out = s_fact_.solve(rhs);
  LcpProblem p;
  p.A = a_;
  p.B = sys.C.apply(y_out);
  for (int i = 0; i < sys.m(); ++i) p.B[i] += sys.b[i];
  return p;
}

SimState DynamicOperator::step(const SimState& st) const {
  Vector y;
  const LcpProblem p = assemble_lcp(st, y);

  SimState next;
  next.t = st.t + h_;
  next.q_prev = st.q_curr;
  if (sys_->m() == 0) {  // contact-free: plain implicit Euler
    next.q_curr = std::move(y);
    return next;
  }
  const LcpSolution sol = solve_step_lcp(p);
  next.lambda = sol.lambda;
  // q(t+h) = y + h^2 (M+h^2K)^-1 C^T lambda
  next.q_curr = std::move(y);
  const double h2 = h_ * h_;
  for (int j = 0; j < sys_->m(); ++j) {
    const double lj = h2 * sol.lambda[j];
    if (lj == 0.0) continue;
    const double* col = s_inv_ct_.col(j);
    for (int i = 0; i < sys_->n_free; ++i) next.q_curr[i] += lj * col[i];
  }
  return next;
}

LcpProblem dynamic_lcp_assemble(const ContactSystem& sys, const SimState& st, double h) {
  Vector y;
  return DynamicOperator(sys, h).assemble_lcp(st, y);
}

SimState fom_step(const ContactSystem& sys, const SimState& st, double h) {
  return DynamicOperator(sys, h).step(st);
}

double mechanical_energy(const ContactSystem& sys, const Vector& q, const Vector& qdot) {
  return 0.5 * dot(qdot, sys.M.apply(qdot)) + 0.5 * dot(q, sys.K.apply(q));
}

namespace {

void record(Trajectory& traj, const ContactSystem& sys, const SimState& st, const Vector& qdot) {
  traj.times.push_back(st.t);
  for (int s = 0; s < traj.n_sensors(); ++s) {
    const int node = traj.sensor_nodes[s];
    for (int axis = 0; axis < 2; ++axis) {
      const int d = sys.dof_map[node][axis];
      traj.sensor_disp[s][axis].push_back(d >= 0 ? st.q_curr[d] : 0.0);
    }
  }
  Vector gap = sys.C.apply(st.q_curr);
  for (int i = 0; i < sys.m(); ++i) gap[i] += sys.b[i];
  traj.gap_series.push_back(std::move(gap));
  traj.lambda_series.push_back(st.lambda);
  traj.energy.push_back(mechanical_energy(sys, st.q_curr, qdot));
}

}  // namespace

Trajectory simulate(const ContactSystem& sys, const SimParams& p,
                    const std::vector<int>& sensor_nodes) {
  p.validate();
  return simulate(DynamicOperator(sys, p.h), p, sensor_nodes);
}

Trajectory simulate(const DynamicOperator& op, const SimParams& p,
                    const std::vector<int>& sensor_nodes) {
  p.validate();
  if (std::abs(op.h() - p.h) > 0.0) throw DimensionMismatch("simulate: operator built for other h");
  const ContactSystem& sys = op.system();
  for (int node : sensor_nodes)
    if (node < 0 || node >= sys.mesh.n_nodes()) throw ConfigError("simulate: unknown sensor node");

  Trajectory traj;
  traj.sensor_nodes = sensor_nodes;
  traj.sensor_disp.resize(sensor_nodes.size());

  SimState st;
  st.t = p.t0;
  st.q_curr = p.q0.empty() ? Vector(sys.n_free, 0.0) : p.q0;
  st.q_prev = st.q_curr;
  st.lambda.assign(sys.m(), 0.0);
  if (int(st.q_curr.size()) != sys.n_free) throw DimensionMismatch("simulate: q0 size");

  Vector v0 = p.v0.empty() ? Vector(sys.n_free, 0.0) : p.v0;
  if (int(v0.size()) != sys.n_free) throw DimensionMismatch("simulate: v0 size");

  record(traj, sys, st, v0);
  const int n_steps = p.steps();
  if (n_steps == 0) return traj;

  // explicit Euler startup: q(t0+h) = q0 + h v0
  SimState st1;
  st1.t = p.t0 + p.h;
  st1.q_prev = st.q_curr;
  st1.q_curr = st.q_curr;
  axpy(p.h, v0, st1.q_curr);
  st1.lambda.assign(sys.m(), 0.0);
  record(traj, sys, st1, v0);

  SimState cur = std::move(st1);
  for (int k = 2; k <= n_steps; ++k) {
    SimState next;
    try {
      next = op.step(cur);
    } catch (const SolverError& e) {
      throw SolverError(std::string(e.what()) + " (step " + std::to_string(k) + ", t = " +
                        std::to_string(p.t0 + k * p.h) + ")");
    }
    next.t = p.t0 + k * p.h;  // avoid accumulated drift
    Vector qdot = next.q_curr;
    axpy(-1.0, next.q_prev, qdot);
    scale(qdot, 1.0 / p.h);
    record(traj, sys, next, qdot);
    cur = std::move(next);
  }
  return traj;
}

}  // namespace contactmor
