#pragma once

#include <vector>

#include "contactmor/contact_system.hpp"
#include "contactmor/lcp.hpp"
#include "contactmor/spd_factorization.hpp"

namespace contactmor {

struct SimParams {
  double h = 0.05;
  double t0 = 0.0;
  double t_end = 20.0;
  Vector q0;  // empty = zero
  Vector v0;

  int steps() const;
  void validate() const;
};

/// Two-step integrator memory: the scheme needs q(t) and q(t-h).
struct SimState {
  double t = 0.0;
  Vector q_curr;
  Vector q_prev;
  Vector lambda;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<int> sensor_nodes;
  // one series per sensor and axis, indexed [sensor][axis][step]
  std::vector<std::array<std::vector<double>, 2>> sensor_disp;
  std::vector<Vector> lambda_series;  // per step, length m
  std::vector<Vector> gap_series;
  std::vector<double> energy;  // kinetic + strain

  int steps() const { return int(times.size()); }
  int n_sensors() const { return int(sensor_nodes.size()); }
  double max_penetration() const;
};

/// Per-step dynamic LCP data, built once per (system, h): factorization of
/// M + h^2 K, the columns (M+h^2K)^-1 C^T and the constant LCP matrix
/// A = h^2 C (M+h^2K)^-1 C^T.
class DynamicOperator {
 public:
  DynamicOperator(const ContactSystem& sys, double h);

  const ContactSystem& system() const { return *sys_; }
  double h() const { return h_; }
  const DenseMatrix& lcp_matrix() const { return a_; }

  /// B = C (M+h^2K)^-1 (h^2 f(t+h) + 2 M q - M q_prev) + b, and the
  /// intermediate y = (M+h^2K)^-1 rhs needed for the update.
  LcpProblem assemble_lcp(const SimState& st, Vector& y_out) const;

  /// Advance one implicit-Euler step; solves the LCP (Lemke, FB fallback).
  SimState step(const SimState& st) const;

 private:
  const ContactSystem* sys_;
  double h_;
  SpdFactorization s_fact_;  // M + h^2 K
  DenseMatrix s_inv_ct_;     // (M+h^2K)^-1 C^T
  DenseMatrix a_;            // h^2 C (M+h^2K)^-1 C^T
};

/// Convenience wrappers matching the operation-level API (each call builds
/// the cached operator; simulate() reuses one for the whole run).
LcpProblem dynamic_lcp_assemble(const ContactSystem& sys, const SimState& st, double h);
SimState fom_step(const ContactSystem& sys, const SimState& st, double h);

/// Initial state plus explicit-Euler startup step q(t0+h) = q0 + h v0,
/// then the two-step formula up to t_end. Records sensors, multipliers,
/// gaps and the energy diagnostic at every stored step.
Trajectory simulate(const ContactSystem& sys, const SimParams& p,
                    const std::vector<int>& sensor_nodes);

/// Same, reusing a prepared operator (p.h must match op.h()).
Trajectory simulate(const DynamicOperator& op, const SimParams& p,
                    const std::vector<int>& sensor_nodes);

/// Kinetic + strain energy with backward-difference velocity.
double mechanical_energy(const ContactSystem& sys, const Vector& q, const Vector& qdot);

/// Solve the LCP with Lemke and fall back to FB-Newton; throws SolverError
/// when both fail.
LcpSolution solve_step_lcp(const LcpProblem& p);

}  // namespace contactmor
