#pragma once

#include "contactmor/contact_system.hpp"
#include "contactmor/dense_solve.hpp"
#include "contactmor/spd_factorization.hpp"
#include "contactmor/time_integration.hpp"

namespace contactmor {

enum class BasisKind { Krylov, Modal, CraigBampton };

/// Projection q = Q v. Basis construction is an offline step: it touches
/// only M, K, C and the load's spatial pattern, never trajectory data.
struct ReductionBasis {
  BasisKind kind = BasisKind::Krylov;
  DenseMatrix Q;  // n_free x n_r

  // Craig-Bampton bookkeeping: the first n_c columns are constraint modes
  // (identity on the master DOFs, -K_SS^-1 K_SM on the slaves), the last n_k
  // columns are slave Krylov modes (zero on the master DOFs).
  std::vector<int> master_dofs;
  int n_c = 0;
  int n_k = 0;

  Vector eigenvalues;  // modal only (omega^2, ascending)

  int n_r() const { return Q.cols(); }
};

/// Orthonormal basis of span{K^-1 f0, (K^-1 M) K^-1 f0, ...} built by Arnoldi
/// with two-pass reorthogonalization; f0 is the unit-amplitude load pattern.
/// Stops early on deflation and returns the achieved dimension.
/// Throws ZeroSeed when the load pattern vanishes.
///
/// shift_omega2 > 0 expands around the frequency omega instead of zero,
/// replacing K by K - omega^2 M. The shifted matrix must stay positive
/// definite (expansion below the first eigenfrequency); otherwise
/// NotPositiveDefinite propagates.
ReductionBasis krylov_basis(const ContactSystem& sys, int n_r, double shift_omega2 = 0.0);
ReductionBasis krylov_basis(const ContactSystem& sys, int n_r, const SpdFactorization& k_fact);

/// The n_r smallest eigenpairs of K y = omega^2 M y, M-orthonormalized,
/// computed by subspace iteration on the factorized K (deterministic start
/// block). Throws EigensolverFailure when the residual target is not met.
ReductionBasis modal_basis(const ContactSystem& sys, int n_r);

/// Craig-Bampton basis: masters are all DOFs of the double nodes referenced
/// by the constraint matrix (n_c of them), slaves everything else. Columns:
/// n_c constraint modes, then n_k Arnoldi vectors of the slave system
/// (K_SS, M_SS) seeded with the slave part of the load pattern (falling back
/// to -K_SS^-1 K_SM applied to the master load direction when that part is
/// zero). Throws SingularSlaveBlock when K_SS is not SPD.
ReductionBasis craig_bampton_basis(const ContactSystem& sys, int n_k);

/// Projected system: Mhat = Q^T M Q, Khat = Q^T K Q, Chat = C Q. Both
/// reduced matrices are symmetry-checked and Mhat is verified SPD, Khat PSD.
struct ReducedSystem {
  const ContactSystem* sys = nullptr;  // non-owning; must outlive this
  ReductionBasis basis;
  DenseMatrix Mhat, Khat;
  DenseMatrix Chat;  // m x n_r
  Vector b;
  Vector fhat_pattern;  // Q^T load pattern
  Vector body_hat;      // Q^T body pattern

  int n_r() const { return basis.n_r(); }
  int m() const { return Chat.rows(); }

  Vector reduced_load(double t) const;
  /// Back-map q = Q v.
  Vector to_full(const Vector& v) const;
  /// v minimizing |Q v - q| (plain transpose for orthonormal bases,
  /// least squares for Craig-Bampton).
  Vector project(const Vector& q) const;
};

ReducedSystem reduce(const ContactSystem& sys, const ReductionBasis& basis);

/// Reduced analogue of DynamicOperator; Ahat = h^2 Chat (Mhat+h^2 Khat)^-1
/// Chat^T is dense and assembled once.
class RomOperator {
 public:
  RomOperator(const ReducedSystem& red, double h);

  const ReducedSystem& system() const { return *red_; }
  double h() const { return h_; }
  const DenseMatrix& lcp_matrix() const { return a_; }

  LcpProblem assemble_lcp(const SimState& st, Vector& y_out) const;
  SimState step(const SimState& st) const;

 private:
  const ReducedSystem* red_;
  double h_;
  DenseCholesky s_chol_;  // Mhat + h^2 Khat
  DenseMatrix s_inv_ct_;  // (Mhat+h^2 Khat)^-1 Chat^T
  DenseMatrix a_;
};

SimState rom_step(const ReducedSystem& red, const SimState& st, double h);

/// Reduced simulation; the trajectory is recorded in full coordinates via
/// the back-map at the sensor nodes, with the same column layout as the
/// full-order simulate().
Trajectory simulate_rom(const ReducedSystem& red, const SimParams& p,
                        const std::vector<int>& sensor_nodes);
Trajectory simulate_rom(const RomOperator& op, const SimParams& p,
                        const std::vector<int>& sensor_nodes);

/// Plain-text export of a dense matrix (header "rows cols", then one line
/// per column).
void write_dense_text(const DenseMatrix& m, const std::string& path);

}  // namespace contactmor
