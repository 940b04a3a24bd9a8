#pragma once

// Test-only reference implementations, kept independent of the library code
// paths they are used to check.

#include <random>

#include "contactmor/contact_system.hpp"
#include "contactmor/dense_matrix.hpp"
#include "contactmor/element.hpp"
#include "contactmor/mesh.hpp"

namespace oracles {

using contactmor::ConstraintMatrix;
using contactmor::DenseMatrix;
using contactmor::Material;
using contactmor::Vector;

/// Element stiffness/mass by high-order (6x6) Gauss-Legendre quadrature,
/// assembled from first principles.
DenseMatrix element_stiffness_ref(const contactmor::ElementCoords& coords, const Material& mat);
DenseMatrix element_mass_ref(const contactmor::ElementCoords& coords, const Material& mat);

/// Naive Gaussian elimination with partial pivoting (fresh implementation).
Vector dense_gauss_solve(DenseMatrix a, Vector rhs);

/// Exact QP oracle for min 1/2 q^T K q - f^T q  s.t.  C q + b >= 0:
/// enumerate active sets, solve the equality-constrained KKT saddle system
/// densely, keep the feasible stationary point with minimal objective.
/// Requires m <= 16.
struct QpResult {
  Vector q;
  Vector multipliers;
  double objective;
};
QpResult qp_active_set_ref(const DenseMatrix& k_dense, const Vector& f, const ConstraintMatrix& c,
                           const Vector& b);

/// Random SPD matrix G^T G + ridge * I.
DenseMatrix random_spd(int m, std::mt19937& rng, double ridge = 1e-6);
Vector random_vector(int m, std::mt19937& rng, double scale = 1.0);

}  // namespace oracles
