#pragma once

#include "contactmor/dense_matrix.hpp"
#include "contactmor/vector_ops.hpp"

namespace contactmor {

/// Deflation threshold: a candidate whose norm after projection drops below
/// eps_deflate times its input norm is numerically inside span(basis).
inline constexpr double kDeflateTol = 1e-12;

enum class AppendResult { Appended, Rejected };

/// Append v to an orthonormal basis using two passes of modified
/// Gram-Schmidt, normalizing the remainder. Returns Rejected (basis
/// untouched) when the remainder norm falls below kDeflateTol * |v|,
/// which signals Krylov breakdown to the caller.
AppendResult orthonormalize_append(DenseMatrix& basis, const Vector& v,
                                   double deflate_tol = kDeflateTol);

}  // namespace contactmor
