#pragma once

#include <array>

#include "contactmor/dense_matrix.hpp"
#include "contactmor/mesh.hpp"

namespace contactmor {

using ElementCoords = std::array<std::array<double, 2>, 4>;

/// 8x8 plane-stress stiffness of a bilinear quadrilateral, 2x2 Gauss
/// quadrature of B^T D B. DOFs are interleaved (u1x, u1y, ..., u4x, u4y).
/// Throws DegenerateElement when the Jacobian determinant is <= 0 at a
/// quadrature point.
DenseMatrix element_stiffness(const ElementCoords& coords, const Material& mat);

/// 8x8 consistent mass, 2x2 Gauss quadrature of rho * N^T N.
DenseMatrix element_mass(const ElementCoords& coords, const Material& mat);

}  // namespace contactmor
