#include "contactmor/element.hpp"

#include <cmath>

namespace contactmor {

namespace {

struct ShapeEval {
  double n[4];
  double dndx[4], dndy[4];
  double detj;
};

// Bilinear shape functions on the reference square [-1,1]^2, corner order
// (-1,-1), (1,-1), (1,1), (-1,1), pushed to physical coordinates.
ShapeEval eval_shape(const ElementCoords& c, double xi, double eta) {
  static const double sx[4] = {-1, 1, 1, -1};
  static const double sy[4] = {-1, -1, 1, 1};
  ShapeEval s{};
  double dndxi[4], dndeta[4];
  for (int a = 0; a < 4; ++a) {
    s.n[a] = 0.25 * (1 + sx[a] * xi) * (1 + sy[a] * eta);
    dndxi[a] = 0.25 * sx[a] * (1 + sy[a] * eta);
    dndeta[a] = 0.25 * sy[a] * (1 + sx[a] * xi);
  }
  double j00 = 0, j01 = 0, j10 = 0, j11 = 0;  // d(x,y)/d(xi,eta)
  for (int a = 0; a < 4; ++a) {
    j00 += dndxi[a] * c[a][0];
    j01 += dndxi[a] * c[a][1];
    j10 += dndeta[a] * c[a][0];
    j11 += dndeta[a] * c[a][1];
  }
  s.detj = j00 * j11 - j01 * j10;
  if (!(s.detj > 0.0))
    throw DegenerateElement("element Jacobian determinant " + std::to_string(s.detj));
  const double inv = 1.0 / s.detj;
  for (int a = 0; a < 4; ++a) {
    s.dndx[a] = inv * (j11 * dndxi[a] - j01 * dndeta[a]);
    s.dndy[a] = inv * (-j10 * dndxi[a] + j00 * dndeta[a]);
  }
  return s;
}

constexpr double kGauss = 0.57735026918962576451;  // 1/sqrt(3)

}  // namespace

DenseMatrix element_stiffness(const ElementCoords& coords, const Material& mat) {
  // plane-stress constitutive matrix
  const double f = mat.E / (1.0 - mat.nu * mat.nu) * mat.thickness;
  const double d00 = f, d01 = f * mat.nu, d22 = f * (1.0 - mat.nu) / 2.0;

  DenseMatrix k(8, 8);
  const double gp[2] = {-kGauss, kGauss};
  for (double xi : gp) {
    for (double eta : gp) {
      const ShapeEval s = eval_shape(coords, xi, eta);
      const double w = s.detj;  // unit Gauss weights
      // strain rows: e_xx, e_yy, 2 e_xy; columns interleaved per node
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          // (B_a)^T D (B_b) blocks
          const double kxx = d00 * s.dndx[a] * s.dndx[b] + d22 * s.dndy[a] * s.dndy[b];
          const double kxy = d01 * s.dndx[a] * s.dndy[b] + d22 * s.dndy[a] * s.dndx[b];
          const double kyx = d01 * s.dndy[a] * s.dndx[b] + d22 * s.dndx[a] * s.dndy[b];
          const double kyy = d00 * s.dndy[a] * s.dndy[b] + d22 * s.dndx[a] * s.dndx[b];
          k(2 * a, 2 * b) += w * kxx;
          k(2 * a, 2 * b + 1) += w * kxy;
          k(2 * a + 1, 2 * b) += w * kyx;
          k(2 * a + 1, 2 * b + 1) += w * kyy;
        }
      }
    }
  }
  return k;
}

DenseMatrix element_mass(const ElementCoords& coords, const Material& mat) {
  DenseMatrix m(8, 8);
  const double rt = mat.rho * mat.thickness;
  const double gp[2] = {-kGauss, kGauss};
  for (double xi : gp) {
    for (double eta : gp) {
      const ShapeEval s = eval_shape(coords, xi, eta);
      const double w = s.detj * rt;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          const double v = w * s.n[a] * s.n[b];
          m(2 * a, 2 * b) += v;
          m(2 * a + 1, 2 * b + 1) += v;
        }
    }
  }
  return m;
}

}  // namespace contactmor
