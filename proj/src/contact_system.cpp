#include "contactmor/contact_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "contactmor/element.hpp"

namespace contactmor {

Vector ConstraintMatrix::apply(const Vector& q) const {
  if (int(q.size()) != n_) throw DimensionMismatch("ConstraintMatrix::apply");
  Vector g(rows_.size(), 0.0);
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const Entry& e : rows_[r]) g[r] += e.val * q[e.col];
  return g;
}

Vector ConstraintMatrix::applyT(const Vector& lam) const {
  if (int(lam.size()) != m()) throw DimensionMismatch("ConstraintMatrix::applyT");
  Vector f(n_, 0.0);
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const Entry& e : rows_[r]) f[e.col] += e.val * lam[r];
  return f;
}

DenseMatrix ConstraintMatrix::apply_dense(const DenseMatrix& x) const {
  if (x.rows() != n_) throw DimensionMismatch("ConstraintMatrix::apply_dense");
  DenseMatrix y(m(), x.cols());
  for (int j = 0; j < x.cols(); ++j) {
    const double* xj = x.col(j);
    double* yj = y.col(j);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      double s = 0.0;
      for (const Entry& e : rows_[r]) s += e.val * xj[e.col];
      yj[r] = s;
    }
  }
  return y;
}

DenseMatrix ConstraintMatrix::denseT() const {
  DenseMatrix t(n_, m());
  for (int r = 0; r < m(); ++r)
    for (const Entry& e : rows_[r]) t(e.col, r) += e.val;
  return t;
}

std::vector<Triplet> ConstraintMatrix::triplets() const {
  std::vector<Triplet> ts;
  for (int r = 0; r < m(); ++r)
    for (const Entry& e : rows_[r]) ts.push_back({r, e.col, e.val});
  return ts;
}

std::array<double, 2> LoadSpec::unit_direction() const {
  switch (kind) {
    case Kind::Load1:
      return {1.0, 0.0};
    case Kind::Load2: {
      const double c = std::sin(0.25 * M_PI);
      return {c, c};
    }
    case Kind::Custom: {
      const double n = std::hypot(direction[0], direction[1]);
      if (!(n > 0.0)) throw ConfigError("load: zero direction");
      return {direction[0] / n, direction[1] / n};
    }
  }
  return {1.0, 0.0};
}

double LoadSpec::amplitude_at(double t) const {
  switch (kind) {
    case Kind::Load1:
    case Kind::Load2:
      return 1.5 * std::sin(0.1 * M_PI * t);
    case Kind::Custom:
      return omega > 0.0 ? amplitude * std::sin(omega * t) : amplitude;
  }
  return 0.0;
}

Vector ContactSystem::load_vector(double t) const {
  Vector f = body_pattern;
  const double a = load.amplitude_at(t);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] += a * load_pattern[i];
  return f;
}

const Vector& ContactSystem::load_seed() const {
  if (norm_inf(load_pattern) > 0.0) return load_pattern;
  return body_pattern;
}

int ContactSystem::nearest_node(double x, double y, char side) const {
  int best = -1;
  double best_d = std::numeric_limits<double>::max();
  for (int n = 0; n < mesh.n_nodes(); ++n) {
    const double d = std::hypot(mesh.nodes[n][0] - x, mesh.nodes[n][1] - y);
    if (d < best_d - 1e-15) {
      best_d = d;
      best = n;
    }
  }
  const double half_spacing = 0.5 * std::min(mesh.spec.dx(), mesh.spec.dy());
  if (best < 0 || best_d > half_spacing)
    throw ConfigError("point (" + std::to_string(x) + ", " + std::to_string(y) +
                      ") is not within half a grid spacing of any node");
  // ties between a double node's copies: coordinates coincide, pick by side
  if (side == 'r') {
    for (const ContactPairRef& p : contact_pairs)
      if (p.left_node == best) return p.right_node;
  } else {
    for (const ContactPairRef& p : contact_pairs)
      if (p.right_node == best) return p.left_node;
  }
  return best;
}

namespace {

ElementCoords elem_coords(const Mesh& mesh, const std::array<int, 4>& conn) {
  ElementCoords c;
  for (int a = 0; a < 4; ++a) c[a] = mesh.nodes[conn[a]];
  return c;
}

// Scatter element matrices through a DOF index map (-1 entries are dropped).
void assemble_matrices(const Mesh& mesh, const Material& mat,
                       const std::vector<std::array<int, 2>>& dof, int n_dofs,
                       SparseSymMatrix& m_out, SparseSymMatrix& k_out) {
  m_out = SparseSymMatrix(n_dofs);
  k_out = SparseSymMatrix(n_dofs);
  for (const std::array<int, 4>& conn : mesh.elems) {
    const ElementCoords coords = elem_coords(mesh, conn);
    const DenseMatrix ke = element_stiffness(coords, mat);
    const DenseMatrix me = element_mass(coords, mat);
    int g[8];
    for (int a = 0; a < 4; ++a) {
      g[2 * a] = dof[conn[a]][0];
      g[2 * a + 1] = dof[conn[a]][1];
    }
    for (int r = 0; r < 8; ++r) {
      if (g[r] < 0) continue;
      for (int c = 0; c < 8; ++c) {
        if (g[c] < 0 || g[r] > g[c]) continue;  // upper triangle once
        k_out.add(g[r], g[c], ke(r, c));
        m_out.add(g[r], g[c], me(r, c));
      }
    }
  }
  m_out.finalize();
  k_out.finalize();
}

}  // namespace

void assemble_raw(const Mesh& mesh, const Material& mat, SparseSymMatrix& m_out,
                  SparseSymMatrix& k_out) {
  mat.validate();
  std::vector<std::array<int, 2>> dof(mesh.n_nodes());
  for (int n = 0; n < mesh.n_nodes(); ++n) dof[n] = {2 * n, 2 * n + 1};
  assemble_matrices(mesh, mat, dof, mesh.n_raw_dofs(), m_out, k_out);
}

ContactSystem assemble(const Mesh& mesh, const Material& mat, const LoadSpec& load) {
  mat.validate();
  if (mesh.spec.dirichlet_edges == 0)
    throw EmptyDirichlet("no Dirichlet edge: stiffness matrix would be singular");

  ContactSystem sys;
  sys.mesh = mesh;
  sys.material = mat;
  sys.load = load;
  sys.n_raw = mesh.n_raw_dofs();
  sys.contact_pairs = mesh.contact_pairs;

  sys.dof_map.assign(mesh.n_nodes(), {-1, -1});
  int next = 0;
  for (int n = 0; n < mesh.n_nodes(); ++n) {
    if (mesh.node_fixed[n]) continue;
    sys.dof_map[n][0] = next++;
    sys.dof_map[n][1] = next++;
  }
  sys.n_free = next;

  assemble_matrices(mesh, mat, sys.dof_map, sys.n_free, sys.M, sys.K);

  // constraint rows: gap_i = q[right, axis] - q[left, axis] + b_i
  std::vector<ConstraintMatrix::Row> rows;
  sys.b.clear();
  for (const ContactPairRef& p : mesh.contact_pairs) {
    const int plus = sys.dof_map[p.right_node][p.axis];
    const int minus = sys.dof_map[p.left_node][p.axis];
    if (plus < 0 || minus < 0) throw InvalidTear("contact pair touches a fixed DOF");
    rows.push_back(ConstraintMatrix::pair_row(plus, minus));
    sys.b.push_back(mesh.nodes[p.right_node][p.axis] - mesh.nodes[p.left_node][p.axis]);
  }
  sys.C = ConstraintMatrix(sys.n_free, std::move(rows));

  // nodal load pattern
  sys.load_pattern.assign(sys.n_free, 0.0);
  sys.load_node = sys.nearest_node(load.point[0], load.point[1], load.side);
  const std::array<double, 2> dir = load.unit_direction();
  for (int axis = 0; axis < 2; ++axis) {
    const int d = sys.dof_map[sys.load_node][axis];
    if (d < 0) throw ConfigError("load applied to a fixed node");
    sys.load_pattern[d] = dir[axis];
  }

  // consistent nodal loads of the constant body force: integral of N^T F
  sys.body_pattern.assign(sys.n_free, 0.0);
  if (load.body_force[0] != 0.0 || load.body_force[1] != 0.0) {
    for (const std::array<int, 4>& conn : mesh.elems) {
      const ElementCoords coords = elem_coords(mesh, conn);
      const DenseMatrix me = element_mass(coords, Material{1.0, mat.E, mat.nu, mat.thickness});
      // row sums of the unit-density mass matrix give integral of N_a
      for (int a = 0; a < 4; ++a) {
        double w = 0.0;
        for (int bcol = 0; bcol < 4; ++bcol) w += me(2 * a, 2 * bcol);
        for (int axis = 0; axis < 2; ++axis) {
          const int d = sys.dof_map[conn[a]][axis];
          if (d >= 0) sys.body_pattern[d] += w * load.body_force[axis];
        }
      }
    }
  }

  return sys;
}

}  // namespace contactmor
