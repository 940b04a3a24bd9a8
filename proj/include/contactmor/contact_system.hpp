#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "contactmor/mesh.hpp"
#include "contactmor/sparse_matrix.hpp"
#include "contactmor/vector_ops.hpp"

namespace contactmor {

/// Sparse constraint matrix, one row per contact condition. Mesh assembly
/// produces rows with exactly two nonzeros: +1 on the right node's DOF and
/// -1 on the left node's DOF of a double-node pair, so that the gap
/// C q + b opens positive. Arbitrary sparse rows are allowed for synthetic
/// systems.
class ConstraintMatrix {
 public:
  struct Entry {
    int col;
    double val;
  };
  using Row = std::vector<Entry>;

  ConstraintMatrix() = default;
  ConstraintMatrix(int n_cols, std::vector<Row> rows) : n_(n_cols), rows_(std::move(rows)) {}

  /// The node-to-node form: +1 at plus_col, -1 at minus_col.
  static Row pair_row(int plus_col, int minus_col) {
    return Row{{plus_col, 1.0}, {minus_col, -1.0}};
  }

  int m() const { return int(rows_.size()); }
  int n() const { return n_; }
  const std::vector<Row>& rows() const { return rows_; }

  /// C q
  Vector apply(const Vector& q) const;
  /// C^T lambda
  Vector applyT(const Vector& lam) const;
  /// C X for dense X (n x k) -> (m x k)
  DenseMatrix apply_dense(const DenseMatrix& x) const;
  /// C^T as dense (n x m) right-hand-side block
  DenseMatrix denseT() const;

  std::vector<Triplet> triplets() const;

 private:
  int n_ = 0;
  std::vector<Row> rows_;
};

struct LoadSpec {
  enum class Kind { Load1, Load2, Custom };
  Kind kind = Kind::Load1;
  std::array<double, 2> point{1.0, 1.0};  // nodal load position (snapped to a node)
  char side = 'l';                        // which copy of a double node to load
  // Custom only:
  std::array<double, 2> direction{1.0, 0.0};
  double amplitude = 1.5;
  double omega = 0.1 * M_PI;  // 0 means a constant load

  std::array<double, 2> body_force{0.0, 0.0};  // constant volume force (per area)

  /// Unit spatial direction of the nodal force.
  std::array<double, 2> unit_direction() const;
  /// Scalar amplitude at time t multiplying the unit direction.
  double amplitude_at(double t) const;
};

/// Assembled semi-discrete contact model on the free DOFs.
struct ContactSystem {
  Mesh mesh;
  Material material;
  LoadSpec load;

  int n_raw = 0;   // DOFs before Dirichlet elimination
  int n_free = 0;  // DOFs after elimination

  SparseSymMatrix M;  // SPD
  SparseSymMatrix K;  // SPD after elimination
  ConstraintMatrix C;
  Vector b;  // initial clearance, one entry per contact pair

  /// node -> free DOF index per axis, -1 when fixed
  std::vector<std::array<int, 2>> dof_map;
  std::vector<ContactPairRef> contact_pairs;

  Vector load_pattern;  // unit-direction nodal pattern on free DOFs
  Vector body_pattern;  // consistent nodal load of the constant body force
  int load_node = -1;

  int m() const { return C.m(); }

  /// f(t) = pattern * amplitude(t) + body pattern
  Vector load_vector(double t) const;

  /// Spatial seed for reduction bases (amplitude-independent). Falls back to
  /// the body-force pattern when no nodal load is present.
  const Vector& load_seed() const;

  /// Nearest mesh node to (x, y); rejects matches farther than half a grid
  /// spacing. `side` picks the copy of a double node ('l' original, 'r'
  /// duplicate).
  int nearest_node(double x, double y, char side = 'l') const;
};

/// Assemble M, K on free DOFs, the constraint
/// matrix and clearance from the mesh's contact pairs, and resolve the load.
/// Throws EmptyDirichlet when no edge is fixed.
ContactSystem assemble(const Mesh& mesh, const Material& mat, const LoadSpec& load);

/// Raw global matrices without Dirichlet elimination (patch/rigid-body and
/// total-mass checks run on these).
void assemble_raw(const Mesh& mesh, const Material& mat, SparseSymMatrix& m_out,
                  SparseSymMatrix& k_out);

}  // namespace contactmor
