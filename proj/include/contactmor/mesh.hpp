#pragma once

#include <array>
#include <string>
#include <vector>

#include "contactmor/errors.hpp"

namespace contactmor {

struct Material {
  double rho = 1.0;        // mass density
  double E = 1000.0;       // Young's modulus
  double nu = 0.3;         // Poisson's ratio, -1 < nu < 0.5
  double thickness = 1.0;  // plane-stress thickness

  void validate() const {
    if (!(E > 0.0)) throw ConfigError("material: E must be > 0");
    if (!(nu > -1.0 && nu < 0.5)) throw ConfigError("material: nu must be in (-1, 0.5)");
    if (!(rho > 0.0)) throw ConfigError("material: rho must be > 0");
    if (!(thickness > 0.0)) throw ConfigError("material: thickness must be > 0");
  }
};

enum Edge : unsigned { EdgeLeft = 1, EdgeRight = 2, EdgeBottom = 4, EdgeTop = 8 };

/// Structured quadrilateral mesh of an axis-aligned rectangle with optional
/// contact tears. A tear is a straight run of grid vertices on a shared grid
/// line; each listed vertex is duplicated into a double node so the two sides
/// can separate. Coordinates must sit on grid lines (checked on build).
struct MeshSpec {
  int nx = 1, ny = 1;
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;

  struct Tear {
    char orientation = 'v';  // 'v': vertical line x = line, 'h': horizontal y = line
    double line = 0.0;       // coordinate of the grid line the tear sits on
    double from = 0.0, to = 0.0;  // coordinate range along the line, inclusive
  };
  std::vector<Tear> tears;

  unsigned dirichlet_edges = EdgeLeft;

  double dx() const { return (x1 - x0) / nx; }
  double dy() const { return (y1 - y0) / ny; }
};

struct ContactPairRef {
  int left_node;   // original vertex (negative side of the tear line)
  int right_node;  // duplicate (positive side)
  int axis;        // 0 = x (vertical tear), 1 = y (horizontal tear)
};

struct Mesh {
  MeshSpec spec;
  std::vector<std::array<double, 2>> nodes;
  std::vector<std::array<int, 4>> elems;  // counter-clockwise corner nodes
  std::vector<ContactPairRef> contact_pairs;
  std::vector<char> node_fixed;  // Dirichlet flag, both components

  int n_nodes() const { return int(nodes.size()); }
  int n_raw_dofs() const { return 2 * n_nodes(); }
};

/// Throws InvalidTear when a tear vertex is off-grid, outside the domain
/// interior, on a Dirichlet edge, or duplicated by another tear.
Mesh build_mesh(const MeshSpec& spec);

/// Plain-text export (node coordinates, element connectivity, contact pairs)
/// for external visualization.
void write_mesh_text(const Mesh& mesh, const std::string& path);

}  // namespace contactmor
