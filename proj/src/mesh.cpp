#include "contactmor/mesh.hpp"

#include <cmath>
#include <cstdio>

namespace contactmor {

namespace {

// Snap a coordinate to its grid index; InvalidTear when off-grid.
int snap_index(double coord, double origin, double spacing, int max_index, const char* what) {
  const double s = (coord - origin) / spacing;
  const int idx = int(std::lround(s));
  if (idx < 0 || idx > max_index || std::abs(s - idx) > 1e-6)
    throw InvalidTear(std::string("tear ") + what + " coordinate " + std::to_string(coord) +
                      " is not on a mesh grid line");
  return idx;
}

}  // namespace

Mesh build_mesh(const MeshSpec& spec) {
  if (spec.nx < 1 || spec.ny < 1) throw ConfigError("mesh: nx and ny must be >= 1");
  if (!(spec.x1 > spec.x0 && spec.y1 > spec.y0)) throw ConfigError("mesh: empty domain");

  const int nvx = spec.nx + 1, nvy = spec.ny + 1;
  auto grid = [&](int i, int j) { return j * nvx + i; };
  auto on_fixed_edge = [&](int i, int j) {
    return ((spec.dirichlet_edges & EdgeLeft) && i == 0) ||
           ((spec.dirichlet_edges & EdgeRight) && i == spec.nx) ||
           ((spec.dirichlet_edges & EdgeBottom) && j == 0) ||
           ((spec.dirichlet_edges & EdgeTop) && j == spec.ny);
  };

  // Resolve tears to grid indices and mark duplicated vertices.
  struct TearIdx {
    char orient;
    int line, from, to;
  };
  std::vector<TearIdx> tears;
  std::vector<char> dup_orient(nvx * nvy, 0);
  for (const MeshSpec::Tear& t : spec.tears) {
    TearIdx ti{};
    ti.orient = t.orientation;
    if (t.orientation == 'v') {
      ti.line = snap_index(t.line, spec.x0, spec.dx(), spec.nx, "line");
      ti.from = snap_index(std::min(t.from, t.to), spec.y0, spec.dy(), spec.ny, "endpoint");
      ti.to = snap_index(std::max(t.from, t.to), spec.y0, spec.dy(), spec.ny, "endpoint");
      if (ti.line < 1 || ti.line > spec.nx - 1)
        throw InvalidTear("vertical tear line must be an interior grid line");
    } else if (t.orientation == 'h') {
      ti.line = snap_index(t.line, spec.y0, spec.dy(), spec.ny, "line");
      ti.from = snap_index(std::min(t.from, t.to), spec.x0, spec.dx(), spec.nx, "endpoint");
      ti.to = snap_index(std::max(t.from, t.to), spec.x0, spec.dx(), spec.nx, "endpoint");
      if (ti.line < 1 || ti.line > spec.ny - 1)
        throw InvalidTear("horizontal tear line must be an interior grid line");
    } else {
      throw InvalidTear("tear orientation must be 'v' or 'h'");
    }
    for (int k = ti.from; k <= ti.to; ++k) {
      const int i = ti.orient == 'v' ? ti.line : k;
      const int j = ti.orient == 'v' ? k : ti.line;
      if (on_fixed_edge(i, j)) throw InvalidTear("tear vertex lies on a Dirichlet edge");
      if (dup_orient[grid(i, j)]) throw InvalidTear("tears overlap at a vertex");
      dup_orient[grid(i, j)] = ti.orient;
    }
    tears.push_back(ti);
  }

  Mesh mesh;
  mesh.spec = spec;

  // Number nodes row by row; a duplicate follows its original immediately so
  // the stiffness bandwidth stays small.
  std::vector<int> orig_id(nvx * nvy, -1), dup_id(nvx * nvy, -1);
  for (int j = 0; j < nvy; ++j) {
    for (int i = 0; i < nvx; ++i) {
      const double x = spec.x0 + i * spec.dx();
      const double y = spec.y0 + j * spec.dy();
      orig_id[grid(i, j)] = mesh.n_nodes();
      mesh.nodes.push_back({x, y});
      mesh.node_fixed.push_back(on_fixed_edge(i, j) ? 1 : 0);
      if (dup_orient[grid(i, j)]) {
        dup_id[grid(i, j)] = mesh.n_nodes();
        mesh.nodes.push_back({x, y});
        mesh.node_fixed.push_back(0);
      }
    }
  }

  // Elements; a corner on a tear line picks the duplicate when the element
  // lies on the positive side (+x for vertical tears, +y for horizontal).
  for (int j = 0; j < spec.ny; ++j) {
    for (int i = 0; i < spec.nx; ++i) {
      const int ci[4] = {i, i + 1, i + 1, i};
      const int cj[4] = {j, j, j + 1, j + 1};
      std::array<int, 4> conn{};
      for (int c = 0; c < 4; ++c) {
        const int g = grid(ci[c], cj[c]);
        int id = orig_id[g];
        if (dup_id[g] >= 0) {
          const bool positive_side = dup_orient[g] == 'v' ? (i == ci[c]) : (j == cj[c]);
          if (positive_side) id = dup_id[g];
        }
        conn[c] = id;
      }
      mesh.elems.push_back(conn);
    }
  }

  // Contact pairs in tear order, walking each tear from its low end.
  for (const TearIdx& t : tears) {
    for (int k = t.from; k <= t.to; ++k) {
      const int i = t.orient == 'v' ? t.line : k;
      const int j = t.orient == 'v' ? k : t.line;
      const int g = grid(i, j);
      mesh.contact_pairs.push_back({orig_id[g], dup_id[g], t.orient == 'v' ? 0 : 1});
    }
  }

  return mesh;
}

void write_mesh_text(const Mesh& mesh, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw Error("cannot open " + path);
  std::fprintf(f, "nodes %d\n", mesh.n_nodes());
  for (int n = 0; n < mesh.n_nodes(); ++n)
    std::fprintf(f, "%d %.17g %.17g %d\n", n, mesh.nodes[n][0], mesh.nodes[n][1],
                 int(mesh.node_fixed[n]));
  std::fprintf(f, "elements %zu\n", mesh.elems.size());
  for (std::size_t e = 0; e < mesh.elems.size(); ++e)
    std::fprintf(f, "%zu %d %d %d %d\n", e, mesh.elems[e][0], mesh.elems[e][1], mesh.elems[e][2],
                 mesh.elems[e][3]);
  std::fprintf(f, "contact_pairs %zu\n", mesh.contact_pairs.size());
  for (std::size_t p = 0; p < mesh.contact_pairs.size(); ++p)
    std::fprintf(f, "%zu %d %d %d\n", p, mesh.contact_pairs[p].left_node,
                 mesh.contact_pairs[p].right_node, mesh.contact_pairs[p].axis);
  std::fclose(f);
}

}  // namespace contactmor
