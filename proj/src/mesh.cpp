#include "feplast/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

namespace feplast {

namespace {

double tet_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return (b - a).cross(c - a).dot(d - a) / 6.0;
}

std::array<int, 3> sorted_face(int a, int b, int c) {
  std::array<int, 3> f{a, b, c};
  std::sort(f.begin(), f.end());
  return f;
}

// multiset of tet faces: sorted triple -> number of adjacent tets
std::map<std::array<int, 3>, int> face_counts(const Mesh& mesh) {
  std::map<std::array<int, 3>, int> counts;
  for (const auto& t : mesh.tets) {
    ++counts[sorted_face(t[0], t[1], t[2])];
    ++counts[sorted_face(t[0], t[1], t[3])];
    ++counts[sorted_face(t[0], t[2], t[3])];
    ++counts[sorted_face(t[1], t[2], t[3])];
  }
  return counts;
}

} // namespace

double Mesh::volume() const {
  double v = 0.0;
  for (const auto& t : tets) {
    v += tet_volume(nodes[t[0]], nodes[t[1]], nodes[t[2]], nodes[t[3]]);
  }
  return v;
}

double Mesh::bbox_diagonal() const {
  if (nodes.empty()) return 0.0;
  Vec3 lo = nodes.front(), hi = nodes.front();
  for (const auto& p : nodes) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

double Mesh::volume_tolerance() const {
  const double diag = bbox_diagonal();
  return 1e-12 * diag * diag * diag;
}

void Mesh::validate() const {
  if (nodes.empty() || tets.empty()) {
    throw InvariantViolation("mesh must contain nodes and tets");
  }
  if (dirichlet.size() != nodes.size()) {
    throw InvariantViolation("dirichlet flag table size differs from node count");
  }

  const int n = static_cast<int>(nodes.size());
  for (const auto& t : tets) {
    for (int v : t) {
      if (v < 0 || v >= n) throw InvariantViolation("tet references missing node");
    }
    if (t[0] == t[1] || t[0] == t[2] || t[0] == t[3] || t[1] == t[2] ||
        t[1] == t[3] || t[2] == t[3]) {
      throw InvariantViolation("tet repeats a node");
    }
    if (tet_volume(nodes[t[0]], nodes[t[1]], nodes[t[2]], nodes[t[3]]) <= 0.0) {
      throw InvariantViolation("tet has non-positive signed volume");
    }
  }

  const auto counts = face_counts(*this);
  for (const auto& f : neumann) {
    for (int v : f.nodes) {
      if (v < 0 || v >= n) throw InvariantViolation("neumann face references missing node");
    }
    const auto it = counts.find(sorted_face(f.nodes[0], f.nodes[1], f.nodes[2]));
    if (it == counts.end() || it->second != 1) {
      throw InvariantViolation("neumann face is not a boundary face of exactly one tet");
    }
  }

  bool constrained = false;
  for (const auto& d : dirichlet) constrained = constrained || d[0] || d[1] || d[2];
  if (!constrained) {
    throw InvariantViolation("mesh has no constrained node component");
  }
}

namespace {

// The six tets of the unit cube sharing the main diagonal: walk the cube
// edges in each axis order. Odd orders need a vertex swap for positive
// orientation; decided combinatorially so mapped cells inherit it.
struct CubeTet {
  std::array<std::array<int, 3>, 4> corners;
};

std::array<CubeTet, 6> cube_tets() {
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::array<CubeTet, 6> out;
  for (int p = 0; p < 6; ++p) {
    std::array<std::array<int, 3>, 4> v{};
    v[0] = {0, 0, 0};
    for (int step = 0; step < 3; ++step) {
      v[step + 1] = v[step];
      v[step + 1][perms[p][step]] = 1;
    }
    const int inversions = (perms[p][0] > perms[p][1]) + (perms[p][0] > perms[p][2]) +
                           (perms[p][1] > perms[p][2]);
    if (inversions % 2 == 1) std::swap(v[2], v[3]);
    out[p].corners = v;
  }
  return out;
}

bool on_plane(double coord, double target, double tol) {
  return std::abs(coord - target) <= tol;
}

// Tag Dirichlet components and collect traction faces once nodes/tets exist.
void apply_plane_selectors(Mesh& mesh, const std::vector<BoxConstraint>& constraints,
                           const std::vector<BoxTraction>& tractions, const Vec3& lo,
                           const Vec3& hi) {
  const double tol = 1e-9 * std::max(1.0, (hi - lo).norm());
  auto plane_coord = [&](const FacePlane& f) { return f.max_side ? hi[f.axis] : lo[f.axis]; };

  mesh.dirichlet.assign(mesh.nodes.size(), {false, false, false});
  for (const auto& c : constraints) {
    const double target = plane_coord(c.face);
    for (size_t i = 0; i < mesh.nodes.size(); ++i) {
      if (on_plane(mesh.nodes[i][c.face.axis], target, tol)) {
        for (int k = 0; k < 3; ++k) mesh.dirichlet[i][k] = mesh.dirichlet[i][k] || c.fix[k];
      }
    }
  }

  for (const auto& t : tractions) {
    const double target = plane_coord(t.face);
    auto face_on_plane = [&](int a, int b, int c) {
      return on_plane(mesh.nodes[a][t.face.axis], target, tol) &&
             on_plane(mesh.nodes[b][t.face.axis], target, tol) &&
             on_plane(mesh.nodes[c][t.face.axis], target, tol);
    };
    for (const auto& tet : mesh.tets) {
      const int faces[4][3] = {{tet[0], tet[1], tet[2]},
                               {tet[0], tet[1], tet[3]},
                               {tet[0], tet[2], tet[3]},
                               {tet[1], tet[2], tet[3]}};
      for (const auto& f : faces) {
        if (face_on_plane(f[0], f[1], f[2])) {
          mesh.neumann.push_back({{f[0], f[1], f[2]}, t.traction});
        }
      }
    }
  }
}

} // namespace

Mesh generate_box_mesh(const Vec3& dims, const std::array<int, 3>& divisions,
                       const std::vector<BoxConstraint>& constraints,
                       const std::vector<BoxTraction>& tractions) {
  if (!(dims[0] > 0.0) || !(dims[1] > 0.0) || !(dims[2] > 0.0)) {
    throw DegenerateBox("box dimensions must be positive");
  }
  if (divisions[0] < 1 || divisions[1] < 1 || divisions[2] < 1) {
    throw DegenerateBox("box needs at least one division per axis");
  }

  const int nx = divisions[0], ny = divisions[1], nz = divisions[2];
  auto node_id = [&](int i, int j, int k) { return i + (nx + 1) * (j + (ny + 1) * k); };

  Mesh mesh;
  mesh.nodes.reserve((nx + 1) * (ny + 1) * (nz + 1));
  for (int k = 0; k <= nz; ++k) {
    for (int j = 0; j <= ny; ++j) {
      for (int i = 0; i <= nx; ++i) {
        // multiply-then-divide lands exactly on the far faces
        mesh.nodes.emplace_back(dims[0] * i / nx, dims[1] * j / ny, dims[2] * k / nz);
      }
    }
  }

  const auto split = cube_tets();
  mesh.tets.reserve(6 * nx * ny * nz);
  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        for (const auto& tet : split) {
          std::array<int, 4> ids;
          for (int v = 0; v < 4; ++v) {
            const auto& c = tet.corners[v];
            ids[v] = node_id(i + c[0], j + c[1], k + c[2]);
          }
          mesh.tets.push_back(ids);
        }
      }
    }
  }

  apply_plane_selectors(mesh, constraints, tractions, Vec3::Zero(), dims);
  return mesh;
}

Mesh generate_plate_with_hole(const Vec3& outer, double hole_radius, int refinement) {
  const double half_x = outer[0] / 2.0, half_y = outer[1] / 2.0, half_z = outer[2] / 2.0;
  if (!(outer[0] > 0.0) || !(outer[1] > 0.0) || !(outer[2] > 0.0) ||
      !(hole_radius > 0.0)) {
    throw InvalidGeometry("plate sizes and hole radius must be positive");
  }
  if (!(hole_radius < std::min(half_x, half_y))) {
    throw InvalidGeometry("hole radius must stay inside the plate quarter");
  }
  if (refinement < 1) {
    throw InvalidGeometry("refinement must be at least 1");
  }

  const int nt = 4 * refinement; // angular cells, hole to outer rim ordering
  const int nr = 4 * refinement; // radial cells
  const int nzc = std::max(1, refinement);

  // The outer rim walks the two far edges; the corner is pinned to a grid
  // line so the rim is reproduced exactly.
  const int corner = std::clamp(
      static_cast<int>(std::lround(nt * half_y / (half_x + half_y))), 1, nt - 1);
  auto rim_point = [&](int j) -> Vec3 {
    if (j <= corner) return {half_x, half_y * j / corner, 0.0};
    return {half_x * (nt - j) / (nt - corner), half_y, 0.0};
  };
  auto hole_point = [&](int j) -> Vec3 {
    if (j == 0) return {hole_radius, 0.0, 0.0};
    if (j == nt) return {0.0, hole_radius, 0.0};
    const double theta = std::numbers::pi / 2.0 * j / nt;
    return {hole_radius * std::cos(theta), hole_radius * std::sin(theta), 0.0};
  };

  Mesh mesh;
  auto node_id = [&](int j, int i, int k) {
    return j + (nt + 1) * (i + (nr + 1) * k);
  };
  mesh.nodes.reserve((nt + 1) * (nr + 1) * (nzc + 1));
  for (int k = 0; k <= nzc; ++k) {
    const double z = half_z * k / nzc;
    for (int i = 0; i <= nr; ++i) {
      const double eta = static_cast<double>(i) / nr;
      for (int j = 0; j <= nt; ++j) {
        const Vec3 xy = (1.0 - eta) * hole_point(j) + eta * rim_point(j);
        mesh.nodes.emplace_back(xy[0], xy[1], z);
      }
    }
  }

  // logical axes ordered (radial, angular, z) so the mapped frame stays
  // right-handed; tangential-first would invert every cell
  const auto split = cube_tets();
  for (int k = 0; k < nzc; ++k) {
    for (int i = 0; i < nr; ++i) {
      for (int j = 0; j < nt; ++j) {
        for (const auto& tet : split) {
          std::array<int, 4> ids;
          for (int v = 0; v < 4; ++v) {
            const auto& c = tet.corners[v];
            ids[v] = node_id(j + c[1], i + c[0], k + c[2]);
          }
          const double vol = tet_volume(mesh.nodes[ids[0]], mesh.nodes[ids[1]],
                                        mesh.nodes[ids[2]], mesh.nodes[ids[3]]);
          if (!(vol > 0.0)) {
            throw InvalidGeometry("hole blend produced an inverted element; "
                                  "geometry too distorted for this refinement");
          }
          mesh.tets.push_back(ids);
        }
      }
    }
  }

  const Vec3 block(half_x, half_y, half_z);
  apply_plane_selectors(mesh,
                        {{{0, false}, {true, false, false}},   // x = 0 symmetry
                         {{1, false}, {false, true, false}},   // y = 0 symmetry
                         {{2, false}, {false, false, true}}},  // z = 0 symmetry
                        {{{0, true}, Vec3(1.0, 0.0, 0.0)}},    // pull on x = half_x
                        Vec3::Zero(), block);
  mesh.validate();
  return mesh;
}

void LoadProgram::validate() const {
  if (time_grid.size() < 2) {
    throw InvariantViolation("load program needs at least two time points");
  }
  for (size_t i = 1; i < time_grid.size(); ++i) {
    if (!(time_grid[i] > time_grid[i - 1])) {
      throw InvariantViolation("load program time grid must strictly increase");
    }
  }
  if (!traction_scale || !body_force) {
    throw InvariantViolation("load program functions must be set");
  }
}

} // namespace feplast
