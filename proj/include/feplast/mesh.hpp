#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "feplast/errors.hpp"
#include "feplast/voigt.hpp"

namespace feplast {

struct NeumannFace {
  std::array<int, 3> nodes;
  Vec3 traction = Vec3::Zero(); // per unit area, at unit load scale
};

// Linear tetrahedral mesh with per-component Dirichlet flags (symmetry planes
// are just single-component constraints) and traction faces.
struct Mesh {
  std::vector<Vec3> nodes;
  std::vector<std::array<int, 4>> tets;
  std::vector<std::array<bool, 3>> dirichlet; // size nodes.size()
  std::vector<NeumannFace> neumann;

  double volume() const;
  double bbox_diagonal() const;
  // scale-aware degeneracy guard handed to the element routines
  double volume_tolerance() const;
  void validate() const; // throws InvariantViolation
};

// Selects one of the six axis-aligned boundary planes of a box.
struct FacePlane {
  int axis = 0;
  bool max_side = false;
};

struct BoxConstraint {
  FacePlane face;
  std::array<bool, 3> fix{false, false, false};
};

struct BoxTraction {
  FacePlane face;
  Vec3 traction = Vec3::Zero();
};

// Structured box: divisions per axis, each hexahedral cell split into six
// tets along the main diagonal (deterministic and conforming).
Mesh generate_box_mesh(const Vec3& dims, const std::array<int, 3>& divisions,
                       const std::vector<BoxConstraint>& constraints,
                       const std::vector<BoxTraction>& tractions);

// One eighth of a plate with a centered circular hole, meshed as a polar
// blend between the hole circle and the outer rectangle edges. Symmetry
// planes x=0, y=0, z=0 are constrained in their normal components, the
// outer x-face carries a unit normal traction. `outer` holds the full plate
// sizes; the generated block is the positive octant half of each.
Mesh generate_plate_with_hole(const Vec3& outer, double hole_radius, int refinement);

Mesh read_mesh(const std::string& path);
void write_mesh(const Mesh& mesh, const std::string& path);

// Time grid plus load scaling: surface tractions scale by traction_scale(t),
// volume loads are body_force(t) per unit volume.
struct LoadProgram {
  std::vector<double> time_grid;
  std::function<double(double)> traction_scale;
  std::function<Vec3(double)> body_force;

  void validate() const; // throws InvariantViolation
  int steps() const { return static_cast<int>(time_grid.size()) - 1; }
};

} // namespace feplast
