#pragma once

#include <array>

#include "feplast/errors.hpp"
#include "feplast/voigt.hpp"

namespace feplast {

// Constant-strain kinematics of one P1 tetrahedron: eps = b_matrix * u with
// u the 12 nodal displacements (x,y,z per node) and eps in the engineering
// shear convention of StrainVoigt.
struct ElementGeometry {
  Eigen::Matrix<double, 6, 12> b_matrix;
  double volume = 0.0;
};

ElementGeometry element_geometry(const std::array<Vec3, 4>& coords, double vol_tol);

} // namespace feplast
