#include "feplast/element.hpp"

namespace feplast {

ElementGeometry element_geometry(const std::array<Vec3, 4>& coords, double vol_tol) {
  Eigen::Matrix3d jac;
  jac.col(0) = coords[1] - coords[0];
  jac.col(1) = coords[2] - coords[0];
  jac.col(2) = coords[3] - coords[0];

  ElementGeometry g;
  g.volume = jac.determinant() / 6.0;
  if (!(g.volume > vol_tol)) {
    throw DegenerateElement("tet volume " + std::to_string(g.volume) +
                            " at or below tolerance " + std::to_string(vol_tol));
  }

  // gradients of the barycentric shape functions: rows of J^-1 for the three
  // corner functions, first one balances them to zero sum
  const Eigen::Matrix3d inv = jac.inverse();
  std::array<Vec3, 4> grad;
  for (int a = 1; a < 4; ++a) grad[a] = inv.row(a - 1).transpose();
  grad[0] = -(grad[1] + grad[2] + grad[3]);

  g.b_matrix.setZero();
  for (int a = 0; a < 4; ++a) {
    const int cx = 3 * a, cy = 3 * a + 1, cz = 3 * a + 2;
    g.b_matrix(0, cx) = grad[a][0];
    g.b_matrix(1, cy) = grad[a][1];
    g.b_matrix(2, cz) = grad[a][2];
    g.b_matrix(3, cx) = grad[a][1]; // engineering shear 2*eps12
    g.b_matrix(3, cy) = grad[a][0];
    g.b_matrix(4, cy) = grad[a][2]; // 2*eps23
    g.b_matrix(4, cz) = grad[a][1];
    g.b_matrix(5, cx) = grad[a][2]; // 2*eps13
    g.b_matrix(5, cz) = grad[a][0];
  }
  return g;
}

} // namespace feplast
