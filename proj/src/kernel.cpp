#include "feplast/kernel.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <vector>

#include <Eigen/LU>
#include <Eigen/QR>

#include "feplast/errors.hpp"

namespace feplast {

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Tets glued across a shared triangular face move rigidly as one body; a
// subdomain may decompose into several such bodies touching only along an
// edge or a vertex, which leaves extra hinge rotations in the kernel.
std::vector<int> face_components(const LocalMesh& sub, int& count) {
  DisjointSets sets(static_cast<int>(sub.tets.size()));
  std::map<std::array<int, 3>, int> first_owner;
  for (std::size_t e = 0; e < sub.tets.size(); ++e)
    for (int drop = 0; drop < 4; ++drop) {
      std::array<int, 3> face{};
      int w = 0;
      for (int a = 0; a < 4; ++a)
        if (a != drop) face[static_cast<std::size_t>(w++)] = sub.tets[e][static_cast<std::size_t>(a)];
      std::sort(face.begin(), face.end());
      auto [it, fresh] = first_owner.try_emplace(face, static_cast<int>(e));
      if (!fresh) sets.unite(static_cast<int>(e), it->second);
    }

  std::vector<int> label(sub.tets.size());
  std::map<int, int> compact;
  for (std::size_t e = 0; e < sub.tets.size(); ++e) {
    auto [it, fresh] = compact.try_emplace(sets.find(static_cast<int>(e)),
                                           static_cast<int>(compact.size()));
    label[e] = it->second;
  }
  count = static_cast<int>(compact.size());
  return label;
}

// Displacement of a rigid motion (a, omega) at offset r, as a matrix acting
// on the stacked coefficients: u = a + omega cross r.
Eigen::Matrix<double, 3, 6> rigid_motion_rows(const Vec3& r) {
  Eigen::Matrix<double, 3, 6> rows = Eigen::Matrix<double, 3, 6>::Zero();
  rows.leftCols<3>().setIdentity();
  rows(0, 4) = r.z();
  rows(0, 5) = -r.y();
  rows(1, 3) = -r.z();
  rows(1, 5) = r.x();
  rows(2, 3) = r.y();
  rows(2, 4) = -r.x();
  return rows;
}

Eigen::MatrixXd orthonormalized(const Eigen::MatrixXd& raw) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
  return qr.householderQ() * Eigen::MatrixXd::Identity(raw.rows(), raw.cols());
}

} // namespace

Eigen::MatrixXd rigid_body_modes(const LocalMesh& sub) {
  const Eigen::Index n = sub.dof_count();
  if (n == 0) throw InvariantViolation("rigid body modes of an empty subdomain");

  Vec3 centroid = Vec3::Zero();
  for (const Vec3& x : sub.nodes) centroid += x;
  centroid /= static_cast<double>(sub.nodes.size());

  int body_count = 0;
  const std::vector<int> body_of_tet = face_components(sub, body_count);

  if (body_count == 1) {
    Eigen::MatrixXd raw(n, 6);
    for (std::size_t a = 0; a < sub.nodes.size(); ++a)
      raw.middleRows<3>(3 * static_cast<Eigen::Index>(a)) =
          rigid_motion_rows(sub.nodes[a] - centroid);
    return orthonormalized(raw);
  }

  std::vector<std::vector<int>> bodies_of_node(sub.nodes.size());
  for (std::size_t e = 0; e < sub.tets.size(); ++e)
    for (int corner : sub.tets[e]) {
      std::vector<int>& bodies = bodies_of_node[static_cast<std::size_t>(corner)];
      if (std::find(bodies.begin(), bodies.end(), body_of_tet[e]) == bodies.end())
        bodies.push_back(body_of_tet[e]);
    }

  // per-body rigid coefficients, forced to agree wherever bodies share a node
  Eigen::Index agreement_rows = 0;
  for (const std::vector<int>& bodies : bodies_of_node)
    agreement_rows += 3 * static_cast<Eigen::Index>(bodies.size() - 1);
  Eigen::MatrixXd agreement = Eigen::MatrixXd::Zero(agreement_rows, 6 * body_count);
  Eigen::Index row = 0;
  for (std::size_t a = 0; a < sub.nodes.size(); ++a) {
    const std::vector<int>& bodies = bodies_of_node[a];
    const Eigen::Matrix<double, 3, 6> motion = rigid_motion_rows(sub.nodes[a] - centroid);
    for (std::size_t j = 1; j < bodies.size(); ++j) {
      agreement.block<3, 6>(row, 6 * bodies[0]) = motion;
      agreement.block<3, 6>(row, 6 * bodies[j]) = -motion;
      row += 3;
    }
  }

  Eigen::MatrixXd coefficients;
  if (agreement_rows == 0) {
    coefficients = Eigen::MatrixXd::Identity(6 * body_count, 6 * body_count);
  } else {
    coefficients = Eigen::FullPivLU<Eigen::MatrixXd>(agreement).kernel();
  }

  Eigen::MatrixXd raw(n, coefficients.cols());
  for (std::size_t a = 0; a < sub.nodes.size(); ++a) {
    const int body = bodies_of_node[a].front();
    raw.middleRows<3>(3 * static_cast<Eigen::Index>(a)) =
        rigid_motion_rows(sub.nodes[a] - centroid) * coefficients.middleRows<6>(6 * body);
  }
  return orthonormalized(raw);
}

} // namespace feplast
