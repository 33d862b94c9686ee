#include "feplast/assembly.hpp"

namespace feplast {

namespace {

std::array<Vec3, 4> tet_coords(const LocalMesh& sub, int t) {
  const auto& tet = sub.tets[t];
  return {sub.nodes[tet[0]], sub.nodes[tet[1]], sub.nodes[tet[2]], sub.nodes[tet[3]]};
}

ElementGeometry geometry_for(const LocalMesh& sub, int t) {
  try {
    return element_geometry(tet_coords(sub, t), sub.vol_tol);
  } catch (const DegenerateElement& e) {
    const int global = t < static_cast<int>(sub.global_tet.size()) ? sub.global_tet[t] : t;
    throw DegenerateElement("element " + std::to_string(global) + ": " + e.what());
  }
}

void scatter_element(std::vector<Eigen::Triplet<double>>& triplets,
                     const std::array<int, 4>& tet,
                     const Eigen::Matrix<double, 12, 12>& ke) {
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          triplets.emplace_back(3 * tet[a] + i, 3 * tet[b] + j, ke(3 * a + i, 3 * b + j));
        }
      }
    }
  }
}

} // namespace

long SubdomainSystem::plastic_count() const {
  long n = 0;
  for (const auto& e : element_increments) n += e.plastic;
  return n;
}

SubdomainSystem assemble_subdomain(const LocalMesh& sub, const Eigen::VectorXd& du_local,
                                   const Eigen::VectorXd& df_local,
                                   std::span<const PlasticState> states,
                                   const MaterialParams& params) {
  const int n = sub.dof_count();

  SubdomainSystem sys;
  sys.rhs = df_local;
  sys.element_increments.resize(sub.tets.size());

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(sub.tets.size() * 144);

  for (size_t t = 0; t < sub.tets.size(); ++t) {
    const ElementGeometry geom = geometry_for(sub, static_cast<int>(t));
    const auto& tet = sub.tets[t];
    const PlasticState& state = states[sub.global_tet[t]];

    Eigen::Matrix<double, 12, 1> ue;
    for (int a = 0; a < 4; ++a) ue.segment<3>(3 * a) = du_local.segment<3>(3 * tet[a]);

    const StrainVoigt deps{geom.b_matrix * ue};
    const ReturnMapResult rm = return_mapping(state, deps, params);
    const TangentMatrix tangent = consistent_tangent(state, deps, params);
    sys.element_increments[t] = {rm.delta_sigma, rm.delta_kappa, rm.plastic};

    const Eigen::Matrix<double, 12, 1> fe =
        geom.volume * (geom.b_matrix.transpose() * rm.delta_sigma.v);
    for (int a = 0; a < 4; ++a) sys.rhs.segment<3>(3 * tet[a]) -= fe.segment<3>(3 * a);

    Eigen::Matrix<double, 12, 12> ke =
        geom.volume * (geom.b_matrix.transpose() * tangent * geom.b_matrix);
    ke = (0.5 * (ke + ke.transpose())).eval(); // exact symmetry
    scatter_element(triplets, tet, ke);
  }

  sys.stiffness.resize(n, n);
  sys.stiffness.setFromTriplets(triplets.begin(), triplets.end());
  return sys;
}

Eigen::SparseMatrix<double> assemble_elastic_stiffness(const LocalMesh& sub,
                                                       const MaterialParams& params) {
  const int n = sub.dof_count();
  const Mat6 c = hooke_matrix(params);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(sub.tets.size() * 144);
  for (size_t t = 0; t < sub.tets.size(); ++t) {
    const ElementGeometry geom = geometry_for(sub, static_cast<int>(t));
    Eigen::Matrix<double, 12, 12> ke =
        geom.volume * (geom.b_matrix.transpose() * c * geom.b_matrix);
    ke = (0.5 * (ke + ke.transpose())).eval();
    scatter_element(triplets, sub.tets[t], ke);
  }

  Eigen::SparseMatrix<double> k(n, n);
  k.setFromTriplets(triplets.begin(), triplets.end());
  return k;
}

Eigen::VectorXd traction_load(const LocalMesh& sub) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(sub.dof_count());
  for (const auto& face : sub.neumann) {
    const Vec3& a = sub.nodes[face.nodes[0]];
    const Vec3& b = sub.nodes[face.nodes[1]];
    const Vec3& c = sub.nodes[face.nodes[2]];
    const double area = 0.5 * (b - a).cross(c - a).norm();
    const Vec3 nodal = (area / 3.0) * face.traction;
    for (int v : face.nodes) f.segment<3>(3 * v) += nodal;
  }
  return f;
}

Eigen::VectorXd body_load(const LocalMesh& sub, const Vec3& force_per_volume) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(sub.dof_count());
  for (size_t t = 0; t < sub.tets.size(); ++t) {
    const ElementGeometry geom = geometry_for(sub, static_cast<int>(t));
    const Vec3 nodal = (geom.volume / 4.0) * force_per_volume;
    for (int v : sub.tets[t]) f.segment<3>(3 * v) += nodal;
  }
  return f;
}

} // namespace feplast
