#include "support/direct_oracle.hpp"

#include <vector>

#include "feplast/decomposition.hpp"
#include "support/assembly_oracle.hpp"

namespace feplast::testing {

Eigen::MatrixXd dense_global_stiffness(const Mesh& mesh, const MaterialParams& m) {
  // a single-subdomain decomposition is the identity mapping
  const Decomposition whole = partition(mesh, 1);
  return dense_elastic_oracle(whole.subdomains[0], m);
}

Eigen::VectorXd dense_direct_solve(const Mesh& mesh, const MaterialParams& m,
                                   const Eigen::VectorXd& load) {
  const Eigen::MatrixXd k = dense_global_stiffness(mesh, m);

  std::vector<Eigen::Index> free_dofs;
  for (Eigen::Index node = 0; node < static_cast<Eigen::Index>(mesh.nodes.size()); ++node)
    for (int c = 0; c < 3; ++c)
      if (!mesh.dirichlet[static_cast<std::size_t>(node)][static_cast<std::size_t>(c)])
        free_dofs.push_back(3 * node + c);

  const Eigen::Index nf = static_cast<Eigen::Index>(free_dofs.size());
  Eigen::MatrixXd k_ff(nf, nf);
  Eigen::VectorXd rhs(nf);
  for (Eigen::Index i = 0; i < nf; ++i) {
    rhs[i] = load[free_dofs[static_cast<std::size_t>(i)]];
    for (Eigen::Index j = 0; j < nf; ++j)
      k_ff(i, j) = k(free_dofs[static_cast<std::size_t>(i)], free_dofs[static_cast<std::size_t>(j)]);
  }

  const Eigen::VectorXd u_free = k_ff.ldlt().solve(rhs);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(k.rows());
  for (Eigen::Index i = 0; i < nf; ++i) u[free_dofs[static_cast<std::size_t>(i)]] = u_free[i];
  return u;
}

} // namespace feplast::testing
