#include "feplast/direct.hpp"

#include "feplast/errors.hpp"

namespace feplast {

DirectSolver::DirectSolver(const Decomposition& decomp, const Mesh& mesh)
    : decomp_(decomp) {
  const int s = decomp.subdomain_count();
  offsets_.assign(static_cast<std::size_t>(s) + 1, 0);
  for (int p = 0; p < s; ++p)
    offsets_[p + 1] = offsets_[p] + decomp.subdomains[p].dof_count();

  free_index_.assign(3 * mesh.nodes.size(), -1);
  for (std::size_t g = 0; g < mesh.nodes.size(); ++g)
    for (int c = 0; c < 3; ++c)
      if (!mesh.dirichlet[g][static_cast<std::size_t>(c)])
        free_index_[3 * g + static_cast<std::size_t>(c)] = free_count_++;
}

Eigen::VectorXd DirectSolver::solve(const std::vector<Eigen::SparseMatrix<double>>& blocks,
                                    const Eigen::VectorXd& torn_rhs) {
  if (static_cast<int>(blocks.size()) != decomp_.subdomain_count() ||
      torn_rhs.size() != offsets_.back())
    throw InvariantViolation("direct solver: block or rhs sizes disagree");

  std::vector<Eigen::Triplet<double>> entries;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(free_count_);
  for (int p = 0; p < decomp_.subdomain_count(); ++p) {
    const LocalMesh& sub = decomp_.subdomains[p];
    const auto& k = blocks[static_cast<std::size_t>(p)];
    for (Eigen::Index col = 0; col < k.cols(); ++col) {
      const Eigen::Index gc =
          free_index_[static_cast<std::size_t>(3 * sub.global_node[col / 3] + col % 3)];
      if (gc < 0) continue;
      for (Eigen::SparseMatrix<double>::InnerIterator it(k, col); it; ++it) {
        const Eigen::Index gr = free_index_[static_cast<std::size_t>(
            3 * sub.global_node[it.row() / 3] + it.row() % 3)];
        if (gr >= 0)
          entries.emplace_back(static_cast<int>(gr), static_cast<int>(gc), it.value());
      }
    }
    for (Eigen::Index dof = 0; dof < sub.dof_count(); ++dof) {
      const Eigen::Index g =
          free_index_[static_cast<std::size_t>(3 * sub.global_node[dof / 3] + dof % 3)];
      if (g >= 0) rhs[g] += torn_rhs[offsets_[p] + dof];
    }
  }

  Eigen::SparseMatrix<double> k_ff(free_count_, free_count_);
  k_ff.setFromTriplets(entries.begin(), entries.end());
  k_ff.makeCompressed();

  if (!analyzed_) {
    factorization_.analyzePattern(k_ff);
    analyzed_ = true;
  }
  factorization_.factorize(k_ff);
  if (factorization_.info() != Eigen::Success)
    throw FactorizationFailure("global stiffness factorization failed");
  const Eigen::VectorXd u_free = factorization_.solve(rhs);

  Eigen::VectorXd torn = Eigen::VectorXd::Zero(torn_rhs.size());
  for (int p = 0; p < decomp_.subdomain_count(); ++p) {
    const LocalMesh& sub = decomp_.subdomains[p];
    for (Eigen::Index dof = 0; dof < sub.dof_count(); ++dof) {
      const Eigen::Index g =
          free_index_[static_cast<std::size_t>(3 * sub.global_node[dof / 3] + dof % 3)];
      if (g >= 0) torn[offsets_[p] + dof] = u_free[g];
    }
  }
  return torn;
}

} // namespace feplast
