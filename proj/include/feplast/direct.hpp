#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "feplast/decomposition.hpp"
#include "feplast/mesh.hpp"

namespace feplast {

// Monolithic alternative to the dual solver: accumulates the subdomain
// blocks into one global matrix, eliminates the fixed components, and
// factorizes with a sparse Cholesky. Keeps references to the decomposition,
// so it must not outlive it. The sparsity pattern is analyzed once and
// reused across refactorizations.
class DirectSolver {
public:
  DirectSolver(const Decomposition& decomp, const Mesh& mesh);

  // solve for the torn correction; rhs copies of shared dofs are summed
  Eigen::VectorXd solve(const std::vector<Eigen::SparseMatrix<double>>& blocks,
                        const Eigen::VectorXd& torn_rhs);

private:
  const Decomposition& decomp_;
  std::vector<Eigen::Index> offsets_;
  std::vector<Eigen::Index> free_index_; // global dof -> reduced index or -1
  Eigen::Index free_count_ = 0;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factorization_;
  bool analyzed_ = false;
};

} // namespace feplast
