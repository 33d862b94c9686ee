#pragma once

#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "feplast/constraints.hpp"
#include "feplast/pseudoinverse.hpp"

namespace feplast {

// Dual formulation of the torn linear system: implicit operator
// F = B K_dagger B^T, coarse matrix N = -R^T B^T with a factorized Gram
// matrix N N^T, and the right hand sides d = B K_dagger f, e = -R^T f.
// Construction factorizes every subdomain block once.
class DualSystem {
public:
  DualSystem(std::vector<Eigen::SparseMatrix<double>> stiffness_blocks,
             std::vector<Eigen::MatrixXd> kernel_blocks,
             ConstraintMatrix constraints, Eigen::VectorXd load);

  Eigen::Index multiplier_count() const { return constraints_.count(); }
  Eigen::Index kernel_size() const { return coarse_.rows(); }
  int subdomain_count() const { return static_cast<int>(stiffness_.size()); }

  // F lambda
  Eigen::VectorXd apply_operator(const Eigen::VectorXd& lambda) const;
  // orthogonal projector onto Ker N
  Eigen::VectorXd project(const Eigen::VectorXd& v) const;
  // (N N^T)^{-1} v
  Eigen::VectorXd coarse_solve(const Eigen::VectorXd& v) const;

  // blockwise actions on torn vectors
  Eigen::VectorXd apply_stiffness(const Eigen::VectorXd& torn) const;
  Eigen::VectorXd apply_pseudoinverse(const Eigen::VectorXd& torn) const;
  // R alpha as a torn vector
  Eigen::VectorXd kernel_combination(const Eigen::VectorXd& alpha) const;

  const Eigen::MatrixXd& coarse_matrix() const { return coarse_; }  // N
  const Eigen::VectorXd& dual_rhs() const { return dual_rhs_; }     // d
  const Eigen::VectorXd& coarse_rhs() const { return coarse_rhs_; } // e
  const ConstraintMatrix& constraints() const { return constraints_; }
  const Eigen::VectorXd& load() const { return load_; }
  const Eigen::SparseMatrix<double>& stiffness_block(int p) const { return stiffness_[p]; }
  const Eigen::MatrixXd& kernel_block(int p) const { return kernels_[p]; }

private:
  std::vector<Eigen::SparseMatrix<double>> stiffness_;
  std::vector<Eigen::MatrixXd> kernels_;
  std::vector<SubdomainPseudoInverse> pinv_;
  ConstraintMatrix constraints_;
  Eigen::VectorXd load_;
  std::vector<Eigen::Index> kernel_offsets_;
  Eigen::MatrixXd coarse_;
  Eigen::LLT<Eigen::MatrixXd> coarse_gram_;
  Eigen::VectorXd dual_rhs_;
  Eigen::VectorXd coarse_rhs_;
};

} // namespace feplast
