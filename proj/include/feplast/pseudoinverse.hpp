#pragma once

#include <memory>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace feplast {

// Generalized inverse of a singular subdomain stiffness with known
// orthonormal kernel basis R. Application equals (K + rho R R^T)^{-1}: the
// range part comes from the bordered solve [K R; R^T 0] [u; beta] = [v; 0],
// which stays sparse, and the kernel part from rho^{-1} R R^T. The operator
// satisfies K K_dagger K = K and is linear on all of the torn space.
class SubdomainPseudoInverse {
public:
  SubdomainPseudoInverse(const Eigen::SparseMatrix<double>& stiffness,
                         Eigen::MatrixXd kernel);

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;

  // rho = trace(K) / n, which keeps the kernel response on the stiffness scale
  double regularization() const { return rho_; }

private:
  std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>>> bordered_;
  Eigen::MatrixXd kernel_;
  double rho_ = 0.0;
};

} // namespace feplast
