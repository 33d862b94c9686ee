#include "feplast/pseudoinverse.hpp"

#include <vector>

#include "feplast/errors.hpp"

namespace feplast {

SubdomainPseudoInverse::SubdomainPseudoInverse(const Eigen::SparseMatrix<double>& stiffness,
                                               Eigen::MatrixXd kernel)
    : kernel_(std::move(kernel)) {
  const Eigen::Index n = stiffness.rows();
  const Eigen::Index l = kernel_.cols();
  if (stiffness.cols() != n || (l > 0 && kernel_.rows() != n))
    throw InvariantViolation("pseudoinverse: stiffness and kernel sizes disagree");

  double trace = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) trace += stiffness.coeff(i, i);
  rho_ = trace / static_cast<double>(n);
  if (!(rho_ > 0.0))
    throw FactorizationFailure("subdomain stiffness has nonpositive trace");

  // the bordered matrix is nonsingular exactly when ker K = span R
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(stiffness.nonZeros() + 2 * n * l));
  for (Eigen::Index col = 0; col < n; ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(stiffness, col); it; ++it)
      entries.emplace_back(static_cast<int>(it.row()), static_cast<int>(col), it.value());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < l; ++j) {
      entries.emplace_back(static_cast<int>(i), static_cast<int>(n + j), kernel_(i, j));
      entries.emplace_back(static_cast<int>(n + j), static_cast<int>(i), kernel_(i, j));
    }
  Eigen::SparseMatrix<double> bordered(n + l, n + l);
  bordered.setFromTriplets(entries.begin(), entries.end());
  bordered.makeCompressed();

  bordered_ = std::make_unique<Eigen::SparseLU<Eigen::SparseMatrix<double>>>();
  bordered_->compute(bordered);
  if (bordered_->info() != Eigen::Success)
    throw FactorizationFailure("bordered stiffness factorization failed; "
                               "kernel basis does not match the stiffness null space");

  // probe the generalized-inverse contract K K_dagger K = K on a ramp vector;
  // a kernel basis that misses or over-covers the null space fails here even
  // when the factorization itself went through numerically
  Eigen::VectorXd probe(n);
  for (Eigen::Index i = 0; i < n; ++i) probe[i] = static_cast<double>(i + 1);
  const Eigen::VectorXd image = stiffness * probe;
  const double scale = image.norm() + rho_ * probe.norm();
  if ((stiffness * apply(image) - image).norm() > 1e-8 * scale)
    throw FactorizationFailure("generalized inverse contract violated; "
                               "kernel basis does not match the stiffness null space");
}

Eigen::VectorXd SubdomainPseudoInverse::apply(const Eigen::VectorXd& v) const {
  const Eigen::Index n = v.size();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + kernel_.cols());
  rhs.head(n) = v;
  const Eigen::VectorXd solution = bordered_->solve(rhs);
  if (bordered_->info() != Eigen::Success)
    throw FactorizationFailure("bordered solve failed");
  if (kernel_.cols() == 0) return solution.head(n);
  return solution.head(n) + kernel_ * ((kernel_.transpose() * v) / rho_);
}

} // namespace feplast
