#include "feplast/dual.hpp"

#include <utility>

#include "feplast/errors.hpp"

namespace feplast {

DualSystem::DualSystem(std::vector<Eigen::SparseMatrix<double>> stiffness_blocks,
                       std::vector<Eigen::MatrixXd> kernel_blocks,
                       ConstraintMatrix constraints, Eigen::VectorXd load)
    : stiffness_(std::move(stiffness_blocks)),
      kernels_(std::move(kernel_blocks)),
      constraints_(std::move(constraints)),
      load_(std::move(load)) {
  const int s = static_cast<int>(stiffness_.size());
  if (static_cast<int>(kernels_.size()) != s ||
      static_cast<int>(constraints_.offsets.size()) != s + 1)
    throw InvariantViolation("dual system: block counts disagree");
  if (load_.size() != constraints_.torn_size())
    throw InvariantViolation("dual system: load vector size mismatch");

  kernel_offsets_.assign(static_cast<std::size_t>(s) + 1, 0);
  pinv_.reserve(stiffness_.size());
  for (int p = 0; p < s; ++p) {
    const Eigen::Index np = constraints_.offsets[p + 1] - constraints_.offsets[p];
    if (stiffness_[p].rows() != np || (kernels_[p].size() > 0 && kernels_[p].rows() != np))
      throw InvariantViolation("dual system: block size mismatch");
    kernel_offsets_[p + 1] = kernel_offsets_[p] + kernels_[p].cols();
    pinv_.emplace_back(stiffness_[p], kernels_[p]);
  }

  const Eigen::Index m = constraints_.count();
  const Eigen::Index l = kernel_offsets_.back();
  Eigen::MatrixXd br(m, l);
  for (int p = 0; p < s; ++p)
    br.middleCols(kernel_offsets_[p], kernels_[p].cols()) =
        constraints_.rows.middleCols(constraints_.offsets[p],
                                     constraints_.offsets[p + 1] - constraints_.offsets[p]) *
        kernels_[p];
  coarse_ = -br.transpose();

  if (l > 0) {
    coarse_gram_.compute(coarse_ * coarse_.transpose());
    if (coarse_gram_.info() != Eigen::Success)
      throw CoarseSingular("coarse Gram matrix N N^T is not positive definite");
  }

  dual_rhs_ = constraints_.rows * apply_pseudoinverse(load_);
  coarse_rhs_.resize(l);
  for (int p = 0; p < s; ++p)
    coarse_rhs_.segment(kernel_offsets_[p], kernels_[p].cols()) =
        -kernels_[p].transpose() *
        load_.segment(constraints_.offsets[p],
                      constraints_.offsets[p + 1] - constraints_.offsets[p]);
}

Eigen::VectorXd DualSystem::apply_operator(const Eigen::VectorXd& lambda) const {
  return constraints_.rows *
         apply_pseudoinverse(constraints_.rows.transpose() * lambda);
}

Eigen::VectorXd DualSystem::project(const Eigen::VectorXd& v) const {
  if (coarse_.rows() == 0) return v;
  return v - coarse_.transpose() * coarse_solve(coarse_ * v);
}

Eigen::VectorXd DualSystem::coarse_solve(const Eigen::VectorXd& v) const {
  if (coarse_.rows() == 0) return v;
  return coarse_gram_.solve(v);
}

Eigen::VectorXd DualSystem::apply_stiffness(const Eigen::VectorXd& torn) const {
  Eigen::VectorXd out(torn.size());
  for (std::size_t p = 0; p < stiffness_.size(); ++p) {
    const Eigen::Index off = constraints_.offsets[p];
    const Eigen::Index np = constraints_.offsets[p + 1] - off;
    out.segment(off, np) = stiffness_[p] * torn.segment(off, np);
  }
  return out;
}

Eigen::VectorXd DualSystem::apply_pseudoinverse(const Eigen::VectorXd& torn) const {
  Eigen::VectorXd out(torn.size());
  for (std::size_t p = 0; p < pinv_.size(); ++p) {
    const Eigen::Index off = constraints_.offsets[p];
    const Eigen::Index np = constraints_.offsets[p + 1] - off;
    out.segment(off, np) = pinv_[p].apply(torn.segment(off, np));
  }
  return out;
}

Eigen::VectorXd DualSystem::kernel_combination(const Eigen::VectorXd& alpha) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(constraints_.torn_size());
  for (std::size_t p = 0; p < kernels_.size(); ++p) {
    const Eigen::Index off = constraints_.offsets[p];
    const Eigen::Index np = constraints_.offsets[p + 1] - off;
    if (kernels_[p].cols() > 0)
      out.segment(off, np) =
          kernels_[p] * alpha.segment(kernel_offsets_[p], kernels_[p].cols());
  }
  return out;
}

} // namespace feplast
