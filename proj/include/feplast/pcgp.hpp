#pragma once

#include <vector>

#include <Eigen/Dense>

#include "feplast/dual.hpp"
#include "feplast/preconditioner.hpp"

namespace feplast {

struct PcgpReport {
  int iterations = 0;
  // projected residual norms, one entry per convergence check; the final
  // entry satisfies the stopping bound
  std::vector<double> residual_history;
  PreconditionerKind preconditioner = PreconditionerKind::none;
};

struct PcgpResult {
  Eigen::VectorXd lambda;       // lambda_image + the conjugate gradient part
  Eigen::VectorXd lambda_image; // N^T (N N^T)^{-1} e
  Eigen::VectorXd alpha;        // kernel coefficients
  PcgpReport report;
};

// Projected preconditioned conjugate gradients on the dual system. The
// multiplier is split into the particular part lambda_image solving
// N lambda = e and an increment kept in Ker N by projecting before and after
// preconditioning. Stops as soon as ||w|| <= eps * ||r0|| where w is the
// projected residual and r0 = d - F lambda_image.
PcgpResult pcgp_solve(const DualSystem& sys, PreconditionerKind kind, double eps,
                      long max_iterations = 0); // <= 0 picks the cap 10 m

// u = K_dagger (f - B^T lambda) + R alpha on the torn dofs
Eigen::VectorXd recover_primal(const DualSystem& sys, const Eigen::VectorXd& lambda,
                               const Eigen::VectorXd& alpha);

} // namespace feplast
