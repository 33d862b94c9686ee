#include "feplast/pcgp.hpp"

#include <memory>

#include "feplast/errors.hpp"

namespace feplast {

PcgpResult pcgp_solve(const DualSystem& sys, PreconditionerKind kind, double eps,
                      long max_iterations) {
  if (!(eps > 0.0 && eps < 1.0))
    throw InvariantViolation("conjugate gradient tolerance must lie in (0, 1)");
  const Eigen::Index m = sys.multiplier_count();
  if (max_iterations <= 0) max_iterations = 10 * static_cast<long>(m);

  const std::unique_ptr<DualPreconditioner> precond = make_preconditioner(kind, sys);

  PcgpResult out;
  out.report.preconditioner = kind;

  out.lambda_image =
      sys.coarse_matrix().transpose() * sys.coarse_solve(sys.coarse_rhs());
  Eigen::VectorXd lambda_ker = Eigen::VectorXd::Zero(m);

  Eigen::VectorXd r = sys.dual_rhs() - sys.apply_operator(out.lambda_image);
  const double bound = eps * r.norm();

  Eigen::VectorXd p, w, y;
  double previous_yw = 0.0;
  long iterations = 0;
  while (true) {
    w = sys.project(r);
    const double wn = w.norm();
    out.report.residual_history.push_back(wn);
    if (wn <= bound) break;
    if (iterations >= max_iterations)
      throw MaxIterations("projected conjugate gradient stalled",
                          static_cast<int>(iterations));

    // w is already in Ker N, so without preconditioning the re-projection
    // is a no-op and y = w
    y = precond ? sys.project(precond->apply(w)) : w;
    const double yw = y.dot(w);
    if (iterations == 0)
      p = y;
    else
      p = y + (yw / previous_yw) * p;
    previous_yw = yw;

    const Eigen::VectorXd fp = sys.apply_operator(p);
    const double curvature = p.dot(fp);
    if (!(curvature > 0.0))
      throw BreakdownError("nonpositive curvature direction in the dual operator");
    const double gamma = yw / curvature;
    lambda_ker += gamma * p;
    r -= gamma * fp;
    ++iterations;
  }
  out.report.iterations = static_cast<int>(iterations);

  out.lambda = out.lambda_image + lambda_ker;
  out.alpha = sys.coarse_solve(sys.coarse_matrix() *
                               (sys.dual_rhs() - sys.apply_operator(out.lambda)));
  return out;
}

Eigen::VectorXd recover_primal(const DualSystem& sys, const Eigen::VectorXd& lambda,
                               const Eigen::VectorXd& alpha) {
  const Eigen::VectorXd reaction =
      sys.load() - sys.constraints().rows.transpose() * lambda;
  return sys.apply_pseudoinverse(reaction) + sys.kernel_combination(alpha);
}

} // namespace feplast
