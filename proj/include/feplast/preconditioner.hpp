#pragma once

#include <memory>

#include <Eigen/Dense>

#include "feplast/dual.hpp"

namespace feplast {

enum class PreconditionerKind { none, lumped, dirichlet };

// Approximate inverse of the dual operator, applied between the two
// projections of the conjugate gradient loop. Implementations keep a
// reference to the dual system and must not outlive it.
class DualPreconditioner {
public:
  virtual ~DualPreconditioner() = default;
  virtual Eigen::VectorXd apply(const Eigen::VectorXd& w) const = 0;
};

// B K B^T: no factorization, one stiffness product per application.
std::unique_ptr<DualPreconditioner> lumped_preconditioner(const DualSystem& sys);

// B S B^T where S is the per-subdomain Schur complement onto the nodes that
// carry constraint entries; the interior blocks are factorized once.
std::unique_ptr<DualPreconditioner> dirichlet_preconditioner(const DualSystem& sys);

// nullptr for `none`: the solver then skips the preconditioning step.
std::unique_ptr<DualPreconditioner> make_preconditioner(PreconditionerKind kind,
                                                        const DualSystem& sys);

const char* preconditioner_name(PreconditionerKind kind);

} // namespace feplast
