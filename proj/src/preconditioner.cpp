#include "feplast/preconditioner.hpp"

#include <vector>

#include <Eigen/SparseCholesky>

#include "feplast/errors.hpp"

namespace feplast {

namespace {

class LumpedPreconditioner final : public DualPreconditioner {
public:
  explicit LumpedPreconditioner(const DualSystem& sys) : sys_(sys) {}

  Eigen::VectorXd apply(const Eigen::VectorXd& w) const override {
    const auto& b = sys_.constraints().rows;
    return b * sys_.apply_stiffness(b.transpose() * w);
  }

private:
  const DualSystem& sys_;
};

// Schur complement data of one subdomain: stiffness blocks split by the
// boundary nodes (those carrying any constraint entry) and a factorization
// of the interior block.
struct SchurBlock {
  std::vector<Eigen::Index> boundary_dofs;
  Eigen::SparseMatrix<double> k_bb;
  Eigen::SparseMatrix<double> k_ib; // interior rows, boundary columns
  std::unique_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> interior;
};

class DirichletPreconditioner final : public DualPreconditioner {
public:
  explicit DirichletPreconditioner(const DualSystem& sys) : sys_(sys) {
    const auto& constraints = sys.constraints();
    const auto& b = constraints.rows;
    blocks_.resize(static_cast<std::size_t>(sys.subdomain_count()));
    for (int p = 0; p < sys.subdomain_count(); ++p) {
      const Eigen::Index off = constraints.offsets[p];
      const Eigen::Index np = constraints.offsets[p + 1] - off;
      SchurBlock& block = blocks_[static_cast<std::size_t>(p)];

      std::vector<bool> on_boundary(static_cast<std::size_t>(np), false);
      for (Eigen::Index col = 0; col < np; ++col)
        if (b.outerIndexPtr()[off + col + 1] > b.outerIndexPtr()[off + col]) {
          const Eigen::Index node = col / 3;
          for (int c = 0; c < 3; ++c) on_boundary[static_cast<std::size_t>(3 * node + c)] = true;
        }

      std::vector<Eigen::Index> position(static_cast<std::size_t>(np));
      std::vector<Eigen::Index> interior_dofs;
      for (Eigen::Index dof = 0; dof < np; ++dof) {
        if (on_boundary[static_cast<std::size_t>(dof)]) {
          position[static_cast<std::size_t>(dof)] =
              static_cast<Eigen::Index>(block.boundary_dofs.size());
          block.boundary_dofs.push_back(dof);
        } else {
          position[static_cast<std::size_t>(dof)] =
              static_cast<Eigen::Index>(interior_dofs.size());
          interior_dofs.push_back(dof);
        }
      }
      const Eigen::Index nb = static_cast<Eigen::Index>(block.boundary_dofs.size());
      const Eigen::Index ni = static_cast<Eigen::Index>(interior_dofs.size());

      std::vector<Eigen::Triplet<double>> bb, ib, ii;
      const auto& k = sys.stiffness_block(p);
      for (Eigen::Index col = 0; col < np; ++col)
        for (Eigen::SparseMatrix<double>::InnerIterator it(k, col); it; ++it) {
          const bool row_b = on_boundary[static_cast<std::size_t>(it.row())];
          const bool col_b = on_boundary[static_cast<std::size_t>(col)];
          const int r = static_cast<int>(position[static_cast<std::size_t>(it.row())]);
          const int c = static_cast<int>(position[static_cast<std::size_t>(col)]);
          if (row_b && col_b)
            bb.emplace_back(r, c, it.value());
          else if (!row_b && col_b)
            ib.emplace_back(r, c, it.value());
          else if (!row_b && !col_b)
            ii.emplace_back(r, c, it.value());
        }
      block.k_bb.resize(nb, nb);
      block.k_bb.setFromTriplets(bb.begin(), bb.end());
      block.k_ib.resize(ni, nb);
      block.k_ib.setFromTriplets(ib.begin(), ib.end());
      if (ni > 0) {
        Eigen::SparseMatrix<double> k_ii(ni, ni);
        k_ii.setFromTriplets(ii.begin(), ii.end());
        block.interior =
            std::make_unique<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>(k_ii);
        if (block.interior->info() != Eigen::Success)
          throw FactorizationFailure("interior stiffness block is not positive definite");
      }
    }
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& w) const override {
    const auto& constraints = sys_.constraints();
    const Eigen::VectorXd torn = constraints.rows.transpose() * w;
    Eigen::VectorXd out = Eigen::VectorXd::Zero(torn.size());
    for (int p = 0; p < sys_.subdomain_count(); ++p) {
      const SchurBlock& block = blocks_[static_cast<std::size_t>(p)];
      const Eigen::Index off = constraints.offsets[p];
      const Eigen::Index nb = static_cast<Eigen::Index>(block.boundary_dofs.size());
      Eigen::VectorXd tb(nb);
      for (Eigen::Index i = 0; i < nb; ++i) tb[i] = torn[off + block.boundary_dofs[i]];
      Eigen::VectorXd y = block.k_bb * tb;
      if (block.interior)
        y -= block.k_ib.transpose() * block.interior->solve(block.k_ib * tb);
      for (Eigen::Index i = 0; i < nb; ++i) out[off + block.boundary_dofs[i]] = y[i];
    }
    return constraints.rows * out;
  }

private:
  const DualSystem& sys_;
  std::vector<SchurBlock> blocks_;
};

} // namespace

std::unique_ptr<DualPreconditioner> lumped_preconditioner(const DualSystem& sys) {
  return std::make_unique<LumpedPreconditioner>(sys);
}

std::unique_ptr<DualPreconditioner> dirichlet_preconditioner(const DualSystem& sys) {
  return std::make_unique<DirichletPreconditioner>(sys);
}

std::unique_ptr<DualPreconditioner> make_preconditioner(PreconditionerKind kind,
                                                        const DualSystem& sys) {
  switch (kind) {
    case PreconditionerKind::none: return nullptr;
    case PreconditionerKind::lumped: return lumped_preconditioner(sys);
    case PreconditionerKind::dirichlet: return dirichlet_preconditioner(sys);
  }
  throw InvariantViolation("unknown preconditioner kind");
}

const char* preconditioner_name(PreconditionerKind kind) {
  switch (kind) {
    case PreconditionerKind::none: return "none";
    case PreconditionerKind::lumped: return "lumped";
    case PreconditionerKind::dirichlet: return "dirichlet";
  }
  return "unknown";
}

} // namespace feplast
