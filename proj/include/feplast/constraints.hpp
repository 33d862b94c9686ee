#pragma once

#include <vector>

#include <Eigen/Sparse>

#include "feplast/decomposition.hpp"
#include "feplast/mesh.hpp"

namespace feplast {

enum class ConstraintKind { gluing, dirichlet };

// Row basis per constrained dof group: `orthonormal` emits a Helmert-style
// basis of the difference space (so B B^T = I exactly), `redundant` the
// classic +1/-1 pair rows, one per owner pair, linearly dependent for three
// or more owners.
enum class ConstraintForm { orthonormal, redundant };

// Equality constraints B u = 0 on the torn displacement vector: continuity
// of the subdomain copies of every shared dof plus homogeneous Dirichlet
// conditions on every copy of a fixed component.
struct ConstraintMatrix {
  Eigen::SparseMatrix<double> rows; // m x torn size
  std::vector<ConstraintKind> kinds;
  std::vector<Eigen::Index> offsets; // subdomain block starts, plus total size
  ConstraintForm form = ConstraintForm::orthonormal;

  Eigen::Index count() const { return rows.rows(); }
  Eigen::Index torn_size() const { return rows.cols(); }
};

ConstraintMatrix build_constraints(const Decomposition& decomp, const Mesh& mesh,
                                   ConstraintForm form = ConstraintForm::orthonormal);

} // namespace feplast
