#pragma once

#include <span>
#include <vector>

#include <Eigen/Sparse>

#include "feplast/decomposition.hpp"
#include "feplast/element.hpp"
#include "feplast/material.hpp"

namespace feplast {

struct ElementIncrement {
  StressVoigt delta_sigma;
  double delta_kappa = 0.0;
  bool plastic = false;
};

// One Newton iteration's linearized system for a single subdomain.
struct SubdomainSystem {
  Eigen::SparseMatrix<double> stiffness; // symmetric tangent, no BCs applied
  Eigen::VectorXd rhs;                   // load increment minus internal force
  std::vector<ElementIncrement> element_increments; // per local tet

  long plastic_count() const;
};

// Assembles tangent stiffness, residual, and stress/hardening increments for
// the displacement increment iterate du_local. `states` spans the global
// per-tet history; local tets index it through sub.global_tet.
SubdomainSystem assemble_subdomain(const LocalMesh& sub, const Eigen::VectorXd& du_local,
                                   const Eigen::VectorXd& df_local,
                                   std::span<const PlasticState> states,
                                   const MaterialParams& params);

// Same loop with the elastic tangent everywhere; preconditioners and the
// spectral tests use this.
Eigen::SparseMatrix<double> assemble_elastic_stiffness(const LocalMesh& sub,
                                                       const MaterialParams& params);

// Nodal forces of the stored traction faces at unit load scale (one-point
// face rule: a third of area times traction per vertex).
Eigen::VectorXd traction_load(const LocalMesh& sub);

// Nodal forces of a uniform body force (a quarter of each tet volume per
// vertex).
Eigen::VectorXd body_load(const LocalMesh& sub, const Vec3& force_per_volume);

} // namespace feplast
