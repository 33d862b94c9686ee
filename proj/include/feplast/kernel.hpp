#pragma once

#include <Eigen/Dense>

#include "feplast/decomposition.hpp"

namespace feplast {

// Orthonormal basis of the kernel of the unconstrained subdomain stiffness.
// For a face-connected subdomain these are the six rigid body modes (unit
// translations plus linearized rotations about the node centroid); linear
// fields have exact discrete strains, so the span is exact. A partition can
// also produce subdomains whose face-connected bodies touch only along an
// edge or a vertex, or not at all; their kernels gain hinge rotations, built
// here from per-body rigid motions matched at every shared node.
Eigen::MatrixXd rigid_body_modes(const LocalMesh& sub);

} // namespace feplast
