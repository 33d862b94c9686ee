#pragma once

#include <vector>

#include "feplast/mesh.hpp"

namespace feplast {

// One subdomain after tearing: nodes shared with neighbours are duplicated,
// so local degrees of freedom are independent of every other subdomain.
struct LocalMesh {
  std::vector<Vec3> nodes;
  std::vector<std::array<int, 4>> tets; // local node indices
  std::vector<std::array<bool, 3>> dirichlet;
  std::vector<NeumannFace> neumann; // local node indices
  std::vector<int> global_node;     // local -> global, strictly increasing
  std::vector<int> global_tet;      // local -> global, strictly increasing
  double vol_tol = 0.0;

  int dof_count() const { return 3 * static_cast<int>(nodes.size()); }
  // local index of a global node, or -1 when this subdomain does not own it
  int local_node(int global) const;
};

struct InterfacePair {
  int node = 0; // global node shared by subdomains p and q
  int p = 0;
  int q = 0;
};

struct Decomposition {
  std::vector<int> subdomain_of_tet;
  std::vector<LocalMesh> subdomains;
  std::vector<InterfacePair> interface_pairs;
  // global node -> owning subdomains, ascending; single-owner nodes included
  std::vector<std::vector<int>> node_owners;

  int subdomain_count() const { return static_cast<int>(subdomains.size()); }
};

// Recursive coordinate bisection of tet centroids along the longest axis.
// Deterministic: ties broken by tet index, split sizes proportional.
Decomposition partition(const Mesh& mesh, int subdomain_count);

} // namespace feplast
