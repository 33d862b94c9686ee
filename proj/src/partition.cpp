#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "feplast/decomposition.hpp"

namespace feplast {

int LocalMesh::local_node(int global) const {
  const auto it = std::lower_bound(global_node.begin(), global_node.end(), global);
  if (it == global_node.end() || *it != global) return -1;
  return static_cast<int>(it - global_node.begin());
}

namespace {

void bisect(std::vector<int>& tets, const std::vector<Vec3>& centroids, long begin,
            long end, int parts, int first_part, std::vector<int>& assignment) {
  if (parts == 1) {
    for (long i = begin; i < end; ++i) assignment[tets[i]] = first_part;
    return;
  }

  Vec3 lo = centroids[tets[begin]], hi = lo;
  for (long i = begin; i < end; ++i) {
    lo = lo.cwiseMin(centroids[tets[i]]);
    hi = hi.cwiseMax(centroids[tets[i]]);
  }
  const Vec3 extent = hi - lo;
  int axis = 0;
  if (extent[1] > extent[axis]) axis = 1;
  if (extent[2] > extent[axis]) axis = 2;

  const long n = end - begin;
  const int left_parts = parts / 2;
  long cut = std::llround(static_cast<double>(n) * left_parts / parts);
  cut = std::clamp(cut, static_cast<long>(1), n - 1);

  std::nth_element(tets.begin() + begin, tets.begin() + begin + cut, tets.begin() + end,
                   [&](int a, int b) {
                     const double ca = centroids[a][axis], cb = centroids[b][axis];
                     return ca < cb || (ca == cb && a < b);
                   });

  bisect(tets, centroids, begin, begin + cut, left_parts, first_part, assignment);
  bisect(tets, centroids, begin + cut, end, parts - left_parts, first_part + left_parts,
         assignment);
}

} // namespace

Decomposition partition(const Mesh& mesh, int subdomain_count) {
  mesh.validate();
  const int n_tets = static_cast<int>(mesh.tets.size());
  if (subdomain_count < 1 || subdomain_count > n_tets) {
    throw TooManySubdomains("subdomain count must lie in [1, tet count = " +
                            std::to_string(n_tets) + "], got " +
                            std::to_string(subdomain_count));
  }

  std::vector<Vec3> centroids(n_tets);
  for (int t = 0; t < n_tets; ++t) {
    const auto& tet = mesh.tets[t];
    centroids[t] = 0.25 * (mesh.nodes[tet[0]] + mesh.nodes[tet[1]] +
                           mesh.nodes[tet[2]] + mesh.nodes[tet[3]]);
  }

  Decomposition d;
  d.subdomain_of_tet.assign(n_tets, 0);
  std::vector<int> order(n_tets);
  std::iota(order.begin(), order.end(), 0);
  bisect(order, centroids, 0, n_tets, subdomain_count, 0, d.subdomain_of_tet);

  // owning tet of every boundary face, for routing neumann faces
  std::map<std::array<int, 3>, int> boundary_owner;
  {
    std::map<std::array<int, 3>, std::pair<int, int>> counts; // face -> (count, tet)
    for (int t = 0; t < n_tets; ++t) {
      const auto& tet = mesh.tets[t];
      const int faces[4][3] = {{tet[0], tet[1], tet[2]},
                               {tet[0], tet[1], tet[3]},
                               {tet[0], tet[2], tet[3]},
                               {tet[1], tet[2], tet[3]}};
      for (const auto& f : faces) {
        std::array<int, 3> key{f[0], f[1], f[2]};
        std::sort(key.begin(), key.end());
        auto& entry = counts[key];
        ++entry.first;
        entry.second = t;
      }
    }
    for (const auto& [key, entry] : counts) {
      if (entry.first == 1) boundary_owner[key] = entry.second;
    }
  }

  const double vol_tol = mesh.volume_tolerance();
  d.subdomains.resize(subdomain_count);
  for (auto& sub : d.subdomains) sub.vol_tol = vol_tol;

  for (int t = 0; t < n_tets; ++t) {
    d.subdomains[d.subdomain_of_tet[t]].global_tet.push_back(t);
  }

  for (int p = 0; p < subdomain_count; ++p) {
    LocalMesh& sub = d.subdomains[p];

    std::vector<int> used;
    for (int t : sub.global_tet) {
      for (int v : mesh.tets[t]) used.push_back(v);
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    sub.global_node = used;

    sub.nodes.reserve(used.size());
    sub.dirichlet.reserve(used.size());
    for (int g : used) {
      sub.nodes.push_back(mesh.nodes[g]);
      sub.dirichlet.push_back(mesh.dirichlet[g]);
    }

    sub.tets.reserve(sub.global_tet.size());
    for (int t : sub.global_tet) {
      const auto& tet = mesh.tets[t];
      sub.tets.push_back({sub.local_node(tet[0]), sub.local_node(tet[1]),
                          sub.local_node(tet[2]), sub.local_node(tet[3])});
    }
  }

  for (const auto& f : mesh.neumann) {
    std::array<int, 3> key = f.nodes;
    std::sort(key.begin(), key.end());
    const int owner_tet = boundary_owner.at(key);
    LocalMesh& sub = d.subdomains[d.subdomain_of_tet[owner_tet]];
    NeumannFace local = f;
    for (int& v : local.nodes) v = sub.local_node(v);
    sub.neumann.push_back(local);
  }

  d.node_owners.assign(mesh.nodes.size(), {});
  for (int p = 0; p < subdomain_count; ++p) {
    for (int g : d.subdomains[p].global_node) d.node_owners[g].push_back(p);
  }
  for (size_t g = 0; g < d.node_owners.size(); ++g) {
    const auto& owners = d.node_owners[g];
    for (size_t a = 0; a + 1 < owners.size(); ++a) {
      for (size_t b = a + 1; b < owners.size(); ++b) {
        d.interface_pairs.push_back({static_cast<int>(g), owners[a], owners[b]});
      }
    }
  }

  return d;
}

} // namespace feplast
