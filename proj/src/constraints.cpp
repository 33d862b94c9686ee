#include "feplast/constraints.hpp"

#include <cmath>

#include "feplast/errors.hpp"

namespace feplast {

ConstraintMatrix build_constraints(const Decomposition& decomp, const Mesh& mesh,
                                   ConstraintForm form) {
  if (decomp.node_owners.size() != mesh.nodes.size())
    throw InvariantViolation("decomposition does not cover the mesh node set");

  ConstraintMatrix b;
  b.form = form;

  const int s = decomp.subdomain_count();
  b.offsets.assign(static_cast<std::size_t>(s) + 1, 0);
  for (int p = 0; p < s; ++p)
    b.offsets[p + 1] = b.offsets[p] + decomp.subdomains[p].dof_count();

  std::vector<Eigen::Triplet<double>> entries;
  std::vector<Eigen::Index> copies;
  Eigen::Index row = 0;

  for (int g = 0; g < static_cast<int>(mesh.nodes.size()); ++g) {
    const auto& owners = decomp.node_owners[g];
    if (owners.empty())
      throw RankDeficiency("node without owning subdomain has no constraint rows");
    const int q = static_cast<int>(owners.size());
    for (int c = 0; c < 3; ++c) {
      copies.clear();
      for (int p : owners) {
        const int local = decomp.subdomains[p].local_node(g);
        if (local < 0)
          throw InvariantViolation("owner list disagrees with subdomain node sets");
        copies.push_back(b.offsets[p] + 3 * local + c);
      }
      if (mesh.dirichlet[g][c]) {
        // pin every copy to zero; equality of the copies is then implied
        for (Eigen::Index dof : copies) {
          entries.emplace_back(static_cast<int>(row), static_cast<int>(dof), 1.0);
          b.kinds.push_back(ConstraintKind::dirichlet);
          ++row;
        }
      } else if (q >= 2 && form == ConstraintForm::orthonormal) {
        // Helmert rows: row j ties copy j to the mean of copies 0..j-1
        for (int j = 1; j < q; ++j) {
          const double head = 1.0 / std::sqrt(static_cast<double>(j) * (j + 1.0));
          for (int i = 0; i < j; ++i)
            entries.emplace_back(static_cast<int>(row), static_cast<int>(copies[i]), head);
          entries.emplace_back(static_cast<int>(row), static_cast<int>(copies[j]), -j * head);
          b.kinds.push_back(ConstraintKind::gluing);
          ++row;
        }
      } else if (q >= 2) {
        for (int i = 0; i < q; ++i)
          for (int j = i + 1; j < q; ++j) {
            entries.emplace_back(static_cast<int>(row), static_cast<int>(copies[i]), 1.0);
            entries.emplace_back(static_cast<int>(row), static_cast<int>(copies[j]), -1.0);
            b.kinds.push_back(ConstraintKind::gluing);
            ++row;
          }
      }
    }
  }

  b.rows.resize(row, b.offsets.back());
  b.rows.setFromTriplets(entries.begin(), entries.end());
  b.rows.makeCompressed();
  return b;
}

} // namespace feplast
