#include <doctest.h>

#include <cmath>
#include <set>

#include <Eigen/Eigenvalues>

#include "feplast/assembly.hpp"
#include "feplast/decomposition.hpp"
#include "feplast/mesh.hpp"
#include "support/assembly_oracle.hpp"
#include "support/random_gen.hpp"
#include "support/tensor_oracle.hpp"

using namespace feplast;
using namespace feplast::testing;

namespace {

MaterialParams benchmark_material() {
  return MaterialParams::from_youngs(206900.0, 0.29, 450.0, 10000.0);
}

Mesh small_box(int n) {
  return generate_box_mesh(Vec3(1, 1, 1), {n, n, n},
                           {{{0, false}, {true, true, true}}},
                           {{{0, true}, Vec3(1, 0, 0)}});
}

LocalMesh whole_as_subdomain(const Mesh& mesh) {
  return partition(mesh, 1).subdomains[0];
}

// one tet as a standalone subdomain for hand-checked cases
LocalMesh single_tet() {
  LocalMesh sub;
  sub.nodes = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};
  sub.tets = {{0, 1, 2, 3}};
  sub.dirichlet.assign(4, {false, false, false});
  sub.global_node = {0, 1, 2, 3};
  sub.global_tet = {0};
  sub.vol_tol = 1e-12;
  return sub;
}

Eigen::VectorXd nodal_field(const LocalMesh& sub,
                            const std::function<Vec3(const Vec3&)>& f) {
  Eigen::VectorXd u(sub.dof_count());
  for (size_t i = 0; i < sub.nodes.size(); ++i) u.segment<3>(3 * i) = f(sub.nodes[i]);
  return u;
}

} // namespace

TEST_CASE("reference tet geometry") {
  const ElementGeometry g = element_geometry(
      {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)}, 1e-15);
  CHECK(g.volume == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("degenerate tets rejected") {
  // coplanar
  CHECK_THROWS_AS(element_geometry(
                      {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, 1, 0)}, 1e-15),
                  DegenerateElement);
  // negatively oriented
  CHECK_THROWS_AS(element_geometry(
                      {Vec3(0, 0, 0), Vec3(0, 1, 0), Vec3(1, 0, 0), Vec3(0, 0, 1)}, 1e-15),
                  DegenerateElement);
}

TEST_CASE("affine displacement reproduces its strain exactly") {
  Rng rng(2024200);
  for (int trial = 0; trial < 50; ++trial) {
    // random non-degenerate tet
    std::array<Vec3, 4> coords;
    double vol = 0.0;
    do {
      for (auto& c : coords) {
        c = Vec3(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
      }
      vol = (coords[1] - coords[0]).cross(coords[2] - coords[0]).dot(coords[3] - coords[0]);
    } while (vol < 1e-2);
    const ElementGeometry g = element_geometry(coords, 1e-12);

    Mat3 a;
    a << uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1),
         0, uniform(rng, -1, 1), uniform(rng, -1, 1),
         0, 0, uniform(rng, -1, 1);
    a = ((a + a.transpose()) / 2.0).eval(); // symmetric: pure strain, no rotation

    Eigen::Matrix<double, 12, 1> u;
    for (int v = 0; v < 4; ++v) u.segment<3>(3 * v) = a * coords[v];

    const StrainVoigt eps{g.b_matrix * u};
    CHECK((strain_to_tensor(eps) - a).norm() <= 1e-12 * std::max(1.0, a.norm()));
  }
}

TEST_CASE("rigid motions produce no strain") {
  Rng rng(2024201);
  const ElementGeometry g = element_geometry(
      {Vec3(0.1, 0, 0), Vec3(1, 0.2, 0), Vec3(0, 1, 0.3), Vec3(0.2, 0.1, 1)}, 1e-15);
  const std::array<Vec3, 4> coords = {Vec3(0.1, 0, 0), Vec3(1, 0.2, 0), Vec3(0, 1, 0.3),
                                      Vec3(0.2, 0.1, 1)};
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 shift(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
    const Vec3 omega(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
    Eigen::Matrix<double, 12, 1> u;
    for (int v = 0; v < 4; ++v) u.segment<3>(3 * v) = shift + omega.cross(coords[v]);
    CHECK((g.b_matrix * u).norm() <= 1e-12);
  }
}

TEST_CASE("virgin assembly at zero iterate is elastic") {
  const Mesh mesh = small_box(2);
  const LocalMesh sub = whole_as_subdomain(mesh);
  const MaterialParams m = benchmark_material();
  const std::vector<PlasticState> states(mesh.tets.size());

  Eigen::VectorXd du = Eigen::VectorXd::Zero(sub.dof_count());
  Eigen::VectorXd df(sub.dof_count());
  for (int i = 0; i < df.size(); ++i) df[i] = std::sin(0.1 * i);

  const SubdomainSystem sys = assemble_subdomain(sub, du, df, states, m);
  CHECK((sys.rhs - df).norm() == 0.0); // delta sigma is exactly zero
  CHECK(sys.plastic_count() == 0);

  const Eigen::SparseMatrix<double> ke = assemble_elastic_stiffness(sub, m);
  CHECK((Eigen::MatrixXd(sys.stiffness) - Eigen::MatrixXd(ke)).norm() == 0.0);
}

TEST_CASE("assembled stiffness is exactly symmetric and matches the dense oracle") {
  const Mesh mesh = small_box(2);
  const LocalMesh sub = whole_as_subdomain(mesh);
  const MaterialParams m = benchmark_material();

  const Eigen::MatrixXd k = Eigen::MatrixXd(assemble_elastic_stiffness(sub, m));
  CHECK((k - k.transpose()).norm() == 0.0);

  const Eigen::MatrixXd oracle = dense_elastic_oracle(sub, m);
  CHECK((k - oracle).norm() <= 1e-12 * oracle.norm());
}

TEST_CASE("single tet residual matches hand computation") {
  const LocalMesh sub = single_tet();
  const MaterialParams m = benchmark_material();
  const std::vector<PlasticState> states(1);
  const ElementGeometry g = element_geometry(
      {sub.nodes[0], sub.nodes[1], sub.nodes[2], sub.nodes[3]}, sub.vol_tol);

  Rng rng(2024202);
  for (int trial = 0; trial < 20; ++trial) {
    Mat3 a;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a(i, j) = uniform(rng, -0.01, 0.01);
    a = ((a + a.transpose()) / 2.0).eval();

    const Eigen::VectorXd du = nodal_field(sub, [&](const Vec3& x) { return a * x; });
    const SubdomainSystem sys =
        assemble_subdomain(sub, du, Eigen::VectorXd::Zero(12), states, m);

    // oracle: stress increment from the tensor solver, residual -V * B^T dsig
    const KktSolution kkt = kkt_update3(Mat3::Zero(), 0.0, a, m);
    const StressVoigt dsig = tensor_to_stress(kkt.sigma_next);
    const Eigen::VectorXd expected =
        -g.volume * (g.b_matrix.transpose() * dsig.v);
    CHECK((sys.rhs - expected).norm() <= 1e-9 * std::max(1.0, expected.norm()));
    CHECK(sys.element_increments[0].plastic == kkt.plastic);
  }
}

TEST_CASE("floating subdomain stiffness has exactly six zero eigenvalues") {
  const Mesh mesh = small_box(1);
  const LocalMesh sub = whole_as_subdomain(mesh);
  const Eigen::MatrixXd k =
      Eigen::MatrixXd(assemble_elastic_stiffness(sub, benchmark_material()));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k);
  const double top = eig.eigenvalues().maxCoeff();
  int zeros = 0;
  for (int i = 0; i < eig.eigenvalues().size(); ++i) {
    if (std::abs(eig.eigenvalues()[i]) <= 1e-9 * top) ++zeros;
    else CHECK(eig.eigenvalues()[i] > 0.0); // the rest strictly positive
  }
  CHECK(zeros == 6);
}

TEST_CASE("tangent stiffness is squeezed between scaled elastic forms") {
  const Mesh mesh = small_box(2);
  const LocalMesh sub = whole_as_subdomain(mesh);
  const MaterialParams m = benchmark_material();
  const double lower = m.hardening / (3.0 * m.mu + m.hardening);

  // plastic-level strains: displacements around 1% of the box
  Rng rng(2024203);
  std::vector<PlasticState> states(mesh.tets.size());
  for (auto& s : states) s = random_admissible_state(rng, m);

  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd du(sub.dof_count());
    for (int i = 0; i < du.size(); ++i) du[i] = uniform(rng, -0.01, 0.01);
    const SubdomainSystem sys = assemble_subdomain(
        sub, du, Eigen::VectorXd::Zero(sub.dof_count()), states, m);
    const Eigen::SparseMatrix<double> ke = assemble_elastic_stiffness(sub, m);

    for (int k = 0; k < 10; ++k) {
      Eigen::VectorXd w(sub.dof_count());
      for (int i = 0; i < w.size(); ++i) w[i] = uniform(rng, -1, 1);
      const double tangent_energy = w.dot(sys.stiffness * w);
      const double elastic_energy = w.dot(ke * w);
      CHECK(tangent_energy >= lower * elastic_energy - 1e-10 * elastic_energy);
      CHECK(tangent_energy <= elastic_energy + 1e-10 * elastic_energy);
    }
  }
}

TEST_CASE("residual is the gradient of the incremental energy") {
  const Mesh mesh = small_box(2);
  const LocalMesh sub = whole_as_subdomain(mesh);
  const MaterialParams m = benchmark_material();
  Rng rng(2024204);
  std::vector<PlasticState> states(mesh.tets.size());
  for (auto& s : states) s = random_admissible_state(rng, m);

  // incremental energy: elastic quadratic minus the plastic excess term
  const auto energy = [&](const Eigen::VectorXd& du) {
    double e = 0.0;
    const Mat6 c = hooke_matrix(m);
    for (size_t t = 0; t < sub.tets.size(); ++t) {
      const ElementGeometry g = element_geometry(
          {sub.nodes[sub.tets[t][0]], sub.nodes[sub.tets[t][1]],
           sub.nodes[sub.tets[t][2]], sub.nodes[sub.tets[t][3]]},
          sub.vol_tol);
      Eigen::Matrix<double, 12, 1> ue;
      for (int a = 0; a < 4; ++a)
        ue.segment<3>(3 * a) = du.segment<3>(3 * sub.tets[t][a]);
      const Vec6 deps = g.b_matrix * ue;
      const PlasticState& st = states[t];
      const double phi =
          yield_function(StressVoigt{st.sigma.v + c * deps}, st.kappa, m);
      const double excess = std::max(0.0, phi);
      e += g.volume * (0.5 * deps.dot(c * deps) -
                       excess * excess / (2.0 * (3.0 * m.mu + m.hardening)));
    }
    return e;
  };

  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd du(sub.dof_count());
    for (int i = 0; i < du.size(); ++i) du[i] = uniform(rng, -0.01, 0.01);
    const SubdomainSystem sys = assemble_subdomain(
        sub, du, Eigen::VectorXd::Zero(sub.dof_count()), states, m);
    const Eigen::VectorXd internal = -sys.rhs;

    Eigen::VectorXd v(sub.dof_count());
    for (int i = 0; i < v.size(); ++i) v[i] = uniform(rng, -1, 1);
    const double h = 1e-6;
    const double fd = (energy(du + h * v) - energy(du - h * v)) / (2.0 * h);
    CHECK(v.dot(internal) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("subdomain stiffnesses reassemble the monolithic matrix") {
  const Mesh mesh = small_box(2);
  const MaterialParams m = benchmark_material();
  const int n_global = 3 * static_cast<int>(mesh.nodes.size());

  const Eigen::MatrixXd whole =
      Eigen::MatrixXd(assemble_elastic_stiffness(whole_as_subdomain(mesh), m));

  const Decomposition d = partition(mesh, 4);
  Eigen::MatrixXd glued = Eigen::MatrixXd::Zero(n_global, n_global);
  for (const auto& sub : d.subdomains) {
    const Eigen::MatrixXd kp = Eigen::MatrixXd(assemble_elastic_stiffness(sub, m));
    for (size_t a = 0; a < sub.nodes.size(); ++a) {
      for (size_t b = 0; b < sub.nodes.size(); ++b) {
        glued.block<3, 3>(3 * sub.global_node[a], 3 * sub.global_node[b]) +=
            kp.block<3, 3>(3 * a, 3 * b);
      }
    }
  }
  CHECK((glued - whole).norm() <= 1e-12 * whole.norm());
}

TEST_CASE("stiffness sparsity follows mesh adjacency") {
  const Mesh mesh = small_box(2);
  const LocalMesh sub = whole_as_subdomain(mesh);
  const Eigen::SparseMatrix<double> k =
      assemble_elastic_stiffness(sub, benchmark_material());

  std::vector<std::set<int>> adjacent(sub.nodes.size());
  for (const auto& t : sub.tets) {
    for (int a : t)
      for (int b : t) adjacent[a].insert(b);
  }
  for (int col = 0; col < k.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(k, col); it; ++it) {
      if (it.value() != 0.0) {
        CHECK(adjacent[it.row() / 3].count(static_cast<int>(it.col()) / 3) == 1);
      }
    }
  }
}

TEST_CASE("load vectors carry the right resultants") {
  const Mesh mesh = small_box(3);
  const LocalMesh sub = whole_as_subdomain(mesh);

  const Eigen::VectorXd ft = traction_load(sub);
  Vec3 total = Vec3::Zero();
  for (size_t i = 0; i < sub.nodes.size(); ++i) total += ft.segment<3>(3 * i);
  // unit traction (1,0,0) on the unit face
  CHECK(total[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(total[1]) <= 1e-14);
  CHECK(std::abs(total[2]) <= 1e-14);

  const Vec3 b(0.5, -2.0, 3.0);
  const Eigen::VectorXd fb = body_load(sub, b);
  total.setZero();
  for (size_t i = 0; i < sub.nodes.size(); ++i) total += fb.segment<3>(3 * i);
  CHECK((total - b).norm() <= 1e-12 * b.norm()); // unit volume
}
