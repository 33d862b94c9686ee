#include "feplast/driver.hpp"

#include <array>
#include <chrono>
#include <string>
#include <utility>

#include "feplast/assembly.hpp"
#include "feplast/dual.hpp"
#include "feplast/element.hpp"
#include "feplast/errors.hpp"
#include "feplast/kernel.hpp"
#include "feplast/pcgp.hpp"

namespace feplast {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

void SolverConfig::validate() const {
  if (!(eps_newton > 0.0 && eps_newton < 1.0))
    throw InvariantViolation("newton tolerance must lie in (0, 1)");
  if (!(eps_pcgp > 0.0 && eps_pcgp < 1.0))
    throw InvariantViolation("linear solver tolerance must lie in (0, 1)");
  if (max_newton < 1) throw InvariantViolation("newton iteration cap must be positive");
  if (subdomains < 1) throw InvariantViolation("subdomain count must be positive");
}

int SolveReport::total_newton_iterations() const {
  int total = 0;
  for (const StepRecord& s : steps) total += static_cast<int>(s.newton.size());
  return total;
}

long SolveReport::total_pcgp_iterations() const {
  long total = 0;
  for (const StepRecord& s : steps)
    for (const NewtonRecord& n : s.newton) total += n.pcgp_iterations;
  return total;
}

PlasticityDriver::PlasticityDriver(const Mesh& mesh, const MaterialParams& material,
                                   const SolverConfig& config)
    : material_(material), config_(config) {
  material_.validate();
  config_.validate();
  decomp_ = partition(mesh, config_.subdomains);
  constraints_ = build_constraints(decomp_, mesh);
  node_count_ = mesh.nodes.size();

  unit_traction_.resize(torn_size());
  for (int p = 0; p < decomp_.subdomain_count(); ++p) {
    const LocalMesh& sub = decomp_.subdomains[p];
    kernels_.push_back(rigid_body_modes(sub));
    unit_traction_.segment(constraints_.offsets[p], sub.dof_count()) = traction_load(sub);
  }
  if (config_.linear_solver == LinearSolverKind::direct)
    direct_ = std::make_unique<DirectSolver>(decomp_, mesh);

  states_.assign(mesh.tets.size(), PlasticState{});
  plastic_flags_.assign(mesh.tets.size(), false);
  displacement_ = Eigen::VectorXd::Zero(torn_size());
}

void PlasticityDriver::reset() {
  states_.assign(states_.size(), PlasticState{});
  plastic_flags_.assign(plastic_flags_.size(), false);
  displacement_.setZero();
}

Eigen::VectorXd PlasticityDriver::load_at(const LoadProgram& program, double t) const {
  Eigen::VectorXd f = program.traction_scale(t) * unit_traction_;
  const Vec3 body = program.body_force(t);
  if (body.norm() > 0.0)
    for (int p = 0; p < decomp_.subdomain_count(); ++p) {
      const LocalMesh& sub = decomp_.subdomains[p];
      f.segment(constraints_.offsets[p], sub.dof_count()) += body_load(sub, body);
    }
  return f;
}

PlasticityDriver::LinearOutcome PlasticityDriver::newton_step(
    const Eigen::VectorXd& du_iterate, const Eigen::VectorXd& df_torn, int newton_index) {
  if (du_iterate.size() != torn_size() || df_torn.size() != torn_size())
    throw InvariantViolation("newton step: torn vector sizes disagree");

  std::vector<Eigen::SparseMatrix<double>> blocks;
  blocks.reserve(decomp_.subdomains.size());
  Eigen::VectorXd rhs(torn_size());
  LinearOutcome out;
  for (int p = 0; p < decomp_.subdomain_count(); ++p) {
    const LocalMesh& sub = decomp_.subdomains[p];
    const Eigen::Index off = constraints_.offsets[p];
    SubdomainSystem sys =
        assemble_subdomain(sub, du_iterate.segment(off, sub.dof_count()),
                           df_torn.segment(off, sub.dof_count()), states_, material_);
    out.plastic_elements += sys.plastic_count();
    rhs.segment(off, sub.dof_count()) = sys.rhs;
    blocks.push_back(std::move(sys.stiffness));
  }

  try {
    if (direct_) {
      out.correction = direct_->solve(blocks, rhs);
    } else {
      const DualSystem dual(std::move(blocks), kernels_, constraints_, std::move(rhs));
      const PcgpResult result = pcgp_solve(dual, config_.preconditioner, config_.eps_pcgp);
      out.correction = recover_primal(dual, result.lambda, result.alpha);
      out.pcgp_iterations = result.report.iterations;
    }
  } catch (const Error& e) {
    throw LinearSolveFailure("newton iteration " + std::to_string(newton_index) +
                             ": " + e.what());
  }
  return out;
}

PlasticityDriver::NewtonOutcome PlasticityDriver::newton_solve(
    int step_index, const Eigen::VectorXd& df_torn) {
  NewtonOutcome out;
  out.delta_u = Eigen::VectorXd::Zero(torn_size());
  std::vector<double> history;

  for (int i = 1; i <= config_.max_newton; ++i) {
    const auto start = std::chrono::steady_clock::now();
    LinearOutcome linear = newton_step(out.delta_u, df_torn, i);
    const Eigen::VectorXd next = out.delta_u + linear.correction;

    const double denominator = next.norm() + out.delta_u.norm();
    const double criterion =
        denominator == 0.0 ? 0.0 : linear.correction.norm() / denominator;
    out.delta_u = next;
    history.push_back(criterion);

    NewtonRecord record;
    record.iteration = i;
    record.criterion = criterion;
    record.pcgp_iterations = linear.pcgp_iterations;
    record.plastic_elements = linear.plastic_elements;
    record.seconds = seconds_since(start);
    out.records.push_back(record);

    if (criterion <= config_.eps_newton) return out;
  }
  throw NoConvergence("newton loop hit the iteration cap", step_index, history);
}

SolveReport PlasticityDriver::run(const LoadProgram& program) {
  program.validate();
  reset();

  SolveReport report;
  Eigen::VectorXd f_prev = load_at(program, program.time_grid[0]);
  for (int k = 0; k < program.steps(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    StepRecord step;
    step.step = k + 1;
    step.time = program.time_grid[static_cast<std::size_t>(k) + 1];

    Eigen::VectorXd f_next = load_at(program, step.time);
    NewtonOutcome newton = [&] {
      try {
        return newton_solve(step.step, f_next - f_prev);
      } catch (NoConvergence& failure) {
        // flush what the failed step produced before giving up
        if (on_newton) {
          for (std::size_t i = 0; i < failure.criterion_history().size(); ++i) {
            NewtonRecord record;
            record.iteration = static_cast<int>(i) + 1;
            record.criterion = failure.criterion_history()[i];
            on_newton(step, record);
          }
        }
        throw;
      }
    }();
    f_prev = std::move(f_next);

    if (on_newton)
      for (const NewtonRecord& record : newton.records) on_newton(step, record);

    // element updates at the converged increment
    long plastic = 0;
    for (int p = 0; p < decomp_.subdomain_count(); ++p) {
      const LocalMesh& sub = decomp_.subdomains[p];
      const Eigen::Index off = constraints_.offsets[p];
      const SubdomainSystem final_pass =
          assemble_subdomain(sub, newton.delta_u.segment(off, sub.dof_count()),
                             Eigen::VectorXd::Zero(sub.dof_count()), states_, material_);
      for (std::size_t e = 0; e < sub.tets.size(); ++e) {
        const ElementIncrement& inc = final_pass.element_increments[e];
        PlasticState& state = states_[static_cast<std::size_t>(sub.global_tet[e])];
        state.sigma.v += inc.delta_sigma.v;
        state.kappa += inc.delta_kappa;
        plastic_flags_[static_cast<std::size_t>(sub.global_tet[e])] = inc.plastic;
        if (inc.plastic) ++plastic;
      }
      // strain bookkeeping reuses the element geometry
      for (std::size_t e = 0; e < sub.tets.size(); ++e) {
        std::array<Vec3, 4> coords;
        Eigen::Matrix<double, 12, 1> ue;
        for (int a = 0; a < 4; ++a) {
          coords[static_cast<std::size_t>(a)] = sub.nodes[static_cast<std::size_t>(
              sub.tets[e][static_cast<std::size_t>(a)])];
          ue.segment<3>(3 * a) = newton.delta_u.segment<3>(
              off + 3 * sub.tets[e][static_cast<std::size_t>(a)]);
        }
        const ElementGeometry geometry = element_geometry(coords, sub.vol_tol);
        states_[static_cast<std::size_t>(sub.global_tet[e])].epsilon.v +=
            geometry.b_matrix * ue;
      }
    }

    displacement_ += newton.delta_u;
    step.newton = std::move(newton.records);
    step.plastic_elements = plastic;
    step.seconds = seconds_since(start);
    if (on_step) on_step(step);
    report.steps.push_back(std::move(step));
  }
  return report;
}

Eigen::VectorXd PlasticityDriver::displacement_global() const {
  Eigen::VectorXd global_u = Eigen::VectorXd::Zero(3 * static_cast<Eigen::Index>(node_count_));
  Eigen::VectorXd copies = Eigen::VectorXd::Zero(global_u.size());
  for (int p = 0; p < decomp_.subdomain_count(); ++p) {
    const LocalMesh& sub = decomp_.subdomains[p];
    for (std::size_t a = 0; a < sub.nodes.size(); ++a) {
      global_u.segment<3>(3 * sub.global_node[a]) += displacement_.segment<3>(
          constraints_.offsets[p] + 3 * static_cast<Eigen::Index>(a));
      copies.segment<3>(3 * sub.global_node[a]) += Vec3::Ones();
    }
  }
  return global_u.array() / copies.array();
}

long PlasticityDriver::plastic_element_count() const {
  long count = 0;
  for (bool flag : plastic_flags_)
    if (flag) ++count;
  return count;
}

} // namespace feplast
