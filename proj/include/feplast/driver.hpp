#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "feplast/constraints.hpp"
#include "feplast/decomposition.hpp"
#include "feplast/direct.hpp"
#include "feplast/material.hpp"
#include "feplast/mesh.hpp"
#include "feplast/preconditioner.hpp"

namespace feplast {

enum class LinearSolverKind { tfeti, direct };

struct SolverConfig {
  double eps_newton = 1e-4;
  double eps_pcgp = 1e-7;
  int max_newton = 50;
  PreconditionerKind preconditioner = PreconditionerKind::dirichlet;
  LinearSolverKind linear_solver = LinearSolverKind::tfeti;
  int subdomains = 1;

  void validate() const; // tolerances in (0, 1), counts >= 1
};

struct NewtonRecord {
  int iteration = 0;         // 1-based within the step
  double criterion = 0.0;    // relative correction size that was tested
  int pcgp_iterations = 0;   // zero on the direct path
  long plastic_elements = 0; // elements beyond trial yield at the iterate
  double seconds = 0.0;
};

struct StepRecord {
  int step = 0;              // 1-based time interval index
  double time = 0.0;         // end of the interval
  std::vector<NewtonRecord> newton;
  long plastic_elements = 0; // after the converged state update
  double seconds = 0.0;
};

struct SolveReport {
  std::vector<StepRecord> steps;

  int total_newton_iterations() const;
  long total_pcgp_iterations() const;
};

// Incremental elastoplastic solver: implicit Euler over the load program,
// one semismooth Newton loop per step, element state updates at the
// converged increment. Displacements live on the torn dofs throughout.
class PlasticityDriver {
public:
  PlasticityDriver(const Mesh& mesh, const MaterialParams& material,
                   const SolverConfig& config);

  struct LinearOutcome {
    Eigen::VectorXd correction; // torn
    int pcgp_iterations = 0;
    long plastic_elements = 0;
  };

  // assemble the tangent system at the iterate and solve it once;
  // newton_index only labels errors
  LinearOutcome newton_step(const Eigen::VectorXd& du_iterate,
                            const Eigen::VectorXd& df_torn, int newton_index = 0);

  // full Newton loop for one load increment; records one entry per
  // iteration and leaves states untouched
  struct NewtonOutcome {
    Eigen::VectorXd delta_u; // torn, converged
    std::vector<NewtonRecord> records;
  };
  NewtonOutcome newton_solve(int step_index, const Eigen::VectorXd& df_torn);

  // restart from the virgin state and march through the whole program
  SolveReport run(const LoadProgram& program);

  // external load at scalar time t, on the torn dofs
  Eigen::VectorXd load_at(const LoadProgram& program, double t) const;

  Eigen::Index torn_size() const { return constraints_.offsets.back(); }
  const Decomposition& decomposition() const { return decomp_; }
  const std::vector<PlasticState>& element_states() const { return states_; }
  const std::vector<bool>& plastic_flags() const { return plastic_flags_; }
  const Eigen::VectorXd& displacement_torn() const { return displacement_; }
  // copies averaged back onto the mesh nodes
  Eigen::VectorXd displacement_global() const;
  long plastic_element_count() const;

  // observers for streaming output; fired after the record is final
  std::function<void(const StepRecord&, const NewtonRecord&)> on_newton;
  std::function<void(const StepRecord&)> on_step;

private:
  void reset();

  MaterialParams material_;
  SolverConfig config_;
  Decomposition decomp_;
  ConstraintMatrix constraints_;
  std::vector<Eigen::MatrixXd> kernels_;
  std::unique_ptr<DirectSolver> direct_;
  Eigen::VectorXd unit_traction_; // torn nodal loads at unit scale
  std::vector<PlasticState> states_;
  std::vector<bool> plastic_flags_;
  Eigen::VectorXd displacement_;
  std::size_t node_count_ = 0;
};

} // namespace feplast
