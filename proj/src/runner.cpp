#include "feplast/runner.hpp"

#include <chrono>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include "feplast/errors.hpp"
#include "feplast/outputs.hpp"
#include "feplast/preconditioner.hpp"

namespace feplast {

namespace {

std::string shape_name(LoadShape shape) {
  return shape == LoadShape::sine ? "sine" : "ramp";
}

std::string solver_name(LinearSolverKind kind) {
  return kind == LinearSolverKind::tfeti ? "tfeti" : "direct";
}

std::string summary_text(const RunConfig& config, const Mesh& mesh,
                         const SolveReport& report, const PlasticityDriver& driver,
                         double wall_seconds, const std::string& status) {
  std::ostringstream out;
  out << "status: " << status << "\n";
  out << "mesh: " << mesh.nodes.size() << " nodes, " << mesh.tets.size()
      << " tets, volume " << mesh.volume() << "\n";
  out << "material: youngs " << config.youngs << ", poisson " << config.poisson
      << ", yield " << config.yield_stress << ", hardening " << config.hardening << "\n";
  out << "load: " << shape_name(config.shape) << " amplitude " << config.amplitude
      << ", t in [" << config.t_start << ", " << config.t_end << "], " << config.steps
      << " steps\n";
  out << "solver: " << solver_name(config.solver.linear_solver) << ", "
      << config.solver.subdomains << " subdomains, preconditioner "
      << preconditioner_name(config.solver.preconditioner) << ", eps_newton "
      << config.solver.eps_newton << ", eps_pcgp " << config.solver.eps_pcgp << "\n";
  for (const StepRecord& step : report.steps) {
    long pcgp = 0;
    for (const NewtonRecord& record : step.newton) pcgp += record.pcgp_iterations;
    out << "step " << step.step << ": time " << step.time << ", "
        << step.newton.size() << " newton iterations, " << pcgp
        << " pcgp iterations, " << step.plastic_elements << " plastic elements\n";
  }
  out << "totals: " << report.total_newton_iterations() << " newton iterations, "
      << report.total_pcgp_iterations() << " pcgp iterations, "
      << driver.plastic_element_count() << " plastic elements\n";
  out << "wall seconds: " << wall_seconds << "\n";
  return out.str();
}

} // namespace

int run(const RunConfig& config, std::ostream& diagnostics) {
  namespace fs = std::filesystem;

  fs::path directory;
  std::optional<ConvergenceLog> log;
  try {
    config.validate();
    directory = config.output_directory;
    fs::create_directories(directory);
    log.emplace((directory / "convergence.csv").string(), config.timing);
  } catch (const std::exception& e) {
    diagnostics << "config error: " << e.what() << "\n";
    return 1;
  }

  Mesh mesh;
  try {
    mesh = config.build_mesh();
    mesh.validate();
  } catch (const std::exception& e) {
    diagnostics << "mesh error: " << e.what() << "\n";
    return 2;
  }

  try {
    PlasticityDriver driver(mesh, config.build_material(), config.solver);
    driver.on_newton = [&](const StepRecord& step, const NewtonRecord& record) {
      log->append(step, record);
    };
    driver.on_step = [&](const StepRecord& step) {
      log->flush();
      diagnostics << "step " << step.step << ": " << step.newton.size()
                  << " newton iterations, " << step.plastic_elements
                  << " plastic elements\n";
    };

    const auto start = std::chrono::steady_clock::now();
    std::string status = "converged";
    SolveReport report;
    int exit_code = 0;
    try {
      report = driver.run(config.build_program());
    } catch (const NoConvergence& failure) {
      status = std::string("failed: ") + failure.what() + " at step " +
               std::to_string(failure.time_step());
      diagnostics << "solver error: " << failure.what() << " at step "
                  << failure.time_step() << "\n";
      exit_code = 3;
    }
    const double wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    log->flush();
    write_fields(mesh, driver.displacement_global(), driver.element_states(),
                 driver.plastic_flags(), (directory / "fields.vtk").string());
    write_summary((directory / "summary.txt").string(),
                  summary_text(config, mesh, report, driver, wall_seconds, status));
    return exit_code;
  } catch (const std::exception& e) {
    if (log) log->flush();
    diagnostics << "solver error: " << e.what() << "\n";
    return 3;
  }
}

} // namespace feplast
