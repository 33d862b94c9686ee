#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "feplast/config.hpp"
#include "feplast/errors.hpp"
#include "feplast/mesh.hpp"
#include "feplast/runner.hpp"

namespace {

int run_solve(const std::string& config_path, const CLI::App& solve, int subdomains,
              const std::string& precond, const std::string& linear, int steps,
              const std::string& out_dir) {
  feplast::RunConfig config;
  try {
    config = feplast::parse_config(config_path);
    if (solve.count("--subdomains") > 0) config.solver.subdomains = subdomains;
    if (solve.count("--precond") > 0) {
      if (precond == "dirichlet")
        config.solver.preconditioner = feplast::PreconditionerKind::dirichlet;
      else if (precond == "lumped")
        config.solver.preconditioner = feplast::PreconditionerKind::lumped;
      else
        config.solver.preconditioner = feplast::PreconditionerKind::none;
    }
    if (solve.count("--linear") > 0)
      config.solver.linear_solver = linear == "direct" ? feplast::LinearSolverKind::direct
                                                       : feplast::LinearSolverKind::tfeti;
    if (solve.count("--steps") > 0) config.steps = steps;
    if (solve.count("--out") > 0) config.output_directory = out_dir;
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  return feplast::run(config, std::cerr);
}

int run_mesh_gen(const std::string& preset, const std::string& output) {
  feplast::RunConfig config;
  try {
    feplast::apply_benchmark_preset(config, preset);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  try {
    const feplast::Mesh mesh = config.build_mesh();
    feplast::write_mesh(mesh, output);
    std::cout << "wrote " << output << ": " << mesh.nodes.size() << " nodes, "
              << mesh.tets.size() << " tets\n";
  } catch (const std::exception& e) {
    std::cerr << "mesh error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int run_info(const std::string& path) {
  try {
    const feplast::Mesh mesh = feplast::read_mesh(path);
    mesh.validate();
    std::size_t constrained = 0;
    for (const auto& flags : mesh.dirichlet)
      if (flags[0] || flags[1] || flags[2]) ++constrained;
    std::cout << "nodes: " << mesh.nodes.size() << "\n";
    std::cout << "tets: " << mesh.tets.size() << "\n";
    std::cout << "volume: " << mesh.volume() << "\n";
    std::cout << "bbox diagonal: " << mesh.bbox_diagonal() << "\n";
    std::cout << "constrained nodes: " << constrained << "\n";
    std::cout << "traction faces: " << mesh.neumann.size() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "mesh error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"elastoplastic finite elements with a dual domain decomposition solver"};
  app.require_subcommand(1);

  unsigned long seed = 0;
  app.add_option("--seed", seed, "seed for randomized tooling (unused by solves)");

  std::string config_path;
  int subdomains = 1;
  std::string precond;
  std::string linear;
  int steps = 1;
  std::string out_dir;
  CLI::App* solve = app.add_subcommand("solve", "run a batch solve from a config file");
  solve->add_option("config", config_path, "key = value config file")->required();
  solve->add_option("--subdomains", subdomains, "override the subdomain count");
  solve->add_option("--precond", precond, "override the dual preconditioner")
      ->check(CLI::IsMember({"lumped", "dirichlet", "none"}));
  solve->add_option("--linear", linear, "override the linear solver")
      ->check(CLI::IsMember({"tfeti", "direct"}));
  solve->add_option("--steps", steps, "override the number of time steps");
  solve->add_option("--out", out_dir, "override the output directory");

  CLI::App* mesh = app.add_subcommand("mesh", "mesh utilities");
  mesh->require_subcommand(1);
  std::string preset;
  std::string gen_output;
  CLI::App* gen = mesh->add_subcommand("gen", "generate a benchmark mesh");
  gen->add_option("preset", preset, "box or plate_eighth")->required();
  gen->add_option("-o,--output", gen_output, "output mesh file")->required();

  std::string info_path;
  CLI::App* info = app.add_subcommand("info", "print mesh statistics");
  info->add_option("mesh", info_path, "mesh file")->required();

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed())
    return run_solve(config_path, *solve, subdomains, precond, linear, steps, out_dir);
  if (gen->parsed()) return run_mesh_gen(preset, gen_output);
  if (info->parsed()) return run_info(info_path);
  return 0;
}
