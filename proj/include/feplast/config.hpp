#pragma once

#include <array>
#include <string>

#include "feplast/driver.hpp"
#include "feplast/material.hpp"
#include "feplast/mesh.hpp"

namespace feplast {

enum class MeshSource { box, plate, file };
enum class LoadShape { sine, ramp };

// Everything a batch run needs, filled from a flat key = value file with
// [section] headers. The `benchmark` key applies a preset first; explicit
// keys then override individual fields.
struct RunConfig {
  MeshSource source = MeshSource::box;
  Vec3 box_dims = Vec3(1, 1, 2);
  std::array<int, 3> box_divisions{2, 2, 4};
  Vec3 box_traction = Vec3(0, 0, 1);
  Vec3 plate_outer = Vec3(20, 20, 2);
  double plate_hole_radius = 1.0;
  int plate_refinement = 1;
  std::string mesh_file;

  double youngs = 206900.0;
  double poisson = 0.29;
  double yield_stress = 450.0;
  double hardening = 10000.0;

  LoadShape shape = LoadShape::sine;
  double amplitude = 400.0;
  double t_start = 0.0;
  double t_end = 0.25;
  int steps = 1;

  SolverConfig solver;

  std::string output_directory = "out";
  bool timing = false;

  void validate() const; // throws ConfigError
  MaterialParams build_material() const;
  Mesh build_mesh() const;
  LoadProgram build_program() const;
};

RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

void apply_benchmark_preset(RunConfig& config, const std::string& name);

} // namespace feplast
