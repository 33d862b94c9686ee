#include "feplast/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "feplast/errors.hpp"

namespace feplast {

namespace {

std::string trimmed(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

struct KeyValue {
  std::string key;
  std::string value;
  int line;
};

std::vector<KeyValue> tokenize(const std::string& text) {
  static const std::set<std::string> sections = {"mesh", "material", "load", "solver",
                                                 "output"};
  std::vector<KeyValue> entries;
  std::istringstream stream(text);
  std::string line;
  int number = 0;
  while (std::getline(stream, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(number) + ": unterminated section header");
      const std::string name = trimmed(line.substr(1, line.size() - 2));
      if (!sections.contains(name))
        throw ConfigError("line " + std::to_string(number) + ": unknown section [" + name + "]");
      continue; // sections only organize the file; keys are global
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    KeyValue kv;
    kv.key = trimmed(line.substr(0, eq));
    kv.value = trimmed(line.substr(eq + 1));
    kv.line = number;
    if (kv.key.empty())
      throw ConfigError("line " + std::to_string(number) + ": empty key");
    entries.push_back(std::move(kv));
  }
  return entries;
}

[[noreturn]] void bad_value(const KeyValue& kv, const std::string& reason) {
  throw ConfigError("key '" + kv.key + "' (line " + std::to_string(kv.line) + "): " + reason);
}

double parse_number(const KeyValue& kv) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(kv.value, &used);
  } catch (const std::exception&) {
    bad_value(kv, "expected a number, got '" + kv.value + "'");
  }
  if (used != kv.value.size()) bad_value(kv, "trailing characters in '" + kv.value + "'");
  if (!std::isfinite(value)) bad_value(kv, "value must be finite");
  return value;
}

int parse_integer(const KeyValue& kv) {
  const double value = parse_number(kv);
  const int rounded = static_cast<int>(std::lround(value));
  if (static_cast<double>(rounded) != value) bad_value(kv, "expected an integer");
  return rounded;
}

bool parse_flag(const KeyValue& kv) {
  if (kv.value == "true" || kv.value == "1" || kv.value == "on") return true;
  if (kv.value == "false" || kv.value == "0" || kv.value == "off") return false;
  bad_value(kv, "expected true/false");
}

template <typename Out>
void parse_triple(const KeyValue& kv, Out&& assign) {
  std::istringstream stream(kv.value);
  double a = 0, b = 0, c = 0;
  if (!(stream >> a >> b >> c)) bad_value(kv, "expected three numbers");
  std::string rest;
  if (stream >> rest) bad_value(kv, "trailing characters in '" + kv.value + "'");
  assign(a, b, c);
}

void apply_key(RunConfig& config, const KeyValue& kv) {
  const std::string& key = kv.key;
  if (key == "benchmark") {
    return; // handled in the preset pass
  } else if (key == "source") {
    if (kv.value == "box")
      config.source = MeshSource::box;
    else if (kv.value == "plate")
      config.source = MeshSource::plate;
    else if (kv.value == "file")
      config.source = MeshSource::file;
    else
      bad_value(kv, "expected box, plate, or file");
  } else if (key == "dims") {
    parse_triple(kv, [&](double a, double b, double c) { config.box_dims = Vec3(a, b, c); });
  } else if (key == "divisions") {
    parse_triple(kv, [&](double a, double b, double c) {
      for (double v : {a, b, c})
        if (v != std::floor(v)) bad_value(kv, "expected integers");
      config.box_divisions = {static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)};
    });
  } else if (key == "traction") {
    parse_triple(kv, [&](double a, double b, double c) { config.box_traction = Vec3(a, b, c); });
  } else if (key == "outer") {
    parse_triple(kv, [&](double a, double b, double c) { config.plate_outer = Vec3(a, b, c); });
  } else if (key == "hole_radius") {
    config.plate_hole_radius = parse_number(kv);
  } else if (key == "refinement") {
    config.plate_refinement = parse_integer(kv);
  } else if (key == "file") {
    config.mesh_file = kv.value;
  } else if (key == "youngs") {
    config.youngs = parse_number(kv);
  } else if (key == "poisson") {
    config.poisson = parse_number(kv);
  } else if (key == "yield") {
    config.yield_stress = parse_number(kv);
  } else if (key == "hardening") {
    config.hardening = parse_number(kv);
  } else if (key == "shape") {
    if (kv.value == "sine")
      config.shape = LoadShape::sine;
    else if (kv.value == "ramp")
      config.shape = LoadShape::ramp;
    else
      bad_value(kv, "expected sine or ramp");
  } else if (key == "amplitude") {
    config.amplitude = parse_number(kv);
  } else if (key == "t_start") {
    config.t_start = parse_number(kv);
  } else if (key == "t_end") {
    config.t_end = parse_number(kv);
  } else if (key == "steps") {
    config.steps = parse_integer(kv);
  } else if (key == "eps_newton") {
    config.solver.eps_newton = parse_number(kv);
  } else if (key == "eps_pcgp") {
    config.solver.eps_pcgp = parse_number(kv);
  } else if (key == "max_newton") {
    config.solver.max_newton = parse_integer(kv);
  } else if (key == "preconditioner") {
    if (kv.value == "dirichlet")
      config.solver.preconditioner = PreconditionerKind::dirichlet;
    else if (kv.value == "lumped")
      config.solver.preconditioner = PreconditionerKind::lumped;
    else if (kv.value == "none")
      config.solver.preconditioner = PreconditionerKind::none;
    else
      bad_value(kv, "expected dirichlet, lumped, or none");
  } else if (key == "linear") {
    if (kv.value == "tfeti")
      config.solver.linear_solver = LinearSolverKind::tfeti;
    else if (kv.value == "direct")
      config.solver.linear_solver = LinearSolverKind::direct;
    else
      bad_value(kv, "expected tfeti or direct");
  } else if (key == "subdomains") {
    config.solver.subdomains = parse_integer(kv);
  } else if (key == "directory") {
    config.output_directory = kv.value;
  } else if (key == "timing") {
    config.timing = parse_flag(kv);
  } else {
    bad_value(kv, "unknown key");
  }
}

} // namespace

void apply_benchmark_preset(RunConfig& config, const std::string& name) {
  if (name == "plate_eighth") {
    config.source = MeshSource::plate;
    config.plate_outer = Vec3(20, 20, 2);
    config.plate_hole_radius = 1.0;
    config.plate_refinement = 1;
    config.shape = LoadShape::sine;
    config.amplitude = 400.0;
    config.t_start = 0.0;
    config.t_end = 0.25;
    config.steps = 1;
  } else if (name == "box") {
    config.source = MeshSource::box;
    config.box_dims = Vec3(1, 1, 2);
    config.box_divisions = {2, 2, 4};
    config.box_traction = Vec3(0, 0, 1);
    config.shape = LoadShape::sine;
    config.amplitude = 500.0;
    config.t_start = 0.0;
    config.t_end = 0.25;
    config.steps = 1;
  } else {
    throw ConfigError("unknown benchmark preset '" + name + "'");
  }
}

MaterialParams RunConfig::build_material() const {
  return MaterialParams::from_youngs(youngs, poisson, yield_stress, hardening);
}

void RunConfig::validate() const {
  try {
    build_material().validate();
    solver.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (source == MeshSource::file) {
    if (mesh_file.empty()) throw ConfigError("key 'file': required when source = file");
    if (!std::filesystem::exists(mesh_file))
      throw ConfigError("key 'file': '" + mesh_file + "' does not exist");
  }
  for (int d : box_divisions)
    if (d < 1) throw ConfigError("key 'divisions': entries must be positive");
  if (!(box_dims.minCoeff() > 0.0)) throw ConfigError("key 'dims': entries must be positive");
  if (plate_refinement < 1) throw ConfigError("key 'refinement': must be positive");
  if (!(plate_hole_radius > 0.0)) throw ConfigError("key 'hole_radius': must be positive");
  if (!(plate_outer.minCoeff() > 0.0)) throw ConfigError("key 'outer': entries must be positive");
  if (source == MeshSource::box && box_traction.norm() == 0.0)
    throw ConfigError("key 'traction': must be nonzero");
  if (!(t_end > t_start)) throw ConfigError("key 't_end': must exceed t_start");
  if (steps < 1) throw ConfigError("key 'steps': must be positive");
  if (amplitude == 0.0) throw ConfigError("key 'amplitude': must be nonzero");
  if (output_directory.empty()) throw ConfigError("key 'directory': must not be empty");
}

Mesh RunConfig::build_mesh() const {
  switch (source) {
    case MeshSource::box:
      return generate_box_mesh(box_dims, box_divisions,
                               {{{2, false}, {true, true, true}}}, {{{2, true}, box_traction}});
    case MeshSource::plate:
      return generate_plate_with_hole(plate_outer, plate_hole_radius, plate_refinement);
    case MeshSource::file:
      return read_mesh(mesh_file);
  }
  throw InvariantViolation("unhandled mesh source");
}

LoadProgram RunConfig::build_program() const {
  LoadProgram program;
  for (int k = 0; k <= steps; ++k)
    program.time_grid.push_back(t_start + (t_end - t_start) * k / steps);
  const double a = amplitude;
  if (shape == LoadShape::sine)
    program.traction_scale = [a](double t) { return a * std::sin(2.0 * std::numbers::pi * t); };
  else
    program.traction_scale = [a](double t) { return a * t; };
  program.body_force = [](double) { return Vec3::Zero(); };
  return program;
}

RunConfig parse_config_text(const std::string& text) {
  const std::vector<KeyValue> entries = tokenize(text);

  RunConfig config;
  bool preset_seen = false;
  for (const KeyValue& kv : entries)
    if (kv.key == "benchmark") {
      if (preset_seen) bad_value(kv, "benchmark preset given twice");
      apply_benchmark_preset(config, kv.value);
      preset_seen = true;
    }

  for (const KeyValue& kv : entries) apply_key(config, kv);

  config.validate();
  return config;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << file.rdbuf();
  return parse_config_text(text.str());
}

} // namespace feplast
