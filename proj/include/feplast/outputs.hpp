#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "feplast/driver.hpp"
#include "feplast/material.hpp"
#include "feplast/mesh.hpp"

namespace feplast {

// Streams convergence rows as the driver produces them, so partial output
// survives a failed run. Columns:
// step,newton_iter,stopping_criterion,pcgp_iters,plastic_elements,seconds.
// Per-row seconds are written as zero unless timing is enabled, keeping
// repeated runs byte-identical.
class ConvergenceLog {
 public:
  ConvergenceLog(const std::string& path, bool timing); // throws IoError
  ~ConvergenceLog();

  void append(const StepRecord& step, const NewtonRecord& record);
  void flush();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::string csv_row(const StepRecord& step, const NewtonRecord& record, bool timing);

// Legacy-VTK unstructured grid snapshot: point vector field `displacement`,
// cell scalars `von_mises` (Frobenius norm of the stress deviator), `kappa`,
// and `plastic` (0/1). `u` is the global displacement, 3 entries per node.
void write_fields(const Mesh& mesh, const Eigen::VectorXd& u,
                  std::span<const PlasticState> states, const std::vector<bool>& plastic,
                  const std::string& path); // throws IoError

void write_summary(const std::string& path, const std::string& text); // throws IoError

} // namespace feplast
