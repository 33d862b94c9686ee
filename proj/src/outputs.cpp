#include "feplast/outputs.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "feplast/errors.hpp"
#include "feplast/voigt.hpp"

namespace feplast {

namespace {

std::string formatted(const char* pattern, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), pattern, value);
  return buffer;
}

std::string number(double value) { return formatted("%.9g", value); }

} // namespace

std::string csv_row(const StepRecord& step, const NewtonRecord& record, bool timing) {
  std::ostringstream row;
  row << step.step << ',' << record.iteration << ',' << formatted("%.6e", record.criterion)
      << ',' << record.pcgp_iterations << ',' << record.plastic_elements << ','
      << formatted("%.3f", timing ? record.seconds : 0.0);
  return row.str();
}

struct ConvergenceLog::Impl {
  std::ofstream stream;
  bool timing = false;
};

ConvergenceLog::ConvergenceLog(const std::string& path, bool timing)
    : impl_(std::make_unique<Impl>()) {
  impl_->stream.open(path, std::ios::trunc);
  if (!impl_->stream) throw IoError("cannot open '" + path + "' for writing");
  impl_->timing = timing;
  impl_->stream << "step,newton_iter,stopping_criterion,pcgp_iters,plastic_elements,seconds\n";
}

ConvergenceLog::~ConvergenceLog() = default;

void ConvergenceLog::append(const StepRecord& step, const NewtonRecord& record) {
  impl_->stream << csv_row(step, record, impl_->timing) << '\n';
  if (!impl_->stream) throw IoError("write to convergence log failed");
}

void ConvergenceLog::flush() { impl_->stream.flush(); }

void write_fields(const Mesh& mesh, const Eigen::VectorXd& u,
                  std::span<const PlasticState> states, const std::vector<bool>& plastic,
                  const std::string& path) {
  const std::size_t n = mesh.nodes.size();
  const std::size_t m = mesh.tets.size();
  if (u.size() != static_cast<Eigen::Index>(3 * n) || states.size() != m ||
      plastic.size() != m)
    throw InvariantViolation("field snapshot sizes disagree with the mesh");

  std::ostringstream out;
  out << "# vtk DataFile Version 3.0\n";
  out << "elastoplastic state snapshot\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << n << " double\n";
  for (const Vec3& x : mesh.nodes)
    out << number(x.x()) << ' ' << number(x.y()) << ' ' << number(x.z()) << '\n';
  out << "CELLS " << m << ' ' << 5 * m << '\n';
  for (const auto& tet : mesh.tets)
    out << "4 " << tet[0] << ' ' << tet[1] << ' ' << tet[2] << ' ' << tet[3] << '\n';
  out << "CELL_TYPES " << m << '\n';
  for (std::size_t e = 0; e < m; ++e) out << "10\n";
  out << "POINT_DATA " << n << '\n';
  out << "VECTORS displacement double\n";
  for (std::size_t a = 0; a < n; ++a)
    out << number(u[3 * static_cast<Eigen::Index>(a)]) << ' '
        << number(u[3 * static_cast<Eigen::Index>(a) + 1]) << ' '
        << number(u[3 * static_cast<Eigen::Index>(a) + 2]) << '\n';
  out << "CELL_DATA " << m << '\n';
  out << "SCALARS von_mises double 1\n";
  out << "LOOKUP_TABLE default\n";
  for (const PlasticState& state : states) out << number(stress_norm(deviatoric(state.sigma))) << '\n';
  out << "SCALARS kappa double 1\n";
  out << "LOOKUP_TABLE default\n";
  for (const PlasticState& state : states) out << number(state.kappa) << '\n';
  out << "SCALARS plastic int 1\n";
  out << "LOOKUP_TABLE default\n";
  for (bool flag : plastic) out << (flag ? 1 : 0) << '\n';

  std::ofstream file(path, std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << out.str();
  if (!file) throw IoError("write to '" + path + "' failed");
}

void write_summary(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw IoError("write to '" + path + "' failed");
}

} // namespace feplast
