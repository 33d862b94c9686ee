#pragma once

#include <Eigen/Dense>

namespace feplast {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// Symmetric 3x3 tensors are stored as 6-vectors ordered
//   (11, 22, 33, 12, 23, 13).
// Stress vectors carry the shear components as-is; strain vectors carry
// engineering (doubled) shear, so that stress . strain is the Frobenius
// pairing of the underlying tensors. The two wrappers below exist to keep
// the conventions from mixing silently.

struct StressVoigt {
  Vec6 v = Vec6::Zero();

  StressVoigt() = default;
  explicit StressVoigt(const Vec6& values) : v(values) {}
};

struct StrainVoigt {
  Vec6 v = Vec6::Zero();

  StrainVoigt() = default;
  explicit StrainVoigt(const Vec6& values) : v(values) {}
};

// Metric that turns plain stress-vector dot products into tensor Frobenius
// products: diag(1,1,1,2,2,2).
const Mat6& stress_metric();

// Deviatoric projector acting on strain-type vectors (halved shear diagonal).
const Mat6& strain_deviator();

// Deviatoric projector acting on stress-type vectors; equals
// stress_metric() * strain_deviator().
const Mat6& stress_deviator();

// Frobenius norm of the tensor behind a stress vector: sqrt(t^T P t).
double stress_norm(const StressVoigt& t);

// Frobenius pairing <sigma, eps>; plain dot product in these conventions.
double duality(const StressVoigt& s, const StrainVoigt& e);

// Deviatoric part of a stress vector.
StressVoigt deviatoric(const StressVoigt& t);

} // namespace feplast
