#pragma once

#include "feplast/errors.hpp"
#include "feplast/voigt.hpp"

namespace feplast {

// Isotropic elastoplastic material: linear elasticity, von Mises yield
// surface, linear isotropic hardening. Hardening modulus must be positive;
// the closed-form stress update and the solver theory both divide by
// 3*mu + hardening and rely on hardening > 0 for uniqueness.
struct MaterialParams {
  double lambda = 0.0;    // first Lame parameter
  double mu = 0.0;        // shear modulus
  double sigma_y = 0.0;   // initial yield stress
  double hardening = 0.0; // isotropic hardening modulus

  static MaterialParams from_lame(double lambda, double mu, double sigma_y,
                                  double hardening);
  static MaterialParams from_youngs(double youngs, double poisson, double sigma_y,
                                    double hardening);

  void validate() const; // throws std::invalid_argument
};

// History carried per element between time steps.
struct PlasticState {
  StressVoigt sigma;   // accumulated stress
  double kappa = 0.0;  // accumulated hardening variable, nondecreasing
  StrainVoigt epsilon; // accumulated strain (bookkeeping only)
};

struct ReturnMapResult {
  StressVoigt delta_sigma;   // stress increment for the given strain increment
  double delta_kappa = 0.0;  // hardening increment (plastic multiplier)
  bool plastic = false;      // trial state violated the yield condition
  StressVoigt trial_stress;  // elastic predictor sigma + C * delta_eps
};

using TangentMatrix = Mat6;

// Elastic stiffness in Voigt form (engineering-shear strain convention):
// lambda+2mu / lambda blocks on the normal components, mu on the shears.
Mat6 hooke_matrix(const MaterialParams& m);

// Von Mises yield function sqrt(3/2)*||dev tau||_F - (sigma_y + hardening*kappa).
double yield_function(const StressVoigt& tau, double kappa, const MaterialParams& m);

// Unit deviatoric direction dev(tau)/||dev tau||_F. Throws ZeroDeviator when
// the deviator vanishes to roundoff.
StressVoigt flow_direction(const StressVoigt& tau);

// Implicit-Euler stress update for one strain increment, in closed form:
// elastic predictor, then radial return with plastic multiplier
// yield/(3*mu + hardening) when the predictor lies outside the surface.
ReturnMapResult return_mapping(const PlasticState& state, const StrainVoigt& delta_eps,
                               const MaterialParams& m);

// Derivative of the incremental stress update at delta_eps (consistent
// tangent). Symmetric; equals hooke_matrix in the elastic branch.
TangentMatrix consistent_tangent(const PlasticState& state, const StrainVoigt& delta_eps,
                                 const MaterialParams& m);

} // namespace feplast
