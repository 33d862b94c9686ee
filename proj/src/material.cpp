#include "feplast/material.hpp"

#include <cmath>
#include <stdexcept>

namespace feplast {

const Mat6& stress_metric() {
  static const Mat6 p = [] {
    Mat6 m = Mat6::Zero();
    m.diagonal() << 1.0, 1.0, 1.0, 2.0, 2.0, 2.0;
    return m;
  }();
  return p;
}

const Mat6& strain_deviator() {
  static const Mat6 e = [] {
    Mat6 m = Mat6::Zero();
    m.topLeftCorner<3, 3>().setConstant(-1.0 / 3.0);
    m.topLeftCorner<3, 3>().diagonal().setConstant(2.0 / 3.0);
    m.bottomRightCorner<3, 3>().diagonal().setConstant(0.5);
    return m;
  }();
  return e;
}

const Mat6& stress_deviator() {
  static const Mat6 e = (stress_metric() * strain_deviator()).eval();
  return e;
}

double stress_norm(const StressVoigt& t) {
  return std::sqrt(t.v.dot(stress_metric() * t.v));
}

double duality(const StressVoigt& s, const StrainVoigt& e) { return s.v.dot(e.v); }

StressVoigt deviatoric(const StressVoigt& t) {
  return StressVoigt{stress_deviator() * t.v};
}

MaterialParams MaterialParams::from_lame(double lambda, double mu, double sigma_y,
                                         double hardening) {
  MaterialParams m{lambda, mu, sigma_y, hardening};
  m.validate();
  return m;
}

MaterialParams MaterialParams::from_youngs(double youngs, double poisson,
                                           double sigma_y, double hardening) {
  if (!(youngs > 0.0) || !(poisson > -1.0) || !(poisson < 0.5)) {
    throw std::invalid_argument("elastic constants out of range: E must be positive "
                                "and -1 < nu < 1/2");
  }
  const double lambda = youngs * poisson / ((1.0 + poisson) * (1.0 - 2.0 * poisson));
  const double mu = youngs / (2.0 * (1.0 + poisson));
  return from_lame(lambda, mu, sigma_y, hardening);
}

void MaterialParams::validate() const {
  if (!(mu > 0.0) || !(3.0 * lambda + 2.0 * mu > 0.0)) {
    throw std::invalid_argument("elastic constants must give a positive definite "
                                "Hooke law (mu > 0, 3*lambda + 2*mu > 0)");
  }
  if (!(sigma_y > 0.0)) {
    throw std::invalid_argument("yield stress must be positive");
  }
  if (!(hardening > 0.0)) {
    throw std::invalid_argument("hardening modulus must be positive");
  }
}

Mat6 hooke_matrix(const MaterialParams& m) {
  Mat6 c = Mat6::Zero();
  c.topLeftCorner<3, 3>().setConstant(m.lambda);
  c.topLeftCorner<3, 3>().diagonal().setConstant(m.lambda + 2.0 * m.mu);
  c.bottomRightCorner<3, 3>().diagonal().setConstant(m.mu);
  return c;
}

double yield_function(const StressVoigt& tau, double kappa, const MaterialParams& m) {
  return std::sqrt(1.5) * stress_norm(deviatoric(tau)) - (m.sigma_y + m.hardening * kappa);
}

StressVoigt flow_direction(const StressVoigt& tau) {
  const StressVoigt dev = deviatoric(tau);
  const double norm = stress_norm(dev);
  if (norm <= 1e-14 * std::max(1.0, stress_norm(tau))) {
    throw ZeroDeviator("flow direction undefined: deviatoric stress vanishes");
  }
  return StressVoigt{dev.v / norm};
}

ReturnMapResult return_mapping(const PlasticState& state, const StrainVoigt& delta_eps,
                               const MaterialParams& m) {
  const Vec6 elastic_increment = hooke_matrix(m) * delta_eps.v;

  ReturnMapResult r;
  r.trial_stress = StressVoigt{state.sigma.v + elastic_increment};
  const double phi = yield_function(r.trial_stress, state.kappa, m);
  if (phi <= 0.0) {
    r.delta_sigma = StressVoigt{elastic_increment};
    return r;
  }

  const double denom = 3.0 * m.mu + m.hardening;
  const StressVoigt direction = flow_direction(r.trial_stress);
  r.delta_sigma =
      StressVoigt{elastic_increment -
                  (3.0 * m.mu / denom) * std::sqrt(2.0 / 3.0) * phi * direction.v};
  r.delta_kappa = phi / denom;
  r.plastic = true;
  return r;
}

TangentMatrix consistent_tangent(const PlasticState& state, const StrainVoigt& delta_eps,
                                 const MaterialParams& m) {
  const Mat6 c = hooke_matrix(m);
  const StressVoigt trial{state.sigma.v + c * delta_eps.v};
  if (yield_function(trial, state.kappa, m) <= 0.0) {
    return c;
  }

  const StressVoigt dev = deviatoric(trial);
  const double dev_norm = stress_norm(dev);
  if (dev_norm <= 1e-14 * std::max(1.0, stress_norm(trial))) {
    throw ZeroDeviator("consistent tangent undefined: trial deviator vanishes");
  }
  const Vec6 nbar = dev.v / dev_norm;
  const double scale = 2.0 * m.mu * 3.0 * m.mu / (3.0 * m.mu + m.hardening);
  const double yield_radius = m.sigma_y + m.hardening * state.kappa;
  const Mat6& e_eps = strain_deviator();

  return c - scale * e_eps -
         scale * std::sqrt(2.0 / 3.0) * (yield_radius / dev_norm) *
             (nbar * nbar.transpose() - e_eps);
}

} // namespace feplast
