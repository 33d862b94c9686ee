#pragma once

// Deterministic sample generators shared by the property tests. Everything
// runs off an explicitly seeded mt19937_64 so failures reproduce exactly.

#include <random>

#include <Eigen/Dense>

#include "feplast/material.hpp"
#include "feplast/voigt.hpp"

namespace feplast::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vec6 random_vec6(Rng& rng, double scale) {
  Vec6 v;
  for (int i = 0; i < 6; ++i) v[i] = uniform(rng, -scale, scale);
  return v;
}

inline StrainVoigt random_strain(Rng& rng, double scale) {
  return StrainVoigt{random_vec6(rng, scale)};
}

// Random stress with yield(sigma, kappa) <= 0: draw freely, then shrink the
// deviator under the current yield radius when it pokes outside.
inline PlasticState random_admissible_state(Rng& rng, const MaterialParams& m,
                                            double kappa_max = 0.05) {
  PlasticState s;
  s.kappa = uniform(rng, 0.0, kappa_max);
  const double radius = m.sigma_y + m.hardening * s.kappa;

  Vec6 sigma = random_vec6(rng, 1.5 * m.sigma_y);
  StressVoigt full{sigma};
  const StressVoigt dev = deviatoric(full);
  const double dev_norm = stress_norm(dev);
  const double limit = std::sqrt(2.0 / 3.0) * radius;
  if (dev_norm > 0.0) {
    const double target = uniform(rng, 0.0, 0.999) * limit;
    const Vec6 hydro = full.v - dev.v;
    s.sigma = StressVoigt{hydro + dev.v * (target / dev_norm)};
  } else {
    s.sigma = full;
  }
  return s;
}

} // namespace feplast::testing
