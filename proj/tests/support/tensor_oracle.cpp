#include "tensor_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace feplast::testing {

Mat3 stress_to_tensor(const StressVoigt& s) {
  Mat3 t;
  t << s.v[0], s.v[3], s.v[5],
       s.v[3], s.v[1], s.v[4],
       s.v[5], s.v[4], s.v[2];
  return t;
}

Mat3 strain_to_tensor(const StrainVoigt& e) {
  Mat3 t;
  t << e.v[0],       0.5 * e.v[3], 0.5 * e.v[5],
       0.5 * e.v[3], e.v[1],       0.5 * e.v[4],
       0.5 * e.v[5], 0.5 * e.v[4], e.v[2];
  return t;
}

StressVoigt tensor_to_stress(const Mat3& t) {
  StressVoigt s;
  s.v << t(0, 0), t(1, 1), t(2, 2), t(0, 1), t(1, 2), t(0, 2);
  return s;
}

StrainVoigt tensor_to_strain(const Mat3& t) {
  StrainVoigt e;
  e.v << t(0, 0), t(1, 1), t(2, 2), 2.0 * t(0, 1), 2.0 * t(1, 2), 2.0 * t(0, 2);
  return e;
}

Mat3 deviator3(const Mat3& t) {
  return t - (t.trace() / 3.0) * Mat3::Identity();
}

double frobenius(const Mat3& t) { return t.norm(); }

Mat3 hooke_apply3(const MaterialParams& m, const Mat3& eps) {
  return m.lambda * eps.trace() * Mat3::Identity() + 2.0 * m.mu * eps;
}

double yield3(const Mat3& sigma, double kappa, const MaterialParams& m) {
  return std::sqrt(1.5) * frobenius(deviator3(sigma)) - (m.sigma_y + m.hardening * kappa);
}

namespace {

using Vec6d = Eigen::Matrix<double, 6, 1>;
using Mat6d = Eigen::Matrix<double, 6, 6>;

Vec6d pack(const Mat3& t) {
  Vec6d v;
  v << t(0, 0), t(1, 1), t(2, 2), t(0, 1), t(1, 2), t(0, 2);
  return v;
}

Mat3 unpack(const Vec6d& v) {
  Mat3 t;
  t << v[0], v[3], v[5],
       v[3], v[1], v[4],
       v[5], v[4], v[2];
  return t;
}

// Residual of the implicit stress equation at fixed multiplier:
//   sigma - trial + gamma*sqrt(3/2)*C:(dev sigma / ||dev sigma||).
Vec6d residual6(const Vec6d& x, const Mat3& trial, double gamma,
                const MaterialParams& m) {
  const Mat3 sigma = unpack(x);
  const Mat3 dev = deviator3(sigma);
  const double norm = frobenius(dev);
  if (norm <= 1e-300) {
    throw std::runtime_error("oracle: deviator collapsed inside inner solve");
  }
  return pack(sigma - trial + gamma * std::sqrt(1.5) * hooke_apply3(m, dev / norm));
}

// Damped Newton with a finite-difference Jacobian. The plain fixed-point
// sweep for this equation stops contracting once gamma passes half the
// deviator-exhaustion value, which the bisection below routinely visits,
// so a genuine nonlinear solve is required here.
Mat3 stress_at_multiplier(const Mat3& trial, double gamma, const MaterialParams& m,
                          const Mat3& guess) {
  const double scale = std::max(1.0, frobenius(trial));
  Vec6d x = pack(guess);
  double fnorm = residual6(x, trial, gamma, m).norm();
  for (int it = 0; it < 120; ++it) {
    if (fnorm <= 1e-12 * scale) return unpack(x);

    const Vec6d f = residual6(x, trial, gamma, m);
    Mat6d jac;
    // keep the probe small against the current deviator too; the unit
    // direction term changes on that scale
    const double dev_norm = frobenius(deviator3(unpack(x)));
    const double h = std::min(1e-7 * scale, 1e-2 * dev_norm);
    for (int j = 0; j < 6; ++j) {
      Vec6d xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      jac.col(j) =
          (residual6(xp, trial, gamma, m) - residual6(xm, trial, gamma, m)) / (2.0 * h);
    }
    const Vec6d step = jac.fullPivLu().solve(-f);

    double alpha = 1.0;
    bool accepted = false;
    for (int back = 0; back < 40; ++back) {
      const Vec6d cand = x + alpha * step;
      const double cand_norm = residual6(cand, trial, gamma, m).norm();
      if (cand_norm < fnorm) {
        x = cand;
        fnorm = cand_norm;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
  }
  if (fnorm > 1e-10 * scale) {
    throw std::runtime_error("oracle: inner stress solve stalled");
  }
  return unpack(x);
}

} // namespace

KktSolution kkt_update3(const Mat3& sigma_k, double kappa_k, const Mat3& delta_eps,
                        const MaterialParams& m) {
  const Mat3 trial = sigma_k + hooke_apply3(m, delta_eps);

  KktSolution out;
  if (yield3(trial, kappa_k, m) <= 0.0) {
    out.sigma_next = trial;
    out.kappa_next = kappa_k;
    return out;
  }

  // The multiplier lies strictly below the value that exhausts the trial
  // deviator; past that the flow direction no longer exists. The previous
  // converged stress warm-starts the next inner solve.
  Mat3 warm = trial;
  auto residual = [&](double gamma) {
    warm = stress_at_multiplier(trial, gamma, m, warm);
    return yield3(warm, kappa_k + gamma, m);
  };

  // Upper end: back off from full exhaustion far enough that the inner solve
  // stays well conditioned, yet close enough that the yield value there is
  // provably negative (the remaining deviator is under half the yield radius).
  const double dev_trial = frobenius(deviator3(trial));
  const double radius = m.sigma_y + m.hardening * kappa_k;
  const double margin =
      std::min(1e-3, 0.5 * radius / (std::sqrt(1.5) * dev_trial));
  double lo = 0.0;
  double hi = dev_trial / (std::sqrt(6.0) * m.mu) * (1.0 - margin);
  if (!(residual(lo) > 0.0) || !(residual(hi) < 0.0)) {
    throw std::runtime_error("oracle: bisection bracket invalid");
  }
  for (int it = 0; it < 120 && (hi - lo) > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (residual(mid) > 0.0 ? lo : hi) = mid;
  }

  const double gamma = 0.5 * (lo + hi);
  out.sigma_next = stress_at_multiplier(trial, gamma, m, warm);
  out.kappa_next = kappa_k + gamma;
  out.multiplier = gamma;
  out.plastic = true;
  return out;
}

} // namespace feplast::testing
