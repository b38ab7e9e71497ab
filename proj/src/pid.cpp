#include "attctl/pid.hpp"

#include <algorithm>
#include <cmath>

#include "attctl/errors.hpp"

namespace attctl {

PidAxisGains pid_tune_axis(double inertia, double omega_c, double zeta,
                           double third_pole_ratio) {
  if (inertia <= 0.0 || omega_c <= 0.0 || zeta <= 0.0 || zeta > 1.0)
    throw ConfigError("pid_tune: need I > 0, omega_c > 0, 0 < zeta <= 1");
  const double a = third_pole_ratio;
  const double sum = 2.0 * zeta + a;
  const double mid = 1.0 + 2.0 * zeta * a;
  const double disc = mid * mid - 4.0 * sum * a;
  if (disc < 0.0)
    throw ConfigError("pid_tune: third_pole_ratio too large for this damping");

  PidAxisGains g;
  g.kp_inner = inertia * sum * omega_c;
  g.kp_outer = omega_c * (mid - std::sqrt(disc)) / (2.0 * sum);
  g.ki_inner = inertia * mid * omega_c * omega_c - g.kp_inner * g.kp_outer;
  return g;
}

CascadedPidGains pid_tune(const InertiaParams& inertia, double omega_c,
                          double zeta, double third_pole_ratio) {
  CascadedPidGains gains;
  gains.axis[0] = pid_tune_axis(inertia.Ix, omega_c, zeta, third_pole_ratio);
  gains.axis[1] = pid_tune_axis(inertia.Iy, omega_c, zeta, third_pole_ratio);
  gains.axis[2] = pid_tune_axis(inertia.Iz, omega_c, zeta, third_pole_ratio);
  return gains;
}

MomentInput pid_step(const CascadedPidGains& gains, CascadedPidState& state,
                     const Eigen::Vector3d& measured_rates, double dt) {
  if (dt <= 0.0) throw ConfigError("pid_step: dt must be positive");
  if (!measured_rates.allFinite())
    throw NonFiniteError("pid_step: non-finite measurement");

  Eigen::Vector3d torque;
  for (int i = 0; i < 3; ++i) {
    const auto& g = gains.axis[static_cast<size_t>(i)];
    const double rate = measured_rates(i);

    double& angle = state.pseudo_angle(i);
    angle += dt * (rate - gains.leak * angle);

    const double rate_ref = -g.kp_outer * angle;
    const double error = rate_ref - rate;

    double& integ = state.integrator(i);
    const double u_unsat = g.kp_inner * error + g.ki_inner * (integ + dt * error);
    if (std::abs(u_unsat) <= gains.u_max) {
      integ += dt * error;
      torque(i) = g.kp_inner * error + g.ki_inner * integ;
    } else {
      // Anti-windup: hold the integrator and clamp.
      torque(i) = std::clamp(g.kp_inner * error + g.ki_inner * integ,
                             -gains.u_max, gains.u_max);
    }
  }
  return {torque(0), torque(1), torque(2)};
}

}  // namespace attctl
