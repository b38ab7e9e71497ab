#pragma once

#include <Eigen/Core>

#include <array>

#include "attctl/attitude_dynamics.hpp"

namespace attctl {

/// Per-axis gains of the gyro-only cascade: an outer proportional loop on the
/// pseudo-angle (leaky integral of the measured rate) commanding a rate
/// reference, and an inner PI loop on the rate error.
struct PidAxisGains {
  double kp_outer = 0.0;  ///< pseudo-angle -> rate reference
  double kp_inner = 0.0;  ///< rate error -> torque
  double ki_inner = 0.0;  ///< integrated rate error -> torque
};

struct CascadedPidGains {
  std::array<PidAxisGains, 3> axis;  ///< roll, pitch, yaw
  double leak = 1e-3;                ///< pseudo-angle leak [1/s]
  double u_max = 4.0;                ///< anti-windup clamp [N m]
};

/// Two states per axis: pseudo-angle and inner-loop integrator.
struct CascadedPidState {
  Eigen::Vector3d pseudo_angle = Eigen::Vector3d::Zero();
  Eigen::Vector3d integrator = Eigen::Vector3d::Zero();
};

/// Deterministic pole placement for one axis of the cascade on the rigid-body
/// double integrator (torque -> rate -> angle, gain 1/I_ax).
///
/// Closed-loop characteristic polynomial (per axis, leak and actuator lag
/// neglected):
///   s^3 + (kp_i/I) s^2 + ((kp_i kp_o + ki_i)/I) s + (ki_i kp_o)/I
/// matched against (s^2 + 2 zeta w_c s + w_c^2)(s + a w_c) with the real pole
/// ratio a = third_pole_ratio, giving closed forms:
///   kp_i = I (2 zeta + a) w_c
///   kp_o = smaller root of (2z+a) x^2 - (1 + 2 zeta a) w_c x + a w_c^2 = 0
///   ki_i = I (1 + 2 zeta a) w_c^2 - kp_i kp_o
PidAxisGains pid_tune_axis(double inertia, double omega_c, double zeta,
                           double third_pole_ratio = 0.25);

/// Tune all three axes at a common bandwidth/damping.
CascadedPidGains pid_tune(const InertiaParams& inertia, double omega_c,
                          double zeta, double third_pole_ratio = 0.25);

/// Advance the cascade one step against the measured rates (regulation to
/// zero setpoint) and return the commanded torque. The inner integrator is
/// frozen while the unclamped command exceeds u_max (anti-windup), and the
/// returned command is clamped.
MomentInput pid_step(const CascadedPidGains& gains, CascadedPidState& state,
                     const Eigen::Vector3d& measured_rates, double dt);

}  // namespace attctl
