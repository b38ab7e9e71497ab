#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>

namespace attctl {

/// Euler angles (ZYX convention) and body angular rates.
struct AttitudeState {
  double phi = 0.0;    ///< roll [rad]
  double theta = 0.0;  ///< pitch [rad]
  double psi = 0.0;    ///< yaw [rad]
  double p = 0.0;      ///< body roll rate [rad/s]
  double q = 0.0;      ///< body pitch rate [rad/s]
  double r = 0.0;      ///< body yaw rate [rad/s]

  Eigen::Matrix<double, 6, 1> vector() const {
    Eigen::Matrix<double, 6, 1> v;
    v << phi, theta, psi, p, q, r;
    return v;
  }
  static AttitudeState from_vector(const Eigen::Matrix<double, 6, 1>& v) {
    return {v(0), v(1), v(2), v(3), v(4), v(5)};
  }
  bool all_finite() const { return vector().allFinite(); }
};

/// Rigid-body mass properties; principal inertia axes assumed.
struct InertiaParams {
  double mass = 10.0;  ///< [kg]
  double Ix = 0.25;    ///< [kg m^2]
  double Iy = 0.2;     ///< [kg m^2]
  double Iz = 0.1;     ///< [kg m^2]

  double k1() const { return (Iy - Iz) / Ix; }
  double k2() const { return (Iz - Ix) / Iy; }
  double k3() const { return (Ix - Iy) / Iz; }
};

/// Body torques about roll, pitch, yaw [N m].
struct MomentInput {
  double L = 0.0;
  double M = 0.0;
  double N = 0.0;

  Eigen::Vector3d vector() const { return {L, M, N}; }
  bool all_finite() const { return vector().allFinite(); }
};

/// First-order actuator lag 1/(tau s + 1) with symmetric command saturation,
/// applied independently per axis.
struct ActuatorModel {
  double tau = 0.02;   ///< time constant [s]
  double u_max = 4.0;  ///< saturation limit [N m]
};

/// Per-axis actuator lag states (the delivered torques).
struct ActuatorState {
  Eigen::Vector3d torque = Eigen::Vector3d::Zero();
};

/// Pitch guard: simulation is aborted once |cos theta| drops below cos(84 deg).
inline constexpr double kGuardMarginCos = 0.10452846326765347;  // cos(84 deg)

/// Default stability-augmentation damping used when exporting synthesis plants.
inline constexpr double kDefaultEpsilon = 1e-3;  // [1/s]

/// Rigid-body rotational dynamics with optional viscous damping epsilon on
/// every state. epsilon = 0 is the physical model; epsilon > 0 is used only
/// for the synthesis plant export.
///
/// Throws SingularityError when the pitch guard is violated and NonFiniteError
/// on NaN/Inf inputs.
AttitudeState attitude_derivative(const AttitudeState& x, const MomentInput& u,
                                  const InertiaParams& inertia,
                                  double epsilon = 0.0);

/// Advance the actuator lag exactly over dt (exponential update) with the
/// command saturated before filtering. Returns the new lag state; the
/// delivered torque is the state itself.
ActuatorState actuator_step(const ActuatorState& state, const MomentInput& command,
                            const ActuatorModel& model, double dt);

/// Classical fixed-step RK4 update for a generic vector field.
template <typename Derivative>
Eigen::VectorXd rk4_step(Derivative&& f, const Eigen::VectorXd& x, double t,
                         double dt) {
  const Eigen::VectorXd k1 = f(t, x);
  const Eigen::VectorXd k2 = f(t + 0.5 * dt, x + 0.5 * dt * k1);
  const Eigen::VectorXd k3 = f(t + 0.5 * dt, x + 0.5 * dt * k2);
  const Eigen::VectorXd k4 = f(t + dt, x + dt * k3);
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Rotational kinetic energy 0.5 (Ix p^2 + Iy q^2 + Iz r^2).
double rotational_energy(const AttitudeState& x, const InertiaParams& inertia);

}  // namespace attctl
