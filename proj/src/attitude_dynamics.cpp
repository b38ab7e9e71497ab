#include "attctl/attitude_dynamics.hpp"

#include <algorithm>

#include "attctl/errors.hpp"

namespace attctl {

AttitudeState attitude_derivative(const AttitudeState& x, const MomentInput& u,
                                  const InertiaParams& inertia, double epsilon) {
  if (!x.all_finite() || !u.all_finite())
    throw NonFiniteError("attitude_derivative: non-finite state or torque");

  const double c_phi = std::cos(x.phi), s_phi = std::sin(x.phi);
  const double c_theta = std::cos(x.theta), s_theta = std::sin(x.theta);
  if (std::abs(c_theta) < kGuardMarginCos)
    throw SingularityError("attitude_derivative: pitch beyond kinematic guard");

  const double t_theta = s_theta / c_theta;

  AttitudeState d;
  d.phi = x.p + s_phi * t_theta * x.q + c_phi * t_theta * x.r - epsilon * x.phi;
  d.theta = c_phi * x.q - s_phi * x.r - epsilon * x.theta;
  d.psi = (s_phi * x.q + c_phi * x.r) / c_theta - epsilon * x.psi;
  d.p = inertia.k1() * x.q * x.r + u.L / inertia.Ix - epsilon * x.p;
  d.q = inertia.k2() * x.p * x.r + u.M / inertia.Iy - epsilon * x.q;
  d.r = inertia.k3() * x.p * x.q + u.N / inertia.Iz - epsilon * x.r;
  return d;
}

ActuatorState actuator_step(const ActuatorState& state, const MomentInput& command,
                            const ActuatorModel& model, double dt) {
  if (!command.all_finite())
    throw NonFiniteError("actuator_step: non-finite command");
  const double alpha = std::exp(-dt / model.tau);
  ActuatorState next;
  const Eigen::Vector3d cmd = command.vector().cwiseMax(-model.u_max).cwiseMin(model.u_max);
  next.torque = cmd + alpha * (state.torque - cmd);
  return next;
}

double rotational_energy(const AttitudeState& x, const InertiaParams& inertia) {
  return 0.5 * (inertia.Ix * x.p * x.p + inertia.Iy * x.q * x.q +
                inertia.Iz * x.r * x.r);
}

}  // namespace attctl
