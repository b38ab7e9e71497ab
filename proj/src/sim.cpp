#include "attctl/sim.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "attctl/errors.hpp"

namespace attctl {

namespace {

constexpr double kRadToDeg = 180.0 / M_PI;

Eigen::Vector3d saturate(const Eigen::Vector3d& u, double limit) {
  return u.cwiseMax(-limit).cwiseMin(limit);
}

}  // namespace

StateSpaceModel bilinear_discretize(const StateSpaceModel& sys, double T) {
  const Eigen::Index n = sys.states();
  const Eigen::MatrixXd M =
      (Eigen::MatrixXd::Identity(n, n) - 0.5 * T * sys.A).partialPivLu().inverse();
  return StateSpaceModel(M * (Eigen::MatrixXd::Identity(n, n) + 0.5 * T * sys.A),
                         M * sys.B * T, sys.C * M,
                         sys.D + 0.5 * T * sys.C * M * sys.B);
}

Metrics compute_metrics(const std::vector<AttitudeState>& state,
                        const std::vector<Eigen::Vector3d>& control) {
  Metrics m;
  if (state.empty()) return m;
  double angle_sq_sum = 0.0, control_sq_sum = 0.0;
  for (const auto& x : state) {
    const Eigen::Vector3d angles(x.phi, x.theta, x.psi);
    m.peak_attitude_deg =
        std::max(m.peak_attitude_deg, angles.cwiseAbs().maxCoeff() * kRadToDeg);
    angle_sq_sum += angles.squaredNorm();
  }
  for (const auto& u : control) {
    m.control_peak = std::max(m.control_peak, u.cwiseAbs().maxCoeff());
    control_sq_sum += u.squaredNorm();
  }
  m.attitude_rmse_deg =
      std::sqrt(angle_sq_sum / (3.0 * static_cast<double>(state.size()))) * kRadToDeg;
  if (!control.empty())
    m.control_rms =
        std::sqrt(control_sq_sum / (3.0 * static_cast<double>(control.size())));
  return m;
}

SimResult run_closed_loop(const SimConfig& cfg) {
  if (cfg.duration <= 0.0 || cfg.dt <= 0.0)
    throw ConfigError("sim: duration and dt must be positive");
  const bool hinf = cfg.controller == ControllerKind::kHinf;
  if (hinf && (cfg.hinf_controller.inputs() != 3 || cfg.hinf_controller.outputs() != 3))
    throw ConfigError("sim: H-inf controller must map 3 rates to 3 torques");

  const int n_steps = static_cast<int>(std::round(cfg.duration / cfg.dt));
  const double sensor_period = 1.0 / cfg.gyro_noise.sample_rate;
  const int hold = static_cast<int>(std::round(sensor_period / cfg.dt));
  if (hold < 1 || std::abs(hold * cfg.dt - sensor_period) > 1e-9 * sensor_period)
    throw ConfigError("sim: dt must divide the sensor period");

  DisturbanceSeries dist;
  if (cfg.disturbance_enabled) {
    dist = disturbance_torques(cfg.dryden, cfg.duration, cfg.dt);
  } else {
    dist.dt = cfg.dt;
    dist.torque.assign(static_cast<size_t>(n_steps) + 1, Eigen::Vector3d::Zero());
  }
  NoiseSeries noise;
  if (cfg.noise_enabled) {
    noise = gyro_noise(cfg.gyro_noise, cfg.duration, cfg.dt);
  } else {
    noise.dt = cfg.dt;
    noise.rate.assign(static_cast<size_t>(n_steps) + 1, Eigen::Vector3d::Zero());
  }

  const Eigen::Index nk = hinf ? cfg.hinf_controller.states() : 0;
  const bool continuous_k = hinf && !cfg.discrete_controller;
  StateSpaceModel kd;
  if (hinf && cfg.discrete_controller)
    kd = bilinear_discretize(cfg.hinf_controller, sensor_period);

  // Joint state: [attitude(6); actuator(3); controller(nk, continuous mode)].
  const Eigen::Index n_joint = 9 + (continuous_k ? nk : 0);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n_joint);
  x.head(6) = cfg.initial_state.vector();

  Eigen::VectorXd xk_discrete = Eigen::VectorXd::Zero(nk);
  CascadedPidState pid_state;
  Eigen::Vector3d held_cmd = Eigen::Vector3d::Zero();  // PID / discrete-K output
  Eigen::Vector3d held_noise = Eigen::Vector3d::Zero();
  Eigen::Vector3d held_dist = Eigen::Vector3d::Zero();

  SimResult result;
  result.time.reserve(static_cast<size_t>(n_steps) + 1);

  const auto record = [&](double t) {
    const AttitudeState xs = AttitudeState::from_vector(x.head<6>());
    result.time.push_back(t);
    result.state.push_back(xs);
    result.measured_rates.push_back(Eigen::Vector3d(xs.p, xs.q, xs.r) + held_noise);
    result.control.push_back(x.segment<3>(6));
    result.disturbance.push_back(held_dist);
  };

  const auto derivative = [&](double /*t*/, const Eigen::VectorXd& xj) {
    const AttitudeState xs = AttitudeState::from_vector(xj.head<6>());
    const Eigen::Vector3d act = xj.segment<3>(6);
    const Eigen::Vector3d torque = act + held_dist;
    const AttitudeState dxs = attitude_derivative(
        xs, {torque(0), torque(1), torque(2)}, cfg.inertia, 0.0);

    Eigen::Vector3d cmd;
    Eigen::VectorXd dxk;
    if (continuous_k) {
      const Eigen::Vector3d y = Eigen::Vector3d(xs.p, xs.q, xs.r) + held_noise;
      const Eigen::VectorXd xc = xj.tail(nk);
      cmd = cfg.hinf_controller.C * xc + cfg.hinf_controller.D * y;
      dxk = cfg.hinf_controller.A * xc + cfg.hinf_controller.B * y;
    } else {
      cmd = held_cmd;
    }

    Eigen::VectorXd dx(n_joint);
    dx.head(6) = dxs.vector();
    dx.segment<3>(6) =
        (saturate(cmd, cfg.actuator.u_max) - act) / cfg.actuator.tau;
    if (continuous_k) dx.tail(nk) = dxk;
    return dx;
  };

  try {
    for (int k = 0; k <= n_steps; ++k) {
      const double t = k * cfg.dt;
      held_dist = dist.torque[static_cast<size_t>(k)];
      if (k % hold == 0) {
        held_noise = noise.rate[static_cast<size_t>(k)];
        const AttitudeState xs = AttitudeState::from_vector(x.head<6>());
        const Eigen::Vector3d y = Eigen::Vector3d(xs.p, xs.q, xs.r) + held_noise;
        if (cfg.controller == ControllerKind::kPid) {
          const MomentInput u = pid_step(cfg.pid_gains, pid_state, y, sensor_period);
          held_cmd = u.vector();
        } else if (cfg.discrete_controller) {
          held_cmd = kd.C * xk_discrete + kd.D * y;
          xk_discrete = kd.A * xk_discrete + kd.B * y;
        }
      }
      record(t);
      if (!x.allFinite()) throw NonFiniteError("sim: state diverged");
      if (k < n_steps) x = rk4_step(derivative, x, t, cfg.dt);
    }
  } catch (const SingularityError&) {
    result.diverged = true;
    result.divergence_time = result.time.empty() ? 0.0 : result.time.back();
  } catch (const NonFiniteError&) {
    result.diverged = true;
    result.divergence_time = result.time.empty() ? 0.0 : result.time.back();
  }

  result.metrics = compute_metrics(result.state, result.control);
  return result;
}

}  // namespace attctl
