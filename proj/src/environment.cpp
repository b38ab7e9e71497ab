#include "attctl/environment.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "attctl/errors.hpp"
#include "attctl/rng.hpp"

namespace attctl {

namespace {

// Exact ZOH discretization via the augmented exponential.
void discretize(const StateSpaceModel& sys, double dt, Eigen::MatrixXd& Ad,
                Eigen::MatrixXd& Bd) {
  const Eigen::Index n = sys.states(), m = sys.inputs();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + m, n + m);
  M.topLeftCorner(n, n) = sys.A * dt;
  M.topRightCorner(n, m) = sys.B * dt;
  const Eigen::MatrixXd E = M.exp();
  Ad = E.topLeftCorner(n, n);
  Bd = E.topRightCorner(n, m);
}

// Steps per held exogenous sample; dt must divide the sensor period.
int hold_steps(double sample_rate, double dt) {
  const double period = 1.0 / sample_rate;
  const int k = static_cast<int>(std::round(period / dt));
  if (k < 1 || std::abs(k * dt - period) > 1e-9 * period)
    throw ConfigError("integration step must divide the sample period");
  return k;
}

std::vector<double> filter_output_series(const StateSpaceModel& filt,
                                         uint64_t seed, double duration,
                                         double step) {
  Eigen::MatrixXd Ad, Bd;
  discretize(filt, step, Ad, Bd);
  const int n_samples = static_cast<int>(std::round(duration / step)) + 1;
  // Continuous unit-intensity white noise equivalent over one hold interval.
  const double drive = std::sqrt(M_PI / step);

  Rng rng(seed);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(filt.states());
  std::vector<double> out(static_cast<size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k) {
    out[static_cast<size_t>(k)] = (filt.C * x)(0);
    x = Ad * x + Bd * Eigen::VectorXd::Constant(1, drive * rng.gaussian());
  }
  return out;
}

}  // namespace

double GyroNoiseConfig::sigma_from_snr(double snr_db, double rate_envelope) {
  return rate_envelope / std::sqrt(3.0) * std::pow(10.0, -snr_db / 20.0);
}

std::array<StateSpaceModel, 3> dryden_filters(const DrydenConfig& cfg) {
  const double V = cfg.wind_speed;
  const auto one_pole = [&](double sigma, double L) {
    const double T = L / V;
    return StateSpaceModel::from_tf({sigma * std::sqrt(2.0 * T / M_PI)}, {T, 1.0});
  };
  const auto two_pole = [&](double sigma, double L) {
    const double T = L / V;
    const double k = sigma * std::sqrt(T / M_PI);
    return StateSpaceModel::from_tf({k * std::sqrt(3.0) * T, k},
                                    {T * T, 2.0 * T, 1.0});
  };
  return {one_pole(cfg.sigma_u, cfg.L_u), two_pole(cfg.sigma_v, cfg.L_v),
          two_pole(cfg.sigma_w, cfg.L_w)};
}

double dryden_psd(const DrydenConfig& cfg, int channel, double omega) {
  const double V = cfg.wind_speed;
  if (channel == 0) {
    const double T = cfg.L_u / V;
    return cfg.sigma_u * cfg.sigma_u * (2.0 * T / M_PI) /
           (1.0 + T * omega * T * omega);
  }
  const double L = (channel == 1) ? cfg.L_v : cfg.L_w;
  const double sigma = (channel == 1) ? cfg.sigma_v : cfg.sigma_w;
  const double T = L / V;
  const double x = T * omega;
  const double den = 1.0 + x * x;
  return sigma * sigma * (T / M_PI) * (1.0 + 3.0 * x * x) / (den * den);
}

std::vector<double> gust_velocity_series(const DrydenConfig& cfg, int channel,
                                         double duration, double dt) {
  if (channel < 0 || channel > 2)
    throw ConfigError("gust channel must be 0, 1 or 2");
  if (duration <= 0.0 || dt <= 0.0)
    throw ConfigError("duration and dt must be positive");
  const auto filters = dryden_filters(cfg);
  return filter_output_series(filters[static_cast<size_t>(channel)],
                              split_seed(cfg.seed, static_cast<uint64_t>(channel)),
                              duration, dt);
}

DisturbanceSeries disturbance_torques(const DrydenConfig& cfg, double duration,
                                      double dt) {
  if (duration <= 0.0 || dt <= 0.0)
    throw ConfigError("duration and dt must be positive");
  const double step = 1.0 / cfg.sample_rate;
  const int hold = hold_steps(cfg.sample_rate, dt);

  // Roll from lateral gusts, pitch from longitudinal, yaw from vertical.
  const auto v = gust_velocity_series(cfg, 1, duration, step);
  const auto u = gust_velocity_series(cfg, 0, duration, step);
  const auto w = gust_velocity_series(cfg, 2, duration, step);

  DisturbanceSeries out;
  out.dt = dt;
  const int n = static_cast<int>(std::round(duration / dt)) + 1;
  out.torque.resize(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const size_t j = static_cast<size_t>(k / hold);
    out.torque[static_cast<size_t>(k)] =
        Eigen::Vector3d(cfg.c_phi * v[j], cfg.c_theta * u[j], cfg.c_psi * w[j]);
  }
  return out;
}

NoiseSeries gyro_noise(const GyroNoiseConfig& cfg, double duration, double dt) {
  if (duration <= 0.0 || dt <= 0.0)
    throw ConfigError("duration and dt must be positive");
  const int hold = hold_steps(cfg.sample_rate, dt);
  const int n = static_cast<int>(std::round(duration / dt)) + 1;

  std::array<Rng, 3> rngs{Rng(split_seed(cfg.seed, 0)),
                          Rng(split_seed(cfg.seed, 1)),
                          Rng(split_seed(cfg.seed, 2))};
  NoiseSeries out;
  out.dt = dt;
  out.rate.resize(static_cast<size_t>(n));
  Eigen::Vector3d held = Eigen::Vector3d::Zero();
  for (int k = 0; k < n; ++k) {
    if (k % hold == 0)
      for (int a = 0; a < 3; ++a)
        held(a) = cfg.sigma * rngs[static_cast<size_t>(a)].gaussian();
    out.rate[static_cast<size_t>(k)] = held;
  }
  return out;
}

}  // namespace attctl
