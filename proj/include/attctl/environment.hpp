#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <vector>

#include "attctl/state_space.hpp"

namespace attctl {

/// Low-altitude Dryden gust shaping, with a fixed gust-velocity-to-torque
/// gain per axis. Defaults target the severe 15 m/s gust class at 10 m.
struct DrydenConfig {
  double wind_speed = 15.0;  ///< mean wind V [m/s]
  double altitude = 10.0;    ///< [m]
  double L_u = 200.0;        ///< longitudinal scale length [m]
  double L_v = 200.0;        ///< lateral scale length [m]
  double L_w = 10.0;         ///< vertical scale length [m]
  double sigma_u = 2.83;     ///< [m/s]
  double sigma_v = 2.83;     ///< [m/s]
  double sigma_w = 1.5;      ///< [m/s]
  /// Gust velocity to body torque [N m per m/s]; calibrated so the 60 s
  /// roll/pitch torque peak reaches about 0.65 N m at the default intensities.
  double c_phi = 0.0859;
  double c_theta = 0.0956;
  double c_psi = 0.0240;
  double sample_rate = 1000.0;  ///< [Hz]
  uint64_t seed = 1;
};

/// Gyro noise at a given SNR relative to the rate envelope.
struct GyroNoiseConfig {
  double snr_db = 35.0;
  double sigma = 0.0154;        ///< per-axis std [rad/s]
  double sample_rate = 1000.0;  ///< [Hz]
  uint64_t seed = 2;

  /// Std implied by the SNR with the rate envelope (+-1.5 rad/s, uniform)
  /// as the signal reference: (1.5/sqrt(3)) * 10^(-snr/20).
  static double sigma_from_snr(double snr_db, double rate_envelope = 1.5);
};

/// Time series of the three disturbance torques on a fixed sample grid.
struct DisturbanceSeries {
  double dt = 0.0;
  std::vector<Eigen::Vector3d> torque;  ///< (d_phi, d_theta, d_psi) [N m]
};

/// Time series of the three gyro noise samples.
struct NoiseSeries {
  double dt = 0.0;
  std::vector<Eigen::Vector3d> rate;  ///< (n_p, n_q, n_r) [rad/s]
};

/// The three MIL-spec gust shaping filters (longitudinal, lateral, vertical),
/// normalized for unit-intensity continuous white-noise input:
///   H_u(s) = sigma_u sqrt(2 L_u / (pi V)) / (1 + (L_u/V) s)
///   H_{v,w}(s) = sigma sqrt(L/(pi V)) (1 + sqrt(3)(L/V) s) / (1 + (L/V) s)^2
std::array<StateSpaceModel, 3> dryden_filters(const DrydenConfig& cfg);

/// One-sided analytic PSD |H(j omega)|^2 of filter index 0..2 (u, v, w).
double dryden_psd(const DrydenConfig& cfg, int channel, double omega);

/// Seeded gust-driven torque series: independent white sequences (scaled to
/// the continuous unit-intensity equivalent) drive the three filters, ZOH
/// discretized exactly; channel mapping roll<-lateral, pitch<-longitudinal,
/// yaw<-vertical; outputs scaled by c_*.
DisturbanceSeries disturbance_torques(const DrydenConfig& cfg, double duration,
                                      double dt);

/// Raw gust velocity series of one filter channel (0=u,1=v,2=w); used for
/// spectral validation. Deterministic per (cfg.seed, channel).
std::vector<double> gust_velocity_series(const DrydenConfig& cfg, int channel,
                                         double duration, double dt);

/// Seeded zero-mean Gaussian gyro noise, sample-and-hold at the sensor rate.
NoiseSeries gyro_noise(const GyroNoiseConfig& cfg, double duration, double dt);

}  // namespace attctl
