#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "attctl/environment.hpp"

using namespace attctl;

TEST_CASE("dryden filter DC gains and poles") {
  const DrydenConfig cfg;
  const auto filters = dryden_filters(cfg);

  const double dc_u = filters[0].eval(0.0)(0, 0).real();
  CHECK(dc_u == doctest::Approx(cfg.sigma_u *
                                std::sqrt(2.0 * cfg.L_u / (M_PI * cfg.wind_speed)))
                    .epsilon(1e-12));

  // Longitudinal: single pole at -V/L_u; lateral/vertical: double pole at -V/L.
  CHECK(filters[0].poles()(0).real() ==
        doctest::Approx(-cfg.wind_speed / cfg.L_u).epsilon(1e-9));
  for (int ch : {1, 2}) {
    const double L = ch == 1 ? cfg.L_v : cfg.L_w;
    const Eigen::VectorXcd p = filters[ch].poles();
    REQUIRE(p.size() == 2);
    for (Eigen::Index i = 0; i < 2; ++i) {
      CHECK(p(i).real() == doctest::Approx(-cfg.wind_speed / L).epsilon(1e-6));
      CHECK(std::abs(p(i).imag()) < 1e-9);
    }
  }
}

TEST_CASE("analytic PSD equals the closed-form expressions") {
  const DrydenConfig cfg;
  const double V = cfg.wind_speed;
  for (double w = 0.05; w < 60.0; w *= 1.7) {
    const double Tu = cfg.L_u / V;
    const double want_u =
        cfg.sigma_u * cfg.sigma_u * (2.0 * cfg.L_u / (M_PI * V)) /
        (1.0 + Tu * Tu * w * w);
    CHECK(std::abs(dryden_psd(cfg, 0, w) - want_u) <=
          1e-10 * std::max(1.0, want_u));

    const double Tw = cfg.L_w / V;
    const double want_w = cfg.sigma_w * cfg.sigma_w * (cfg.L_w / (M_PI * V)) *
                          (1.0 + 3.0 * Tw * Tw * w * w) /
                          std::pow(1.0 + Tw * Tw * w * w, 2);
    CHECK(std::abs(dryden_psd(cfg, 2, w) - want_w) <=
          1e-10 * std::max(1.0, want_w));
  }
}

TEST_CASE("PSD matches the filter magnitude response") {
  const DrydenConfig cfg;
  const auto filters = dryden_filters(cfg);
  for (int ch = 0; ch < 3; ++ch)
    for (double w : {0.1, 1.0, 10.0}) {
      const double mag = filters[ch].sigma_max(w);
      CHECK(dryden_psd(cfg, ch, w) == doctest::Approx(mag * mag).epsilon(1e-9));
    }
}

TEST_CASE("gyro noise sigma from the 35 dB SNR") {
  const double sigma = GyroNoiseConfig::sigma_from_snr(35.0);
  CHECK(sigma == doctest::Approx((1.5 / std::sqrt(3.0)) *
                                 std::pow(10.0, -35.0 / 20.0))
                     .epsilon(1e-12));
  CHECK(sigma == doctest::Approx(0.0154).epsilon(1e-2));
}

TEST_CASE("gyro noise sample variance over one million samples") {
  GyroNoiseConfig cfg;
  cfg.seed = 42;
  const NoiseSeries series = gyro_noise(cfg, 1000.0, 1e-3);
  REQUIRE(series.rate.size() >= 1000000);
  double sum = 0.0, sq = 0.0;
  size_t n = 0;
  for (const auto& v : series.rate)
    for (int i = 0; i < 3; ++i) {
      sum += v(i);
      sq += v(i) * v(i);
      ++n;
    }
  const double mean = sum / static_cast<double>(n);
  const double var = sq / static_cast<double>(n) - mean * mean;
  CHECK(std::abs(var - cfg.sigma * cfg.sigma) <= 0.01 * cfg.sigma * cfg.sigma);
  CHECK(std::abs(mean) <= 4.0 * cfg.sigma / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("noise and disturbance generation are seed deterministic") {
  GyroNoiseConfig gn;
  gn.seed = 9;
  const NoiseSeries a = gyro_noise(gn, 1.0, 1e-3);
  const NoiseSeries b = gyro_noise(gn, 1.0, 1e-3);
  REQUIRE(a.rate.size() == b.rate.size());
  for (size_t i = 0; i < a.rate.size(); ++i)
    CHECK((a.rate[i] - b.rate[i]).cwiseAbs().maxCoeff() == 0.0);

  DrydenConfig dc;
  dc.seed = 5;
  const DisturbanceSeries d1 = disturbance_torques(dc, 2.0, 1e-3);
  const DisturbanceSeries d2 = disturbance_torques(dc, 2.0, 1e-3);
  REQUIRE(d1.torque.size() == d2.torque.size());
  for (size_t i = 0; i < d1.torque.size(); ++i)
    CHECK((d1.torque[i] - d2.torque[i]).cwiseAbs().maxCoeff() == 0.0);

  dc.seed = 6;
  const DisturbanceSeries d3 = disturbance_torques(dc, 2.0, 1e-3);
  bool differs = false;
  for (size_t i = 0; i < d1.torque.size(); ++i)
    if ((d1.torque[i] - d3.torque[i]).cwiseAbs().maxCoeff() != 0.0) differs = true;
  CHECK(differs);
}

TEST_CASE("torque channels are mutually uncorrelated") {
  DrydenConfig cfg;
  cfg.seed = 13;
  const DisturbanceSeries d = disturbance_torques(cfg, 600.0, 1e-3);
  const size_t n = d.torque.size();
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& v : d.torque) mean += v;
  mean /= static_cast<double>(n);
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& v : d.torque) {
    const Eigen::Vector3d c = v - mean;
    cov += c * c.transpose();
  }
  cov /= static_cast<double>(n);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j)
        CHECK(std::abs(cov(i, j)) / std::sqrt(cov(i, i) * cov(j, j)) <= 0.05);
}

TEST_CASE("gust series mean is consistent with the correlation time") {
  DrydenConfig cfg;
  cfg.seed = 3;
  const double duration = 600.0;
  const std::vector<double> u = gust_velocity_series(cfg, 0, duration, 1e-3);
  double mean = 0.0;
  for (double v : u) mean += v;
  mean /= static_cast<double>(u.size());
  // The series decorrelates over ~L/V seconds, so the effective sample count
  // is duration / (2 L / V), not the raw sample count.
  const double n_eff = duration / (2.0 * cfg.L_u / cfg.wind_speed);
  CHECK(std::abs(mean) <= 3.0 * cfg.sigma_u / std::sqrt(n_eff));
}

TEST_CASE("no state resets between consecutive samples") {
  DrydenConfig cfg;
  cfg.seed = 4;
  const double dt = 1e-3;
  const std::vector<double> u = gust_velocity_series(cfg, 0, 120.0, dt);
  // One-step standard deviation, estimated empirically.
  double step_sq = 0.0;
  for (size_t i = 1; i < u.size(); ++i)
    step_sq += (u[i] - u[i - 1]) * (u[i] - u[i - 1]);
  const double sigma_step = std::sqrt(step_sq / static_cast<double>(u.size() - 1));
  double max_step = 0.0;
  for (size_t i = 1; i < u.size(); ++i)
    max_step = std::max(max_step, std::abs(u[i] - u[i - 1]));
  CHECK(max_step <= 6.0 * sigma_step);
}
