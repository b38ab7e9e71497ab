#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <vector>

#include "attctl/errors.hpp"
#include "attctl/pid.hpp"

using namespace attctl;

namespace {

// Roots of the designed per-axis characteristic polynomial
// s^3 + (kp_i/I) s^2 + ((kp_i kp_o + ki_i)/I) s + ki_i kp_o / I.
std::vector<std::complex<double>> closed_loop_roots(const PidAxisGains& g,
                                                    double I) {
  Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
  companion(0, 0) = -g.kp_inner / I;
  companion(0, 1) = -(g.kp_inner * g.kp_outer + g.ki_inner) / I;
  companion(0, 2) = -g.ki_inner * g.kp_outer / I;
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  const Eigen::Vector3cd ev =
      Eigen::EigenSolver<Eigen::Matrix3d>(companion).eigenvalues();
  return {ev(0), ev(1), ev(2)};
}

}  // namespace

TEST_CASE("pole placement hits the requested dominant pair") {
  const double I = 0.25, wc = 6.0, zeta = 0.9;
  const PidAxisGains g = pid_tune_axis(I, wc, zeta);
  const std::complex<double> target(-zeta * wc,
                                    wc * std::sqrt(1.0 - zeta * zeta));
  double best = 1e9;
  for (const auto& root : closed_loop_roots(g, I))
    best = std::min(best, std::abs(root - target));
  CHECK(best <= 0.02 * std::abs(target));
}

TEST_CASE("torque-producing gains scale with inertia") {
  const PidAxisGains a = pid_tune_axis(0.25, 6.0, 0.9);
  const PidAxisGains b = pid_tune_axis(0.50, 6.0, 0.9);
  CHECK(b.kp_inner == doctest::Approx(2.0 * a.kp_inner).epsilon(1e-12));
  CHECK(b.ki_inner == doctest::Approx(2.0 * a.ki_inner).epsilon(1e-12));
  CHECK(b.kp_outer == doctest::Approx(a.kp_outer).epsilon(1e-12));
}

TEST_CASE("critical damping gives a repeated real dominant pair") {
  const PidAxisGains g = pid_tune_axis(0.25, 6.0, 1.0);
  for (const auto& root : closed_loop_roots(g, 0.25))
    CHECK(std::abs(root.imag()) < 1e-6);
}

TEST_CASE("pid_tune covers all three axes") {
  const CascadedPidGains gains = pid_tune(InertiaParams{}, 6.0, 0.9);
  CHECK(gains.axis[0].kp_inner == doctest::Approx(0.25 * (1.8 + 0.25) * 6.0));
  CHECK(gains.axis[1].kp_inner ==
        doctest::Approx(gains.axis[0].kp_inner * 0.2 / 0.25));
  CHECK(gains.axis[2].kp_inner ==
        doctest::Approx(gains.axis[0].kp_inner * 0.1 / 0.25));
}

TEST_CASE("invalid tuning parameters are rejected") {
  CHECK_THROWS_AS(pid_tune_axis(-1.0, 6.0, 0.9), ConfigError);
  CHECK_THROWS_AS(pid_tune_axis(0.25, 6.0, 1.5), ConfigError);
}

TEST_CASE("equilibrium produces zero torque") {
  const CascadedPidGains gains = pid_tune(InertiaParams{}, 6.0, 0.9);
  CascadedPidState state;
  const MomentInput u = pid_step(gains, state, Eigen::Vector3d::Zero(), 1e-3);
  CHECK(u.L == 0.0);
  CHECK(u.M == 0.0);
  CHECK(u.N == 0.0);
  CHECK(state.pseudo_angle.isZero(0.0));
  CHECK(state.integrator.isZero(0.0));
}

TEST_CASE("single step matches the hand-stepped difference equation") {
  const CascadedPidGains gains = pid_tune(InertiaParams{}, 6.0, 0.9);
  CascadedPidState state;
  const double dt = 1e-3, rate = 1.0;
  const MomentInput u =
      pid_step(gains, state, Eigen::Vector3d(rate, 0.0, 0.0), dt);

  const PidAxisGains& g = gains.axis[0];
  const double angle = dt * rate;  // leak acts on the previous (zero) angle
  const double error = -g.kp_outer * angle - rate;
  const double want = g.kp_inner * error + g.ki_inner * dt * error;
  CHECK(u.L == doctest::Approx(want).epsilon(1e-12));
  CHECK(state.pseudo_angle(0) == doctest::Approx(angle).epsilon(1e-12));
  CHECK(state.integrator(0) == doctest::Approx(dt * error).epsilon(1e-12));
}

TEST_CASE("anti-windup freezes the integrator while saturated") {
  CascadedPidGains gains = pid_tune(InertiaParams{}, 8.0, 0.9);
  gains.u_max = 0.1;
  CascadedPidState state;
  pid_step(gains, state, Eigen::Vector3d(10.0, 0.0, 0.0), 1e-3);
  const double frozen = state.integrator(0);
  const MomentInput u =
      pid_step(gains, state, Eigen::Vector3d(10.0, 0.0, 0.0), 1e-3);
  CHECK(state.integrator(0) == frozen);
  CHECK(std::abs(u.L) <= gains.u_max);
}

TEST_CASE("step disturbance on the rigid axis decays") {
  // Roll axis double integrator driven by a constant 0.1 N m disturbance.
  const double I = 0.25, wc = 6.0, zeta = 0.9, dt = 1e-4;
  const CascadedPidGains gains = pid_tune(InertiaParams{}, wc, zeta);
  CascadedPidState state;
  double p = 0.0;
  double peak = 0.0, final_rate = 0.0;
  // Disturbance recovery is governed by the slowest closed-loop pole, the
  // real one placed at third_pole_ratio * wc.
  const double settle = 5.0 / (0.25 * wc);
  const int steps = static_cast<int>(2.0 * settle / dt);
  for (int k = 0; k < steps; ++k) {
    const MomentInput u = pid_step(gains, state, Eigen::Vector3d(p, 0.0, 0.0), dt);
    p += dt * (0.1 + u.L) / I;
    peak = std::max(peak, std::abs(p));
    if (k * dt >= settle) final_rate = std::max(final_rate, std::abs(p));
  }
  CHECK(final_rate <= 0.02 * peak);
}

TEST_CASE("controller stepping is deterministic") {
  const CascadedPidGains gains = pid_tune(InertiaParams{}, 6.0, 0.9);
  auto run = [&]() {
    CascadedPidState state;
    Eigen::Vector3d out = Eigen::Vector3d::Zero();
    for (int k = 0; k < 1000; ++k) {
      const Eigen::Vector3d rates(std::sin(0.01 * k), std::cos(0.02 * k), 0.1);
      const MomentInput u = pid_step(gains, state, rates, 1e-3);
      out = u.vector();
    }
    return out;
  };
  CHECK((run() - run()).cwiseAbs().maxCoeff() == 0.0);
}
