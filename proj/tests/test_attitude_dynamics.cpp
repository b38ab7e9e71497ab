#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "attctl/attitude_dynamics.hpp"
#include "attctl/errors.hpp"

using namespace attctl;

namespace {

// Direct evaluation of the equations of motion, written independently of the
// library implementation.
Eigen::Matrix<double, 6, 1> reference_derivative(const AttitudeState& x,
                                                 const MomentInput& u,
                                                 const InertiaParams& J) {
  Eigen::Matrix<double, 6, 1> d;
  const double tt = std::tan(x.theta);
  d(0) = x.p + std::sin(x.phi) * tt * x.q + std::cos(x.phi) * tt * x.r;
  d(1) = std::cos(x.phi) * x.q - std::sin(x.phi) * x.r;
  d(2) = (std::sin(x.phi) * x.q + std::cos(x.phi) * x.r) / std::cos(x.theta);
  d(3) = (J.Iy - J.Iz) / J.Ix * x.q * x.r + u.L / J.Ix;
  d(4) = (J.Iz - J.Ix) / J.Iy * x.p * x.r + u.M / J.Iy;
  d(5) = (J.Ix - J.Iy) / J.Iz * x.p * x.q + u.N / J.Iz;
  return d;
}

}  // namespace

TEST_CASE("pure roll torque from rest") {
  const AttitudeState d =
      attitude_derivative(AttitudeState{}, {0.25, 0.0, 0.0}, InertiaParams{});
  CHECK(d.phi == 0.0);
  CHECK(d.theta == 0.0);
  CHECK(d.psi == 0.0);
  CHECK(d.p == doctest::Approx(1.0).epsilon(1e-15));  // L / Ix = 0.25 / 0.25
  CHECK(d.q == 0.0);
  CHECK(d.r == 0.0);
}

TEST_CASE("unit rates, zero torque: gyroscopic coupling") {
  AttitudeState x;
  x.p = x.q = x.r = 1.0;
  const AttitudeState d = attitude_derivative(x, {}, InertiaParams{});
  CHECK(d.phi == doctest::Approx(1.0));
  CHECK(d.theta == doctest::Approx(1.0));
  CHECK(d.psi == doctest::Approx(1.0));
  CHECK(d.p == doctest::Approx(0.4));    // k1 = (0.2 - 0.1) / 0.25
  CHECK(d.q == doctest::Approx(-0.75));  // k2 = (0.1 - 0.25) / 0.2
  CHECK(d.r == doctest::Approx(0.5));    // k3 = (0.25 - 0.2) / 0.1
}

TEST_CASE("independent formula oracle at a generic state") {
  const AttitudeState x{0.3, 0.5, -1.0, 0.1, -0.2, 0.05};
  const MomentInput u{0.1, -0.1, 0.02};
  const AttitudeState d = attitude_derivative(x, u, InertiaParams{});
  const Eigen::Matrix<double, 6, 1> want = reference_derivative(x, u, InertiaParams{});
  CHECK((d.vector() - want).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("damping epsilon subtracts epsilon times the state") {
  const AttitudeState x{0.2, -0.1, 0.4, 0.5, -0.3, 0.1};
  const MomentInput u{0.05, 0.02, -0.01};
  const double eps = 1e-3;
  const AttitudeState base = attitude_derivative(x, u, InertiaParams{}, 0.0);
  const AttitudeState damped = attitude_derivative(x, u, InertiaParams{}, eps);
  CHECK((damped.vector() - (base.vector() - eps * x.vector()))
            .cwiseAbs()
            .maxCoeff() < 1e-15);
}

TEST_CASE("pitch guard and non-finite input") {
  AttitudeState near_vertical;
  near_vertical.theta = 89.0 * M_PI / 180.0;
  CHECK_THROWS_AS(attitude_derivative(near_vertical, {}, InertiaParams{}),
                  SingularityError);
  AttitudeState bad;
  bad.p = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(attitude_derivative(bad, {}, InertiaParams{}), NonFiniteError);
}

TEST_CASE("actuator step response over one time constant") {
  const ActuatorModel model;  // tau = 0.02
  ActuatorState s;
  s = actuator_step(s, {1.0, 0.0, 0.0}, model, model.tau);
  CHECK(s.torque(0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(s.torque(1) == 0.0);
}

TEST_CASE("actuator equilibrium and saturation") {
  ActuatorModel model;
  model.u_max = 2.0;
  ActuatorState zero;
  zero = actuator_step(zero, {}, model, 1e-3);
  CHECK(zero.torque.isZero(0.0));

  // A command of 10 clamps to 2 before filtering.
  ActuatorState s;
  s = actuator_step(s, {10.0, 0.0, 0.0}, model, model.tau);
  CHECK(s.torque(0) == doctest::Approx(2.0 * (1.0 - std::exp(-1.0))).epsilon(1e-12));
}

TEST_CASE("rk4 on the scalar exponential") {
  const auto f = [](double, const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return -x;
  };
  Eigen::VectorXd x0 = Eigen::VectorXd::Ones(1);
  const Eigen::VectorXd x1 = rk4_step(f, x0, 0.0, 0.1);
  CHECK(std::abs(x1(0) - std::exp(-0.1)) < 1e-7);

  const auto zero_field = [](double, const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return Eigen::VectorXd::Zero(x.size());
  };
  CHECK(rk4_step(zero_field, x0, 0.0, 0.1)(0) == 1.0);
}

TEST_CASE("rk4 fourth-order convergence") {
  const auto f = [](double, const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return -x;
  };
  auto integrate = [&](double dt, int steps) {
    Eigen::VectorXd x = Eigen::VectorXd::Ones(1);
    for (int i = 0; i < steps; ++i) x = rk4_step(f, x, i * dt, dt);
    return x(0);
  };
  const double exact = std::exp(-1.0);
  const double err_coarse = std::abs(integrate(0.1, 10) - exact);
  const double err_fine = std::abs(integrate(0.01, 100) - exact);
  // Halving dt by 10 should shrink the error by roughly 10^4.
  const double ratio = err_coarse / err_fine;
  CHECK(ratio > 3e3);
  CHECK(ratio < 3e4);
}

TEST_CASE("torque-free rotation conserves energy") {
  const InertiaParams J;
  AttitudeState x{0.05, -0.04, 0.1, 0.8, -0.5, 0.3};
  const double e0 = rotational_energy(x, J);
  const auto f = [&](double, const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return attitude_derivative(AttitudeState::from_vector(v), {}, J).vector();
  };
  Eigen::VectorXd v = x.vector();
  const double dt = 1e-3;
  for (int i = 0; i < 10000; ++i) v = rk4_step(f, v, i * dt, dt);
  const double e1 = rotational_energy(AttitudeState::from_vector(v), J);
  CHECK(std::abs(e1 - e0) / e0 <= 1e-6);
}

TEST_CASE("integration is deterministic") {
  const InertiaParams J;
  const auto f = [&](double, const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return attitude_derivative(AttitudeState::from_vector(v), {0.01, -0.02, 0.005}, J)
        .vector();
  };
  auto run = [&]() {
    Eigen::VectorXd v = AttitudeState{0.1, 0.05, 0.0, 0.2, -0.1, 0.3}.vector();
    for (int i = 0; i < 500; ++i) v = rk4_step(f, v, i * 1e-3, 1e-3);
    return v;
  };
  CHECK((run() - run()).cwiseAbs().maxCoeff() == 0.0);
}
