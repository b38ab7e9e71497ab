#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

#include "attctl/care.hpp"
#include "attctl/errors.hpp"

using namespace attctl;

namespace {

bool hurwitz(const Eigen::MatrixXd& A) {
  return Eigen::EigenSolver<Eigen::MatrixXd>(A)
             .eigenvalues()
             .real()
             .maxCoeff() < 0.0;
}

CareProblem scalar_problem(double a) {
  CareProblem p;
  p.A = Eigen::MatrixXd::Constant(1, 1, a);
  p.B = Eigen::MatrixXd::Ones(1, 1);
  p.Q = Eigen::MatrixXd::Ones(1, 1);
  p.R = Eigen::MatrixXd::Ones(1, 1);
  return p;
}

CareProblem random_problem(uint64_t seed, int n, int m) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto mat = [&](int r, int c) {
    Eigen::MatrixXd M(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) M(i, j) = gauss(rng);
    return M;
  };
  CareProblem p;
  p.A = mat(n, n);
  p.B = mat(n, m);
  const Eigen::MatrixXd Mq = mat(n, n);
  p.Q = Mq.transpose() * Mq;  // PSD
  p.R = Eigen::MatrixXd::Identity(m, m);
  return p;
}

}  // namespace

TEST_CASE("scalar CARE, neutrally stable plant") {
  // a = 0: -x^2 + 1 = 0, stabilizing root x = 1.
  const Eigen::MatrixXd X = solve_care(scalar_problem(0.0));
  CHECK(std::abs(X(0, 0) - 1.0) <= 1e-10);
}

TEST_CASE("scalar CARE, unstable plant") {
  // a = 1: 2x - x^2 + 1 = 0, stabilizing root x = 1 + sqrt(2).
  const Eigen::MatrixXd X = solve_care(scalar_problem(1.0));
  CHECK(std::abs(X(0, 0) - (1.0 + std::sqrt(2.0))) <= 1e-10);
}

TEST_CASE("random five-state problems: residual and closed loop") {
  for (uint64_t seed : {101, 202, 303, 404, 505}) {
    const CareProblem p = random_problem(seed, 5, 2);
    const Eigen::MatrixXd X = solve_care(p);
    CHECK((X - X.transpose()).cwiseAbs().maxCoeff() < 1e-9);
    const double res = care_residual(p, X).norm();
    CHECK(res <= 1e-8 * std::max(1.0, X.norm()));
    CHECK(hurwitz(care_closed_loop(p, X)));
  }
}

TEST_CASE("Schur path and Newton refinement agree") {
  for (uint64_t seed : {7, 17, 27}) {
    const CareProblem p = random_problem(seed, 4, 2);
    const Eigen::MatrixXd X = solve_care(p);
    // Restart Newton from a perturbed (still stabilizing) guess.
    const Eigen::MatrixXd X0 =
        X + 1e-4 * Eigen::MatrixXd::Identity(X.rows(), X.cols());
    const Eigen::MatrixXd Xn = solve_care_newton(p, X0);
    CHECK((X - Xn).norm() <= 1e-8 * std::max(1.0, X.norm()));
  }
}

TEST_CASE("cross-term problem keeps the residual small") {
  CareProblem p = random_problem(99, 4, 2);
  std::mt19937_64 rng(100);
  std::normal_distribution<double> gauss(0.0, 0.3);
  p.S = Eigen::MatrixXd(4, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j) p.S(i, j) = gauss(rng);
  const Eigen::MatrixXd X = solve_care(p);
  CHECK(care_residual(p, X).norm() <= 1e-8 * std::max(1.0, X.norm()));
  CHECK(hurwitz(care_closed_loop(p, X)));
}

TEST_CASE("imaginary-axis Hamiltonian eigenvalues are detected") {
  // Undriven oscillator with no cost: Hamiltonian eigenvalues at +-i.
  CareProblem p;
  p.A = Eigen::MatrixXd(2, 2);
  p.A << 0.0, 1.0, -1.0, 0.0;
  p.B = Eigen::MatrixXd::Zero(2, 1);
  p.Q = Eigen::MatrixXd::Zero(2, 2);
  p.R = Eigen::MatrixXd::Ones(1, 1);
  CHECK_THROWS_AS(solve_care(p), ImaginaryAxisEigError);
}

TEST_CASE("validate rejects malformed data") {
  CareProblem p = scalar_problem(0.0);
  p.Q = Eigen::MatrixXd::Ones(2, 2);  // wrong size
  CHECK_THROWS_AS(p.validate(), DimensionError);

  CareProblem q = random_problem(1, 3, 1);
  q.Q(0, 1) += 1.0;  // breaks symmetry
  CHECK_THROWS_AS(q.validate(), DimensionError);
}

TEST_CASE("Lyapunov solve") {
  // A = -I: X = Q / 2.
  const Eigen::MatrixXd A = -Eigen::MatrixXd::Identity(3, 3);
  Eigen::MatrixXd Q(3, 3);
  Q << 2.0, 0.4, 0.0, 0.4, 1.0, 0.1, 0.0, 0.1, 3.0;
  const Eigen::MatrixXd X = solve_lyapunov(A, Q);
  CHECK((X - 0.5 * Q).cwiseAbs().maxCoeff() < 1e-12);

  // General A: check the defining equation.
  Eigen::MatrixXd A2(2, 2);
  A2 << -1.0, 2.0, 0.0, -3.0;
  Eigen::MatrixXd Q2(2, 2);
  Q2 << 1.0, 0.2, 0.2, 2.0;
  const Eigen::MatrixXd X2 = solve_lyapunov(A2, Q2);
  CHECK((A2.transpose() * X2 + X2 * A2 + Q2).cwiseAbs().maxCoeff() < 1e-12);
}
