#pragma once

#include <Eigen/Core>

namespace attctl {

/// Data for A'X + XA - (XB + S) R^-1 (B'X + S') + Q = 0.
/// R may be indefinite (as in H-infinity Riccati equations) but must be
/// symmetric and invertible; Q must be symmetric.
struct CareProblem {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXd Q;
  Eigen::MatrixXd R;
  Eigen::MatrixXd S;  ///< optional cross term; empty means zero

  void validate() const;
};

/// Riccati residual A'X + XA - (XB + S) R^-1 (B'X + S') + Q.
Eigen::MatrixXd care_residual(const CareProblem& prob, const Eigen::MatrixXd& X);

/// Closed-loop matrix A - B R^-1 (B'X + S').
Eigen::MatrixXd care_closed_loop(const CareProblem& prob, const Eigen::MatrixXd& X);

/// Stabilizing solution via the stable invariant subspace of the Hamiltonian,
/// followed by Newton (Lyapunov) refinement. The result satisfies
/// ||residual||_F <= tol * max(1, ||X||_F) and the closed loop is Hurwitz.
///
/// Throws ImaginaryAxisEigError when the Hamiltonian has eigenvalues within
/// the detection threshold of the imaginary axis, NoStabilizingSolutionError
/// when no stabilizing solution exists.
Eigen::MatrixXd solve_care(const CareProblem& prob, double tol = 1e-10);

/// Newton iteration from a given stabilizing initial guess; independent of
/// the invariant-subspace path once X0 is supplied.
Eigen::MatrixXd solve_care_newton(const CareProblem& prob,
                                  const Eigen::MatrixXd& X0, double tol = 1e-12,
                                  int max_iter = 50);

/// Dense Lyapunov solve A'X + XA = -Q via the Kronecker linear system.
/// Intended for the moderate state dimensions used here.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q);

}  // namespace attctl
