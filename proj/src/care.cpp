#include "attctl/care.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "attctl/errors.hpp"

namespace attctl {

namespace {

constexpr double kSymTol = 1e-12;

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& X) {
  return 0.5 * (X + X.transpose());
}

double spectral_abscissa(const Eigen::MatrixXd& A) {
  return Eigen::EigenSolver<Eigen::MatrixXd>(A, false).eigenvalues().real().maxCoeff();
}

}  // namespace

void CareProblem::validate() const {
  const Eigen::Index n = A.rows(), m = B.cols();
  if (A.cols() != n) throw DimensionError("care: A must be square");
  if (B.rows() != n) throw DimensionError("care: B row count mismatch");
  if (Q.rows() != n || Q.cols() != n) throw DimensionError("care: Q must be n x n");
  if (R.rows() != m || R.cols() != m) throw DimensionError("care: R must be m x m");
  if (S.size() != 0 && (S.rows() != n || S.cols() != m))
    throw DimensionError("care: S must be n x m");
  const double qs = (Q - Q.transpose()).norm();
  const double rs = (R - R.transpose()).norm();
  if (qs > kSymTol * std::max(1.0, Q.norm()))
    throw DimensionError("care: Q must be symmetric");
  if (rs > kSymTol * std::max(1.0, R.norm()))
    throw DimensionError("care: R must be symmetric");
}

Eigen::MatrixXd care_residual(const CareProblem& prob, const Eigen::MatrixXd& X) {
  const Eigen::MatrixXd St =
      prob.S.size() ? prob.S : Eigen::MatrixXd::Zero(prob.A.rows(), prob.B.cols());
  const Eigen::MatrixXd K = prob.R.partialPivLu().solve(
      (prob.B.transpose() * X + St.transpose()).eval());
  return prob.A.transpose() * X + X * prob.A - (X * prob.B + St) * K + prob.Q;
}

Eigen::MatrixXd care_closed_loop(const CareProblem& prob, const Eigen::MatrixXd& X) {
  const Eigen::MatrixXd St =
      prob.S.size() ? prob.S : Eigen::MatrixXd::Zero(prob.A.rows(), prob.B.cols());
  return prob.A - prob.B * prob.R.partialPivLu().solve(
                      (prob.B.transpose() * X + St.transpose()).eval());
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q) {
  const Eigen::Index n = A.rows();
  // vec(A'X + XA) = (I (x) A' + A' (x) I) vec(X)
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n * n, n * n);
  const Eigen::MatrixXd At = A.transpose();
  for (Eigen::Index j = 0; j < n; ++j) {
    M.block(j * n, j * n, n, n) += At;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index k = 0; k < n; ++k) M(j * n + k, i * n + k) += At(j, i);
  }
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(Q.data(), n * n);
  const Eigen::VectorXd x = M.partialPivLu().solve(rhs);
  return symmetrize(Eigen::Map<const Eigen::MatrixXd>(x.data(), n, n));
}

Eigen::MatrixXd solve_care_newton(const CareProblem& prob,
                                  const Eigen::MatrixXd& X0, double tol,
                                  int max_iter) {
  prob.validate();
  Eigen::MatrixXd X = symmetrize(X0);
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::MatrixXd res = care_residual(prob, X);
    if (res.norm() <= tol * std::max(1.0, X.norm())) return X;
    const Eigen::MatrixXd Acl = care_closed_loop(prob, X);
    if (spectral_abscissa(Acl) >= 0.0)
      throw NoStabilizingSolutionError("care newton: iterate lost stabilizing property");
    X = symmetrize(X + solve_lyapunov(Acl, res));
  }
  const Eigen::MatrixXd res = care_residual(prob, X);
  if (res.norm() > tol * std::max(1.0, X.norm()))
    throw NoStabilizingSolutionError("care newton: did not converge");
  return X;
}

Eigen::MatrixXd solve_care(const CareProblem& prob, double tol) {
  prob.validate();
  const Eigen::Index n = prob.A.rows();
  const Eigen::MatrixXd St =
      prob.S.size() ? prob.S : Eigen::MatrixXd::Zero(n, prob.B.cols());

  Eigen::PartialPivLU<Eigen::MatrixXd> Rlu(prob.R);
  const Eigen::MatrixXd RinvBt = Rlu.solve(prob.B.transpose());
  const Eigen::MatrixXd RinvSt = Rlu.solve(St.transpose());
  const Eigen::MatrixXd Ahat = prob.A - prob.B * RinvSt;
  const Eigen::MatrixXd G = prob.B * RinvBt;
  const Eigen::MatrixXd Qhat = prob.Q - St * RinvSt;

  Eigen::MatrixXd H(2 * n, 2 * n);
  H << Ahat, -G, -Qhat, -Ahat.transpose();

  const Eigen::EigenSolver<Eigen::MatrixXd> es(H);
  if (es.info() != Eigen::Success)
    throw NoStabilizingSolutionError("care: Hamiltonian eigensolver failed");
  const Eigen::VectorXcd ev = es.eigenvalues();

  // Per-eigenvalue tolerance: a matrix-norm-relative one would swallow slow
  // but genuinely stable modes when the Hamiltonian is badly scaled.
  std::vector<Eigen::Index> stable;
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    const double axis_tol = 1e-8 * (1.0 + std::abs(ev(i)));
    if (std::abs(ev(i).real()) <= axis_tol)
      throw ImaginaryAxisEigError("care: Hamiltonian eigenvalue on imaginary axis");
    if (ev(i).real() < 0.0) stable.push_back(i);
  }
  if (static_cast<Eigen::Index>(stable.size()) != n)
    throw NoStabilizingSolutionError("care: stable subspace has wrong dimension");

  Eigen::MatrixXcd V(2 * n, n);
  for (Eigen::Index k = 0; k < n; ++k) V.col(k) = es.eigenvectors().col(stable[k]);
  const Eigen::MatrixXcd V1 = V.topRows(n);
  const Eigen::MatrixXcd V2 = V.bottomRows(n);
  const Eigen::FullPivLU<Eigen::MatrixXcd> lu(V1);
  if (!lu.isInvertible())
    throw NoStabilizingSolutionError("care: stable subspace not complementary");
  Eigen::MatrixXd X = symmetrize((V2 * lu.inverse()).real());

  // Newton refinement squeezes out the eigenvector-basis conditioning error.
  X = solve_care_newton(prob, X, tol, 25);

  if (spectral_abscissa(care_closed_loop(prob, X)) >= 0.0)
    throw NoStabilizingSolutionError("care: closed loop not Hurwitz");
  return X;
}

}  // namespace attctl
