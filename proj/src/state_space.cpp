#include "attctl/state_space.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "attctl/errors.hpp"

namespace attctl {

StateSpaceModel::StateSpaceModel(Eigen::MatrixXd A_, Eigen::MatrixXd B_,
                                 Eigen::MatrixXd C_, Eigen::MatrixXd D_)
    : A(std::move(A_)), B(std::move(B_)), C(std::move(C_)), D(std::move(D_)) {
  if (A.rows() != A.cols()) throw DimensionError("state matrix must be square");
  if (B.rows() != A.rows()) throw DimensionError("B row count must match state count");
  if (C.cols() != A.rows()) throw DimensionError("C column count must match state count");
  if (D.rows() != C.rows() || D.cols() != B.cols())
    throw DimensionError("D must be outputs x inputs");
  if (!A.allFinite() || !B.allFinite() || !C.allFinite() || !D.allFinite())
    throw NonFiniteError("state-space matrices must be finite");
}

Eigen::MatrixXcd StateSpaceModel::eval(std::complex<double> s) const {
  const Eigen::Index n = states();
  Eigen::MatrixXcd M = s * Eigen::MatrixXcd::Identity(n, n) - A.cast<std::complex<double>>();
  return D.cast<std::complex<double>>() +
         C.cast<std::complex<double>>() * M.partialPivLu().solve(B.cast<std::complex<double>>());
}

Eigen::MatrixXcd StateSpaceModel::freq_response(double omega) const {
  return eval(std::complex<double>(0.0, omega));
}

double StateSpaceModel::sigma_max(double omega) const {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(freq_response(omega));
  return svd.singularValues()(0);
}

Eigen::VectorXcd StateSpaceModel::poles() const {
  if (states() == 0) return Eigen::VectorXcd();
  return Eigen::EigenSolver<Eigen::MatrixXd>(A, false).eigenvalues();
}

double StateSpaceModel::spectral_abscissa() const {
  if (states() == 0) return -std::numeric_limits<double>::infinity();
  return poles().real().maxCoeff();
}

bool StateSpaceModel::is_stable(double margin) const {
  return spectral_abscissa() < -margin;
}

StateSpaceModel StateSpaceModel::gain(const Eigen::MatrixXd& K) {
  return StateSpaceModel(Eigen::MatrixXd(0, 0), Eigen::MatrixXd(0, K.cols()),
                         Eigen::MatrixXd(K.rows(), 0), K);
}

StateSpaceModel StateSpaceModel::from_tf(std::vector<double> num,
                                         std::vector<double> den) {
  if (den.empty() || den.front() == 0.0)
    throw DimensionError("denominator must have a nonzero leading coefficient");
  if (num.size() > den.size())
    throw DimensionError("transfer function must be proper");

  // Normalize to monic denominator and pad the numerator to equal length.
  const double lead = den.front();
  for (auto& d : den) d /= lead;
  for (auto& c : num) c /= lead;
  std::vector<double> b(den.size(), 0.0);
  std::copy(num.begin(), num.end(), b.end() - static_cast<long>(num.size()));

  const Eigen::Index n = static_cast<Eigen::Index>(den.size()) - 1;
  const double d0 = b[0];  // feedthrough
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, 1);
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(1, n);
  Eigen::MatrixXd D(1, 1);
  D(0, 0) = d0;
  if (n > 0) {
    A.topRightCorner(n - 1, n - 1).setIdentity();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double a_i = den[static_cast<size_t>(n - i)];
      A(n - 1, i) = -a_i;
      C(0, i) = b[static_cast<size_t>(n - i)] - a_i * d0;
    }
    B(n - 1, 0) = 1.0;
  }
  return StateSpaceModel(A, B, C, D);
}

StateSpaceModel series(const StateSpaceModel& g1, const StateSpaceModel& g2) {
  if (g2.inputs() != g1.outputs())
    throw DimensionError("series: inner dimensions must agree");
  const Eigen::Index n1 = g1.states(), n2 = g2.states();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
  A.topLeftCorner(n1, n1) = g1.A;
  A.bottomLeftCorner(n2, n1) = g2.B * g1.C;
  A.bottomRightCorner(n2, n2) = g2.A;
  Eigen::MatrixXd B(n1 + n2, g1.inputs());
  B.topRows(n1) = g1.B;
  B.bottomRows(n2) = g2.B * g1.D;
  Eigen::MatrixXd C(g2.outputs(), n1 + n2);
  C.leftCols(n1) = g2.D * g1.C;
  C.rightCols(n2) = g2.C;
  return StateSpaceModel(A, B, C, g2.D * g1.D);
}

StateSpaceModel parallel(const StateSpaceModel& g1, const StateSpaceModel& g2) {
  if (g1.inputs() != g2.inputs() || g1.outputs() != g2.outputs())
    throw DimensionError("parallel: systems must share input/output dimensions");
  const Eigen::Index n1 = g1.states(), n2 = g2.states();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
  A.topLeftCorner(n1, n1) = g1.A;
  A.bottomRightCorner(n2, n2) = g2.A;
  Eigen::MatrixXd B(n1 + n2, g1.inputs());
  B.topRows(n1) = g1.B;
  B.bottomRows(n2) = g2.B;
  Eigen::MatrixXd C(g1.outputs(), n1 + n2);
  C.leftCols(n1) = g1.C;
  C.rightCols(n2) = g2.C;
  return StateSpaceModel(A, B, C, g1.D + g2.D);
}

StateSpaceModel feedback(const StateSpaceModel& g, const StateSpaceModel& h) {
  if (h.inputs() != g.outputs() || h.outputs() != g.inputs())
    throw DimensionError("feedback: loop dimensions must agree");
  const Eigen::Index p = g.outputs();
  const Eigen::MatrixXd M = Eigen::MatrixXd::Identity(p, p) + g.D * h.D;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  if (!lu.isInvertible())
    throw AlgebraicLoopError("feedback: I + D1*D2 is singular");
  const Eigen::MatrixXd Minv = lu.inverse();

  const Eigen::Index n1 = g.states(), n2 = h.states();
  // y = Minv * (Cg x1 - Dg Ch x2 + Dg u)
  Eigen::MatrixXd Cy(p, n1 + n2);
  Cy.leftCols(n1) = Minv * g.C;
  Cy.rightCols(n2) = -Minv * g.D * h.C;
  const Eigen::MatrixXd Dy = Minv * g.D;

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
  // x1dot = Ag x1 + Bg (u - h_out), h_out = Ch x2 + Dh y
  A.topLeftCorner(n1, n1) = g.A - g.B * h.D * Cy.leftCols(n1);
  A.topRightCorner(n1, n2) = -g.B * h.C - g.B * h.D * Cy.rightCols(n2);
  A.bottomLeftCorner(n2, n1) = h.B * Cy.leftCols(n1);
  A.bottomRightCorner(n2, n2) = h.A + h.B * Cy.rightCols(n2);
  Eigen::MatrixXd B(n1 + n2, g.inputs());
  B.topRows(n1) = g.B - g.B * h.D * Dy;
  B.bottomRows(n2) = h.B * Dy;
  return StateSpaceModel(A, B, Cy, Dy);
}

StateSpaceModel append(const StateSpaceModel& g1, const StateSpaceModel& g2) {
  const Eigen::Index n1 = g1.states(), n2 = g2.states();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
  A.topLeftCorner(n1, n1) = g1.A;
  A.bottomRightCorner(n2, n2) = g2.A;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n1 + n2, g1.inputs() + g2.inputs());
  B.topLeftCorner(n1, g1.inputs()) = g1.B;
  B.bottomRightCorner(n2, g2.inputs()) = g2.B;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(g1.outputs() + g2.outputs(), n1 + n2);
  C.topLeftCorner(g1.outputs(), n1) = g1.C;
  C.bottomRightCorner(g2.outputs(), n2) = g2.C;
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(g1.outputs() + g2.outputs(),
                                            g1.inputs() + g2.inputs());
  D.topLeftCorner(g1.outputs(), g1.inputs()) = g1.D;
  D.bottomRightCorner(g2.outputs(), g2.inputs()) = g2.D;
  return StateSpaceModel(A, B, C, D);
}

}  // namespace attctl
