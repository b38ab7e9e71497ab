#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <complex>
#include <vector>

namespace attctl {

/// Continuous-time LTI system  xdot = A x + B u,  y = C x + D u.
/// Dimensions are dynamic; consistency is checked on construction.
struct StateSpaceModel {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXd C;
  Eigen::MatrixXd D;

  StateSpaceModel() = default;
  StateSpaceModel(Eigen::MatrixXd A_, Eigen::MatrixXd B_, Eigen::MatrixXd C_,
                  Eigen::MatrixXd D_);

  Eigen::Index states() const { return A.rows(); }
  Eigen::Index inputs() const { return B.cols(); }
  Eigen::Index outputs() const { return C.rows(); }

  /// Transfer matrix D + C (sI - A)^-1 B evaluated at a complex point.
  Eigen::MatrixXcd eval(std::complex<double> s) const;

  /// Frequency response at omega [rad/s].
  Eigen::MatrixXcd freq_response(double omega) const;

  /// Largest singular value of the frequency response at omega.
  double sigma_max(double omega) const;

  Eigen::VectorXcd poles() const;

  /// Max real part of the eigenvalues of A.
  double spectral_abscissa() const;

  bool is_stable(double margin = 0.0) const;

  /// Static gain block (no states).
  static StateSpaceModel gain(const Eigen::MatrixXd& K);

  /// SISO transfer function from numerator/denominator coefficients in
  /// descending powers of s (controllable canonical realization).
  /// Requires num.size() <= den.size() and den.front() != 0.
  static StateSpaceModel from_tf(std::vector<double> num,
                                 std::vector<double> den);
};

/// g2 after g1: u -> g1 -> g2 -> y.
StateSpaceModel series(const StateSpaceModel& g1, const StateSpaceModel& g2);

/// Summed outputs, shared input.
StateSpaceModel parallel(const StateSpaceModel& g1, const StateSpaceModel& g2);

/// Negative feedback of h around g: y = g(u - h(y)).
/// Throws AlgebraicLoopError if I + Dg*Dh is singular.
StateSpaceModel feedback(const StateSpaceModel& g, const StateSpaceModel& h);

/// Block-diagonal aggregation: inputs and outputs stacked.
StateSpaceModel append(const StateSpaceModel& g1, const StateSpaceModel& g2);

}  // namespace attctl
