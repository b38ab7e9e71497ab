#pragma once

#include <Eigen/Core>

#include <limits>
#include <utility>
#include <vector>

#include "attctl/lpv_model.hpp"
#include "attctl/plant.hpp"
#include "attctl/state_space.hpp"

namespace attctl {

/// H-infinity norm of a stable system via gamma bisection with the
/// Hamiltonian imaginary-eigenvalue test. Returns +inf when the system is not
/// (strictly) stable. Relative accuracy tol.
double hinf_norm(const StateSpaceModel& sys, double tol = 1e-6);

struct SynthesisResult {
  StateSpaceModel controller;
  double gamma = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd X;               ///< control Riccati solution
  Eigen::MatrixXd Y;               ///< filter Riccati solution
  double spectral_radius_xy = 0.0; ///< rho(X Y)
  int bisection_iterations = 0;
  double achieved_norm = 0.0;      ///< a-posteriori closed-loop norm
};

struct HinfOptions {
  double gamma_min = 1e-4;
  double gamma_max = 1e4;
  double tol = 1e-3;       ///< relative gamma accuracy
  int max_iterations = 60;
};

/// Output-feedback H-infinity synthesis (two-Riccati central controller).
///
/// Requires the regular problem: D11 = 0, D22 = 0, D12 full column rank with
/// D12' C1 = 0, D21 full row rank with B1 D21' = 0, (A, B2) stabilizable and
/// (C2, A) detectable. Throws RegularityError when these fail and
/// BisectionFailure when no gamma in the bracket is feasible.
SynthesisResult hinfsyn(const GeneralizedPlant& plant,
                        const HinfOptions& opts = {});

struct GridPointResult {
  RhoVector rho;
  double abscissa = 0.0;
};

struct RobustStabilityReport {
  std::vector<GridPointResult> points;
  double worst_abscissa = -std::numeric_limits<double>::infinity();
  RhoVector worst_rho;
  double margin = -1e-6;
  bool all_stable = false;
};

/// Close the loop of the controller with each frozen-parameter plant (plus
/// actuator lags) and record the spectral abscissa. Stability augmentation
/// epsilon is applied to the frozen plants as in synthesis.
RobustStabilityReport robust_stability_grid(const StateSpaceModel& controller,
                                            const InertiaParams& inertia,
                                            const ActuatorModel& actuators,
                                            const std::vector<RhoVector>& grid,
                                            double epsilon = kDefaultEpsilon,
                                            double margin = -1e-6);

}  // namespace attctl
