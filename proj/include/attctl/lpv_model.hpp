#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "attctl/attitude_dynamics.hpp"
#include "attctl/state_space.hpp"

namespace attctl {

/// Floor on rho4 = cos(theta); matches the pitch guard of the dynamics module.
inline constexpr double kRho4Floor = kGuardMarginCos;

/// Scheduling parameters (sin phi, cos phi, sin theta, cos theta, p, q, r).
struct RhoVector {
  double rho1 = 0.0;  ///< sin(phi)
  double rho2 = 1.0;  ///< cos(phi)
  double rho3 = 0.0;  ///< sin(theta)
  double rho4 = 1.0;  ///< cos(theta)
  double rho5 = 0.0;  ///< p [rad/s]
  double rho6 = 0.0;  ///< q [rad/s]
  double rho7 = 0.0;  ///< r [rad/s]

  Eigen::Matrix<double, 7, 1> vector() const {
    Eigen::Matrix<double, 7, 1> v;
    v << rho1, rho2, rho3, rho4, rho5, rho6, rho7;
    return v;
  }

  static RhoVector hover() { return RhoVector{}; }
};

/// Elementwise box bounds on the scheduling parameters.
struct RhoBox {
  RhoVector min;
  RhoVector max;

  /// Operational-envelope defaults: full roll circle restricted to
  /// |phi| <= 90 deg, pitch floored at the guard, rates within +-1.5 rad/s.
  static RhoBox defaults();

  bool contains(const RhoVector& rho, double tol = 0.0) const;
};

/// Extract the scheduling vector from a state. The extracted values satisfy
/// both Pythagorean pair identities by construction.
RhoVector extract_rho(const AttitudeState& x);

/// Parameter-dependent state matrix J * Atilde(rho) - epsilon I of the exact
/// LPV form of the rotational dynamics. Throws SingularityError when
/// rho4 < kRho4Floor.
Eigen::Matrix<double, 6, 6> lpv_a_matrix(const RhoVector& rho,
                                         const InertiaParams& inertia,
                                         double epsilon = 0.0);

/// Constant input matrix: torques enter the rate rows scaled by 1/I_axis.
Eigen::Matrix<double, 6, 3> lpv_input_matrix(const InertiaParams& inertia);

/// Frozen-parameter LTI snapshot with identity state output; used as the
/// nominal synthesis plant (hover rho) and as grid-point plants.
StateSpaceModel frozen_lti(const RhoVector& rho, const InertiaParams& inertia,
                           double epsilon = 0.0);

/// Verification grid over the box: all 2^7 vertices, an n-per-axis Cartesian
/// sweep with trig-consistent (rho1,rho2) and (rho3,rho4) pairs drawn from
/// angles, and m random trig-consistent samples. Deterministic under seed.
std::vector<RhoVector> rho_grid(const RhoBox& box, int points_per_axis,
                                int samples, uint64_t seed);

}  // namespace attctl
