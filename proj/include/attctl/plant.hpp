#pragma once

#include <Eigen/Core>

#include "attctl/attitude_dynamics.hpp"
#include "attctl/state_space.hpp"

namespace attctl {

/// An LTI system with its inputs partitioned [w; u] and outputs [z; y].
struct GeneralizedPlant {
  StateSpaceModel model;
  Eigen::Index n_w = 0;
  Eigen::Index n_u = 0;
  Eigen::Index n_z = 0;
  Eigen::Index n_y = 0;

  GeneralizedPlant() = default;
  GeneralizedPlant(StateSpaceModel m, Eigen::Index nw, Eigen::Index nu,
                   Eigen::Index nz, Eigen::Index ny);

  Eigen::Index states() const { return model.states(); }

  Eigen::MatrixXd B1() const { return model.B.leftCols(n_w); }
  Eigen::MatrixXd B2() const { return model.B.rightCols(n_u); }
  Eigen::MatrixXd C1() const { return model.C.topRows(n_z); }
  Eigen::MatrixXd C2() const { return model.C.bottomRows(n_y); }
  Eigen::MatrixXd D11() const { return model.D.topLeftCorner(n_z, n_w); }
  Eigen::MatrixXd D12() const { return model.D.topRightCorner(n_z, n_u); }
  Eigen::MatrixXd D21() const { return model.D.bottomLeftCorner(n_y, n_w); }
  Eigen::MatrixXd D22() const { return model.D.bottomRightCorner(n_y, n_u); }
};

/// Performance and scaling weights of the synthesis interconnection.
/// Noise weights are constant by default; the optional first-order high-pass
/// shaping models the rising spectral density of MEMS gyros.
struct WeightConfig {
  Eigen::Vector3d w_att{20.0, 20.0, 20.0};       ///< attitude penalty per axis
  Eigen::Vector3d w_act{0.5, 0.5, 0.5};          ///< actuator-effort penalty per axis
  double w_dist = 0.65;                          ///< disturbance input scale [N m]
  Eigen::Vector3d w_noise{0.0267, 0.0267, 0.0267};  ///< noise scale [rad/s]

  bool noise_shaping = false;  ///< use k (s+z)/(s+p) noise weights instead
  double noise_zero = 10.0;    ///< [rad/s]
  double noise_pole = 500.0;   ///< [rad/s]

  /// Optional first-order low-pass on the attitude penalty,
  /// w_att * p / (s + p): concentrates the tracking penalty below the gust
  /// band so the regulator does not hold high-frequency gain (which only
  /// feeds measurement noise into the actuators). Adds three plant states.
  bool att_shaping = false;
  double att_pole = 2.0;  ///< [rad/s]

  /// Optional first-order low-pass on the disturbance channel,
  /// w_dist * p / (s + p): models the band-limited gust torques so synthesis
  /// does not spend high-frequency gain fighting disturbances that are not
  /// there. Adds three plant states.
  bool dist_shaping = false;
  double dist_pole = 1.0;  ///< [rad/s]
};

/// Assemble the synthesis interconnection around an epsilon-augmented hover
/// plant: actuator lags on the control path, disturbance torques entering with
/// the delivered torques, weighted attitude and effort as z, and rate
/// measurements corrupted by weighted noise as y.
///
/// With constant weights: w = [d(3); nubar(3)], u = commanded torques(3),
/// z = [w_att .* angles; w_act .* u], y = rates + w_noise .* nubar, and the
/// plant has 6 + 3 = 9 states. With noise shaping the exogenous noise is
/// carried on split channels (direct + filtered), adding 3 states and 3
/// w-channels.
GeneralizedPlant build_generalized_plant(const StateSpaceModel& nominal,
                                         const ActuatorModel& actuators,
                                         const WeightConfig& weights);

/// Lower LFT of plant and controller: the closed-loop transfer w -> z.
/// Throws AlgebraicLoopError if I - D22 * Dk is singular.
StateSpaceModel closed_loop(const GeneralizedPlant& plant,
                            const StateSpaceModel& controller);

}  // namespace attctl
