#include "attctl/plant.hpp"

#include <Eigen/Dense>

#include <iostream>

#include "attctl/errors.hpp"

namespace attctl {

namespace {

constexpr double kFeedthroughDelta = 1e-4;

// Zero gains would make D12/D21 rank deficient; substitute the regularization
// feedthrough and warn.
Eigen::Vector3d regularized(const Eigen::Vector3d& w, const char* name) {
  Eigen::Vector3d out = w;
  for (int i = 0; i < 3; ++i) {
    if (out(i) <= 0.0) {
      std::cerr << "attctl: " << name << "[" << i << "] is not positive; using "
                << kFeedthroughDelta << " for synthesis regularity\n";
      out(i) = kFeedthroughDelta;
    }
  }
  return out;
}

}  // namespace

GeneralizedPlant::GeneralizedPlant(StateSpaceModel m, Eigen::Index nw,
                                   Eigen::Index nu, Eigen::Index nz,
                                   Eigen::Index ny)
    : model(std::move(m)), n_w(nw), n_u(nu), n_z(nz), n_y(ny) {
  if (model.inputs() != n_w + n_u || model.outputs() != n_z + n_y)
    throw DimensionError("generalized plant: channel partition mismatch");
}

GeneralizedPlant build_generalized_plant(const StateSpaceModel& nominal,
                                         const ActuatorModel& actuators,
                                         const WeightConfig& weights) {
  if (nominal.states() != 6 || nominal.inputs() != 3)
    throw DimensionError("build_generalized_plant: nominal must be the 6-state plant");

  const Eigen::Vector3d w_att = weights.w_att;
  const Eigen::Vector3d w_act = regularized(weights.w_act, "w_act");
  const Eigen::Vector3d w_noise = regularized(weights.w_noise, "w_noise");

  const bool shaped = weights.noise_shaping;
  const bool dist_shaped = weights.dist_shaping;
  const bool att_shaped = weights.att_shaping;
  const Eigen::Index n_f = shaped ? 3 : 0;        // noise filter states
  const Eigen::Index n_d = dist_shaped ? 3 : 0;   // disturbance filter states
  const Eigen::Index n_a = att_shaped ? 3 : 0;    // attitude penalty states
  const Eigen::Index off_f = 9, off_d = 9 + n_f, off_a = 9 + n_f + n_d;
  const Eigen::Index n = 6 + 3 + n_f + n_d + n_a;
  const Eigen::Index n_w = shaped ? 9 : 6;
  const Eigen::Index n_u = 3, n_z = 6, n_y = 3;

  const double inv_tau = 1.0 / actuators.tau;
  const Eigen::MatrixXd Bp = nominal.B;  // torque input matrix

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  A.topLeftCorner(6, 6) = nominal.A;
  A.block(0, 6, 6, 3) = Bp;                                   // delivered torque
  A.block(6, 6, 3, 3) = -inv_tau * Eigen::Matrix3d::Identity();
  if (shaped)
    A.block(off_f, off_f, 3, 3) =
        -weights.noise_pole * Eigen::Matrix3d::Identity();
  if (dist_shaped) {
    A.block(0, off_d, 6, 3) = Bp;  // filtered disturbance torques
    A.block(off_d, off_d, 3, 3) =
        -weights.dist_pole * Eigen::Matrix3d::Identity();
  }
  if (att_shaped) {
    A.block(off_a, 0, 3, 3) =
        weights.att_pole * Eigen::MatrixXd(w_att.asDiagonal());
    A.block(off_a, off_a, 3, 3) =
        -weights.att_pole * Eigen::Matrix3d::Identity();
  }

  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n_w + n_u);
  if (dist_shaped)
    B.block(off_d, 0, 3, 3) =
        weights.dist_pole * weights.w_dist * Eigen::Matrix3d::Identity();
  else
    B.block(0, 0, 6, 3) = weights.w_dist * Bp;                // disturbance torques
  if (shaped)
    B.block(off_f, 6, 3, 3) = Eigen::Matrix3d::Identity();    // filtered noise drive
  B.block(6, n_w, 3, 3) = inv_tau * Eigen::Matrix3d::Identity();  // control commands

  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n_z + n_y, n);
  if (att_shaped)
    C.block(0, off_a, 3, 3) = Eigen::Matrix3d::Identity();    // filtered penalty
  else
    C.block(0, 0, 3, 3) = w_att.asDiagonal();                 // weighted attitude
  C.block(n_z, 3, 3, 3) = Eigen::Matrix3d::Identity();        // measured rates
  if (shaped) {
    const double res = weights.noise_zero - weights.noise_pole;
    C.block(n_z, off_f, 3, 3) = (w_noise * res).asDiagonal(); // strictly proper part
  }

  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n_z + n_y, n_w + n_u);
  D.block(3, n_w, 3, 3) = w_act.asDiagonal();                 // weighted effort
  D.block(n_z, 3, 3, 3) = w_noise.asDiagonal();               // noise feedthrough

  return GeneralizedPlant(StateSpaceModel(A, B, C, D), n_w, n_u, n_z, n_y);
}

StateSpaceModel closed_loop(const GeneralizedPlant& plant,
                            const StateSpaceModel& controller) {
  if (controller.inputs() != plant.n_y || controller.outputs() != plant.n_u)
    throw DimensionError("closed_loop: controller dimensions must match (y -> u)");

  const Eigen::Index n = plant.states(), nk = controller.states();
  const Eigen::MatrixXd D22 = plant.D22();
  const Eigen::MatrixXd M =
      Eigen::MatrixXd::Identity(plant.n_y, plant.n_y) - D22 * controller.D;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  if (!lu.isInvertible())
    throw AlgebraicLoopError("closed_loop: I - D22*Dk is singular");
  const Eigen::MatrixXd Minv = lu.inverse();

  // y = Minv (C2 x + D21 w + D22 Ck xk); u = Ck xk + Dk y
  Eigen::MatrixXd Yx(plant.n_y, n + nk);
  Yx.leftCols(n) = Minv * plant.C2();
  Yx.rightCols(nk) = Minv * D22 * controller.C;
  const Eigen::MatrixXd Yw = Minv * plant.D21();

  Eigen::MatrixXd Ux(plant.n_u, n + nk);
  Ux = controller.D * Yx;
  Ux.rightCols(nk) += controller.C;
  const Eigen::MatrixXd Uw = controller.D * Yw;

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + nk, n + nk);
  A.topLeftCorner(n, n) = plant.model.A;
  A.topRows(n) += plant.B2() * Ux;
  A.bottomLeftCorner(nk, n) = controller.B * Yx.leftCols(n);
  A.bottomRightCorner(nk, nk) = controller.A + controller.B * Yx.rightCols(nk);

  Eigen::MatrixXd Bcl(n + nk, plant.n_w);
  Bcl.topRows(n) = plant.B1() + plant.B2() * Uw;
  Bcl.bottomRows(nk) = controller.B * Yw;

  Eigen::MatrixXd Ccl(plant.n_z, n + nk);
  Ccl.setZero();
  Ccl.leftCols(n) = plant.C1();
  Ccl += plant.D12() * Ux;

  const Eigen::MatrixXd Dcl = plant.D11() + plant.D12() * Uw;
  return StateSpaceModel(A, Bcl, Ccl, Dcl);
}

}  // namespace attctl
