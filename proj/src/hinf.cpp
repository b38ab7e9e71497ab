#include "attctl/hinf.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "attctl/care.hpp"
#include "attctl/errors.hpp"

namespace attctl {

namespace {

double sigma_max(const Eigen::MatrixXd& M) {
  if (M.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(M).singularValues()(0);
}

double min_eigenvalue(const Eigen::MatrixXd& X) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_abs_eigenvalue(const Eigen::MatrixXd& M) {
  return Eigen::EigenSolver<Eigen::MatrixXd>(M, false)
      .eigenvalues()
      .cwiseAbs()
      .maxCoeff();
}

// True iff gamma is strictly larger than the H-infinity norm: the bounded-real
// Hamiltonian has no eigenvalues on the imaginary axis.
bool gamma_exceeds_norm(const StateSpaceModel& sys, double gamma) {
  const Eigen::Index n = sys.states(), m = sys.inputs(), p = sys.outputs();
  const Eigen::MatrixXd R =
      gamma * gamma * Eigen::MatrixXd::Identity(m, m) - sys.D.transpose() * sys.D;
  Eigen::LLT<Eigen::MatrixXd> llt(R);
  if (llt.info() != Eigen::Success) return false;  // gamma <= sigma_max(D)

  const Eigen::MatrixXd RinvDtC = llt.solve(sys.D.transpose() * sys.C);
  const Eigen::MatrixXd Abar = sys.A + sys.B * RinvDtC;
  Eigen::MatrixXd H(2 * n, 2 * n);
  H.topLeftCorner(n, n) = Abar;
  H.topRightCorner(n, n) = sys.B * llt.solve(sys.B.transpose());
  H.bottomLeftCorner(n, n) =
      -sys.C.transpose() *
      (Eigen::MatrixXd::Identity(p, p) + sys.D * llt.solve(sys.D.transpose())) *
      sys.C;
  H.bottomRightCorner(n, n) = -Abar.transpose();

  const Eigen::VectorXcd ev =
      Eigen::EigenSolver<Eigen::MatrixXd>(H, false).eigenvalues();
  // Per-eigenvalue tolerance; a matrix-norm-relative one misclassifies slow
  // stable modes of badly scaled systems as imaginary-axis eigenvalues.
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i).real()) <= 1e-8 * (1.0 + std::abs(ev(i)))) return false;
  }
  return true;
}

}  // namespace

double hinf_norm(const StateSpaceModel& sys, double tol) {
  if (sys.states() == 0) return sigma_max(sys.D);
  if (sys.spectral_abscissa() >= 0.0)
    return std::numeric_limits<double>::infinity();

  // Lower bound from the feedthrough and a frequency sweep seeded at the pole
  // frequencies.
  double lo = sigma_max(sys.D);
  lo = std::max(lo, sys.sigma_max(0.0));
  const Eigen::VectorXcd poles = sys.poles();
  for (Eigen::Index i = 0; i < poles.size(); ++i) {
    const double w = std::abs(poles(i));
    if (w > 0.0) {
      lo = std::max(lo, sys.sigma_max(w));
      lo = std::max(lo, sys.sigma_max(std::abs(poles(i).imag())));
    }
  }
  for (double w = 1e-3; w <= 1e4; w *= 3.1623) lo = std::max(lo, sys.sigma_max(w));
  if (lo == 0.0) return 0.0;  // zero system

  double hi = 2.0 * lo;
  int guard = 0;
  while (!gamma_exceeds_norm(sys, hi)) {
    hi *= 2.0;
    if (++guard > 60) return std::numeric_limits<double>::infinity();
  }

  while (hi - lo > tol * lo) {
    const double mid = 0.5 * (lo + hi);
    if (gamma_exceeds_norm(sys, mid))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

Eigen::MatrixXd inverse_sqrt_spd(const Eigen::MatrixXd& M, const char* what) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw RegularityError(std::string(what) + " must be positive definite");
  return es.operatorInverseSqrt();
}

// PBH tests over the eigenvalues of A.
bool is_stabilizable(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  const Eigen::Index n = A.rows();
  const Eigen::VectorXcd ev =
      Eigen::EigenSolver<Eigen::MatrixXd>(A, false).eigenvalues();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ev(i).real() < 0.0) continue;
    Eigen::MatrixXcd M(n, n + B.cols());
    M << A.cast<std::complex<double>>() -
             ev(i) * Eigen::MatrixXcd::Identity(n, n),
        B.cast<std::complex<double>>();
    if (Eigen::JacobiSVD<Eigen::MatrixXcd>(M).rank() < n) return false;
  }
  return true;
}

struct GammaTrial {
  bool feasible = false;
  Eigen::MatrixXd X, Y;
  double rho_xy = 0.0;
};

}  // namespace

SynthesisResult hinfsyn(const GeneralizedPlant& plant, const HinfOptions& opts) {
  const Eigen::Index n = plant.states();
  const Eigen::MatrixXd A = plant.model.A;
  const Eigen::MatrixXd B1 = plant.B1(), B2 = plant.B2();
  const Eigen::MatrixXd C1 = plant.C1(), C2 = plant.C2();
  const Eigen::MatrixXd D12 = plant.D12(), D21 = plant.D21();

  const double scale = std::max(1.0, plant.model.D.norm());
  if (plant.D11().norm() > 1e-9 * scale)
    throw RegularityError("hinfsyn: D11 must be zero");
  if (plant.D22().norm() > 1e-9 * scale)
    throw RegularityError("hinfsyn: D22 must be zero");
  if ((D12.transpose() * C1).norm() > 1e-9 * std::max(1.0, C1.norm()) * scale)
    throw RegularityError("hinfsyn: D12'C1 must vanish (effort channel must not mix with states)");
  if ((B1 * D21.transpose()).norm() > 1e-9 * std::max(1.0, B1.norm()) * scale)
    throw RegularityError("hinfsyn: B1 D21' must vanish (measurement noise must not drive states)");

  const Eigen::MatrixXd R1 = D12.transpose() * D12;
  const Eigen::MatrixXd R2 = D21 * D21.transpose();
  if (Eigen::JacobiSVD<Eigen::MatrixXd>(D12).rank() < plant.n_u)
    throw RegularityError("hinfsyn: D12 must have full column rank");
  if (Eigen::JacobiSVD<Eigen::MatrixXd>(D21).rank() < plant.n_y)
    throw RegularityError("hinfsyn: D21 must have full row rank");
  if (!is_stabilizable(A, B2))
    throw RegularityError("hinfsyn: (A, B2) not stabilizable");
  if (!is_stabilizable(A.transpose(), C2.transpose()))
    throw RegularityError("hinfsyn: (C2, A) not detectable");

  // Scale u and y so D12'D12 = I and D21 D21' = I.
  const Eigen::MatrixXd Tu = inverse_sqrt_spd(R1, "hinfsyn: D12'D12");
  const Eigen::MatrixXd Ty = inverse_sqrt_spd(R2, "hinfsyn: D21 D21'");
  const Eigen::MatrixXd B2s = B2 * Tu;
  const Eigen::MatrixXd C2s = Ty * C2;

  const Eigen::MatrixXd Qx = C1.transpose() * C1;
  const Eigen::MatrixXd Qy = B1 * B1.transpose();

  const auto try_gamma = [&](double gamma) {
    GammaTrial trial;
    const double g2 = gamma * gamma;
    try {
      CareProblem px;
      px.A = A;
      px.B.resize(n, plant.n_w + plant.n_u);
      px.B << B1, B2s;
      px.Q = Qx;
      px.R = Eigen::MatrixXd::Identity(plant.n_w + plant.n_u,
                                       plant.n_w + plant.n_u);
      px.R.topLeftCorner(plant.n_w, plant.n_w) *= -g2;
      const Eigen::MatrixXd X = solve_care(px, 1e-10);

      CareProblem py;
      py.A = A.transpose();
      py.B.resize(n, plant.n_z + plant.n_y);
      py.B << C1.transpose(), C2s.transpose();
      py.Q = Qy;
      py.R = Eigen::MatrixXd::Identity(plant.n_z + plant.n_y,
                                       plant.n_z + plant.n_y);
      py.R.topLeftCorner(plant.n_z, plant.n_z) *= -g2;
      const Eigen::MatrixXd Y = solve_care(py, 1e-10);

      const double psd_x = -1e-8 * std::max(1.0, max_abs_eigenvalue(X));
      const double psd_y = -1e-8 * std::max(1.0, max_abs_eigenvalue(Y));
      if (min_eigenvalue(X) < psd_x || min_eigenvalue(Y) < psd_y) return trial;
      const double rho_xy = max_abs_eigenvalue(X * Y);
      if (rho_xy >= g2) return trial;

      trial.feasible = true;
      trial.X = X;
      trial.Y = Y;
      trial.rho_xy = rho_xy;
    } catch (const ImaginaryAxisEigError&) {
    } catch (const NoStabilizingSolutionError&) {
    }
    return trial;
  };

  if (opts.gamma_min > opts.gamma_max || opts.gamma_min <= 0.0)
    throw BisectionFailure("hinfsyn: empty gamma bracket");

  GammaTrial best = try_gamma(opts.gamma_max);
  double gamma_best = opts.gamma_max;
  if (!best.feasible)
    throw BisectionFailure("hinfsyn: gamma_max infeasible; no solution in bracket");

  int iterations = 0;
  GammaTrial at_min = try_gamma(opts.gamma_min);
  ++iterations;
  if (at_min.feasible) {
    best = at_min;
    gamma_best = opts.gamma_min;
  } else {
    double lo = opts.gamma_min, hi = gamma_best;
    while (hi - lo > opts.tol * hi && iterations < opts.max_iterations) {
      const double mid = std::sqrt(lo * hi);  // log-space bisection
      GammaTrial trial = try_gamma(mid);
      ++iterations;
      if (trial.feasible) {
        best = trial;
        gamma_best = mid;
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }

  // Central controller at the smallest accepted gamma.
  const double g2 = gamma_best * gamma_best;
  const Eigen::MatrixXd& X = best.X;
  const Eigen::MatrixXd& Y = best.Y;
  const Eigen::MatrixXd F = -B2s.transpose() * X;
  const Eigen::MatrixXd L = -Y * C2s.transpose();
  const Eigen::MatrixXd Z =
      (Eigen::MatrixXd::Identity(n, n) - Y * X / g2).partialPivLu().inverse();

  const Eigen::MatrixXd Ak =
      A + B1 * B1.transpose() * X / g2 + B2s * F + Z * L * C2s;
  const Eigen::MatrixXd Bk = -Z * L * Ty;
  const Eigen::MatrixXd Ck = Tu * F;

  SynthesisResult result;
  result.controller = StateSpaceModel(
      Ak, Bk, Ck, Eigen::MatrixXd::Zero(plant.n_u, plant.n_y));
  result.gamma = gamma_best;
  result.X = X;
  result.Y = Y;
  result.spectral_radius_xy = best.rho_xy;
  result.bisection_iterations = iterations;
  result.achieved_norm = hinf_norm(closed_loop(plant, result.controller));
  return result;
}

RobustStabilityReport robust_stability_grid(const StateSpaceModel& controller,
                                            const InertiaParams& inertia,
                                            const ActuatorModel& actuators,
                                            const std::vector<RhoVector>& grid,
                                            double epsilon, double margin) {
  if (grid.empty()) throw DimensionError("robust_stability_grid: empty grid");
  if (controller.inputs() != 3 || controller.outputs() != 3)
    throw DimensionError("robust_stability_grid: controller must be 3x3 (rates -> torques)");

  const Eigen::Index nk = controller.states();
  const double inv_tau = 1.0 / actuators.tau;
  Eigen::MatrixXd Sr = Eigen::MatrixXd::Zero(3, 6);  // rate selector
  Sr.rightCols(3).setIdentity();

  RobustStabilityReport report;
  report.margin = margin;
  report.points.reserve(grid.size());

  for (const auto& rho : grid) {
    const Eigen::MatrixXd Arho = lpv_a_matrix(rho, inertia, epsilon);
    const Eigen::MatrixXd Bp = lpv_input_matrix(inertia);

    Eigen::MatrixXd Acl = Eigen::MatrixXd::Zero(9 + nk, 9 + nk);
    Acl.topLeftCorner(6, 6) = Arho;
    Acl.block(0, 6, 6, 3) = Bp;
    Acl.block(6, 0, 3, 6) = inv_tau * controller.D * Sr;
    Acl.block(6, 6, 3, 3) = -inv_tau * Eigen::Matrix3d::Identity();
    Acl.block(6, 9, 3, nk) = inv_tau * controller.C;
    Acl.block(9, 0, nk, 6) = controller.B * Sr;
    Acl.bottomRightCorner(nk, nk) = controller.A;

    const double abscissa =
        Eigen::EigenSolver<Eigen::MatrixXd>(Acl, false).eigenvalues().real().maxCoeff();
    report.points.push_back({rho, abscissa});
    if (abscissa > report.worst_abscissa) {
      report.worst_abscissa = abscissa;
      report.worst_rho = rho;
    }
  }
  report.all_stable = report.worst_abscissa < margin;
  return report;
}

}  // namespace attctl
