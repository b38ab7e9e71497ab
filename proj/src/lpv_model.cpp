#include "attctl/lpv_model.hpp"

#include <algorithm>
#include <cmath>

#include "attctl/errors.hpp"
#include "attctl/rng.hpp"

namespace attctl {

RhoBox RhoBox::defaults() {
  RhoBox box;
  box.min = {-1.0, 0.0, -1.0, kRho4Floor, -1.5, -1.5, -1.5};
  box.max = {1.0, 1.0, 1.0, 1.0, 1.5, 1.5, 1.5};
  return box;
}

bool RhoBox::contains(const RhoVector& rho, double tol) const {
  const auto v = rho.vector(), lo = min.vector(), hi = max.vector();
  return (v.array() >= lo.array() - tol).all() &&
         (v.array() <= hi.array() + tol).all();
}

RhoVector extract_rho(const AttitudeState& x) {
  if (!x.all_finite()) throw NonFiniteError("extract_rho: non-finite state");
  return {std::sin(x.phi), std::cos(x.phi), std::sin(x.theta),
          std::cos(x.theta), x.p, x.q, x.r};
}

Eigen::Matrix<double, 6, 6> lpv_a_matrix(const RhoVector& rho,
                                         const InertiaParams& inertia,
                                         double epsilon) {
  // Tolerance absorbs cos(acos(floor)) rounding at the box edge.
  if (rho.rho4 < kRho4Floor - 1e-12)
    throw SingularityError("lpv_a_matrix: rho4 below floor");

  // Atilde: kinematics in rows 1-3, rate couplings split symmetrically in
  // rows 4-6 so that J * Atilde(rho) * x reproduces the nonlinear derivative
  // exactly. The q-row r-column entry is rho5/2 (the corresponding p-column
  // entry is rho7/2), pairing p and r into k2*p*r.
  Eigen::Matrix<double, 6, 6> At = Eigen::Matrix<double, 6, 6>::Zero();
  At(0, 3) = 1.0;
  At(0, 4) = rho.rho1 * rho.rho3 / rho.rho4;
  At(0, 5) = rho.rho2 * rho.rho3 / rho.rho4;
  At(1, 4) = rho.rho2;
  At(1, 5) = -rho.rho1;
  At(2, 4) = rho.rho1 / rho.rho4;
  At(2, 5) = rho.rho2 / rho.rho4;
  At(3, 4) = rho.rho7 / 2.0;
  At(3, 5) = rho.rho6 / 2.0;
  At(4, 3) = rho.rho7 / 2.0;
  At(4, 5) = rho.rho5 / 2.0;
  At(5, 3) = rho.rho6 / 2.0;
  At(5, 4) = rho.rho5 / 2.0;

  Eigen::Matrix<double, 6, 1> j;
  j << 1.0, 1.0, 1.0, inertia.k1(), inertia.k2(), inertia.k3();
  return j.asDiagonal() * At - epsilon * Eigen::Matrix<double, 6, 6>::Identity();
}

Eigen::Matrix<double, 6, 3> lpv_input_matrix(const InertiaParams& inertia) {
  Eigen::Matrix<double, 6, 3> B = Eigen::Matrix<double, 6, 3>::Zero();
  B(3, 0) = 1.0 / inertia.Ix;
  B(4, 1) = 1.0 / inertia.Iy;
  B(5, 2) = 1.0 / inertia.Iz;
  return B;
}

StateSpaceModel frozen_lti(const RhoVector& rho, const InertiaParams& inertia,
                           double epsilon) {
  return StateSpaceModel(lpv_a_matrix(rho, inertia, epsilon),
                         lpv_input_matrix(inertia),
                         Eigen::MatrixXd::Identity(6, 6),
                         Eigen::MatrixXd::Zero(6, 3));
}

namespace {

// Angle ranges whose sine/cosine pairs stay inside the box.
struct AngleRange {
  double lo, hi;
};

AngleRange phi_range(const RhoBox& box) {
  const double lo = std::max(std::asin(std::clamp(box.min.rho1, -1.0, 1.0)),
                             -std::acos(std::clamp(box.min.rho2, -1.0, 1.0)));
  const double hi = std::min(std::asin(std::clamp(box.max.rho1, -1.0, 1.0)),
                             std::acos(std::clamp(box.min.rho2, -1.0, 1.0)));
  return {lo, hi};
}

AngleRange theta_range(const RhoBox& box) {
  const double rho4_min = std::max(box.min.rho4, kRho4Floor);
  const double limit = std::acos(std::clamp(rho4_min, -1.0, 1.0));
  const double lo = std::max(std::asin(std::clamp(box.min.rho3, -1.0, 1.0)), -limit);
  const double hi = std::min(std::asin(std::clamp(box.max.rho3, -1.0, 1.0)), limit);
  return {lo, hi};
}

RhoVector from_angles(double phi, double theta, double p, double q, double r) {
  return {std::sin(phi), std::cos(phi), std::sin(theta), std::cos(theta), p, q, r};
}

}  // namespace

std::vector<RhoVector> rho_grid(const RhoBox& box, int points_per_axis,
                                int samples, uint64_t seed) {
  if (points_per_axis < 2)
    throw DimensionError("rho_grid: points_per_axis must be >= 2");

  std::vector<RhoVector> grid;

  // All 2^7 box vertices (not trig-consistent in general; they bound the
  // uncertainty set of the LFT analysis).
  const auto lo = box.min.vector(), hi = box.max.vector();
  for (int mask = 0; mask < (1 << 7); ++mask) {
    Eigen::Matrix<double, 7, 1> v;
    for (int i = 0; i < 7; ++i) v(i) = (mask & (1 << i)) ? hi(i) : lo(i);
    grid.push_back({v(0), v(1), v(2), v(3), v(4), v(5), v(6)});
  }

  const int n = points_per_axis;
  const auto linspace = [n](double a, double b, int i) {
    return a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  const AngleRange phr = phi_range(box), thr = theta_range(box);
  for (int ip = 0; ip < n; ++ip)
    for (int it = 0; it < n; ++it)
      for (int i5 = 0; i5 < n; ++i5)
        for (int i6 = 0; i6 < n; ++i6)
          for (int i7 = 0; i7 < n; ++i7)
            grid.push_back(from_angles(linspace(phr.lo, phr.hi, ip),
                                       linspace(thr.lo, thr.hi, it),
                                       linspace(lo(4), hi(4), i5),
                                       linspace(lo(5), hi(5), i6),
                                       linspace(lo(6), hi(6), i7)));

  Rng rng(seed);
  for (int k = 0; k < samples; ++k)
    grid.push_back(from_angles(rng.uniform(phr.lo, phr.hi),
                               rng.uniform(thr.lo, thr.hi),
                               rng.uniform(lo(4), hi(4)),
                               rng.uniform(lo(5), hi(5)),
                               rng.uniform(lo(6), hi(6))));
  return grid;
}

}  // namespace attctl
