#include "attctl/workflow.hpp"

#include <cmath>
#include <limits>

#include "attctl/rng.hpp"

namespace attctl {

StateSpaceModel hover_nominal(const RunConfig& cfg) {
  return frozen_lti(RhoVector::hover(), cfg.inertia, cfg.synthesis.epsilon);
}

GeneralizedPlant augmented_plant(const RunConfig& cfg) {
  return build_generalized_plant(hover_nominal(cfg), cfg.actuator, cfg.weights);
}

SynthesisResult synthesize(const RunConfig& cfg) {
  return hinfsyn(augmented_plant(cfg), cfg.synthesis.options);
}

std::vector<RhoVector> verification_grid(const RunConfig& cfg) {
  return rho_grid(cfg.rho_bounds, cfg.grid.points_per_axis, cfg.grid.samples,
                  cfg.grid.seed);
}

RobustStabilityReport verify_design(const RunConfig& cfg,
                                    const StateSpaceModel& controller) {
  return robust_stability_grid(controller, cfg.inertia, cfg.actuator,
                               verification_grid(cfg), cfg.synthesis.epsilon);
}

SimConfig make_sim_config(const RunConfig& cfg, ControllerKind kind,
                          const StateSpaceModel& hinf_controller,
                          double pid_omega_c, uint64_t run_seed) {
  SimConfig sim;
  sim.duration = cfg.sim.duration;
  sim.dt = cfg.sim.dt;
  sim.controller = kind;
  sim.hinf_controller = hinf_controller;
  sim.pid_gains = pid_tune(cfg.inertia, pid_omega_c, cfg.pid.zeta,
                           cfg.pid.third_pole_ratio);
  sim.pid_gains.leak = cfg.pid.leak;
  sim.pid_gains.u_max = cfg.actuator.u_max;
  const double deg = M_PI / 180.0;
  sim.initial_state.phi = cfg.sim.initial_attitude_deg(0) * deg;
  sim.initial_state.theta = cfg.sim.initial_attitude_deg(1) * deg;
  sim.initial_state.psi = cfg.sim.initial_attitude_deg(2) * deg;
  sim.inertia = cfg.inertia;
  sim.actuator = cfg.actuator;
  sim.dryden = cfg.dryden;
  sim.dryden.seed = split_seed(run_seed, 11);
  sim.gyro_noise = cfg.gyro_noise;
  sim.gyro_noise.seed = split_seed(run_seed, 22);
  sim.disturbance_enabled = cfg.sim.disturbance;
  sim.noise_enabled = cfg.sim.noise;
  sim.discrete_controller = cfg.sim.discrete_controller;
  return sim;
}

CompareSummary run_compare(const RunConfig& cfg,
                           const StateSpaceModel& hinf_controller) {
  CompareSummary summary;
  summary.hinf_wins_rmse_all_seeds = true;
  const int n = cfg.sim.num_seeds;
  double sum_ratio = 0.0;
  for (int i = 0; i < n; ++i) {
    CompareRow row;
    row.seed = cfg.sim.seed + static_cast<uint64_t>(i);

    const SimConfig hcfg = make_sim_config(cfg, ControllerKind::kHinf,
                                           hinf_controller, cfg.pid.omega_c,
                                           row.seed);
    const SimResult hres = run_closed_loop(hcfg);
    row.hinf = hres.metrics;
    row.hinf_diverged = hres.diverged;

    std::vector<double> sweep = cfg.pid.sweep_omega_c;
    if (sweep.empty()) sweep.push_back(cfg.pid.omega_c);
    double best_rmse = std::numeric_limits<double>::infinity();
    for (double wc : sweep) {
      const SimConfig pcfg = make_sim_config(cfg, ControllerKind::kPid,
                                             hinf_controller, wc, row.seed);
      const SimResult pres = run_closed_loop(pcfg);
      const double score = pres.diverged
                               ? std::numeric_limits<double>::infinity()
                               : pres.metrics.attitude_rmse_deg;
      if (score < best_rmse || !std::isfinite(best_rmse)) {
        best_rmse = score;
        row.pid = pres.metrics;
        row.pid_diverged = pres.diverged;
        row.pid_omega_c = wc;
      }
    }

    if (row.hinf_diverged || row.pid_diverged ||
        row.hinf.attitude_rmse_deg >= row.pid.attitude_rmse_deg)
      summary.hinf_wins_rmse_all_seeds = false;
    if (row.hinf_diverged) summary.hinf_wins_rmse_all_seeds = false;

    summary.mean_hinf_rmse += row.hinf.attitude_rmse_deg;
    summary.mean_pid_rmse += row.pid.attitude_rmse_deg;
    summary.mean_hinf_control_rms += row.hinf.control_rms;
    summary.mean_pid_control_rms += row.pid.control_rms;
    sum_ratio += row.pid.peak_attitude_deg /
                 std::max(row.hinf.peak_attitude_deg, 1e-300);
    summary.rows.push_back(row);
  }
  if (n > 0) {
    summary.mean_hinf_rmse /= n;
    summary.mean_pid_rmse /= n;
    summary.mean_hinf_control_rms /= n;
    summary.mean_pid_control_rms /= n;
    summary.mean_peak_ratio = sum_ratio / n;
  }
  return summary;
}

}  // namespace attctl
