#pragma once

#include <cstdint>
#include <vector>

#include "attctl/config.hpp"
#include "attctl/hinf.hpp"
#include "attctl/sim.hpp"

namespace attctl {

/// Epsilon-augmented hover plant used as the synthesis nominal.
StateSpaceModel hover_nominal(const RunConfig& cfg);

/// Weighted synthesis interconnection for the configured plant and actuators.
GeneralizedPlant augmented_plant(const RunConfig& cfg);

/// Full synthesis workflow: augment and run hinfsyn.
SynthesisResult synthesize(const RunConfig& cfg);

std::vector<RhoVector> verification_grid(const RunConfig& cfg);

RobustStabilityReport verify_design(const RunConfig& cfg,
                                    const StateSpaceModel& controller);

/// Scenario for one closed-loop run. `run_seed` replaces the configured
/// disturbance/noise seeds with independent streams derived from it.
SimConfig make_sim_config(const RunConfig& cfg, ControllerKind kind,
                          const StateSpaceModel& hinf_controller,
                          double pid_omega_c, uint64_t run_seed);

struct CompareRow {
  uint64_t seed = 0;
  Metrics hinf;
  Metrics pid;
  double pid_omega_c = 0.0;  ///< sweep winner for this seed
  bool hinf_diverged = false;
  bool pid_diverged = false;
};

struct CompareSummary {
  std::vector<CompareRow> rows;
  double mean_peak_ratio = 0.0;       ///< mean over seeds of PID/Hinf peak
  double mean_hinf_rmse = 0.0;
  double mean_pid_rmse = 0.0;
  double mean_hinf_control_rms = 0.0;
  double mean_pid_control_rms = 0.0;
  bool hinf_wins_rmse_all_seeds = false;
};

/// Paired comparison on cfg.sim.num_seeds seeds; both controllers see
/// identical disturbance and noise realizations per seed, and the PID result
/// is its best over the configured bandwidth sweep.
CompareSummary run_compare(const RunConfig& cfg,
                           const StateSpaceModel& hinf_controller);

}  // namespace attctl
