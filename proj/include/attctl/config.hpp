#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "attctl/attitude_dynamics.hpp"
#include "attctl/environment.hpp"
#include "attctl/hinf.hpp"
#include "attctl/lpv_model.hpp"
#include "attctl/plant.hpp"

namespace attctl {

/// PID tuning knobs, including the bandwidth sweep used by `compare` to pick
/// the baseline's best result.
struct PidConfig {
  double omega_c = 6.0;  ///< [rad/s]
  double zeta = 0.9;
  double third_pole_ratio = 0.25;
  double leak = 1e-3;
  std::vector<double> sweep_omega_c{4.0, 6.0, 8.0};
};

struct SimSection {
  double duration = 60.0;
  double dt = 1e-3;
  Eigen::Vector3d initial_attitude_deg = Eigen::Vector3d::Zero();
  bool disturbance = true;
  bool noise = true;
  bool discrete_controller = false;
  uint64_t seed = 1;
  int num_seeds = 10;  ///< paired seeds used by `compare`
};

struct SynthesisSection {
  double epsilon = kDefaultEpsilon;
  HinfOptions options;
};

struct GridSection {
  int points_per_axis = 3;
  int samples = 200;
  uint64_t seed = 7;
};

/// Full run configuration; every section has working defaults and is
/// overridable from a JSON document.
struct RunConfig {
  InertiaParams inertia;
  RhoBox rho_bounds = RhoBox::defaults();
  WeightConfig weights;
  ActuatorModel actuator;
  DrydenConfig dryden;
  GyroNoiseConfig gyro_noise;
  PidConfig pid;
  SimSection sim;
  SynthesisSection synthesis;
  GridSection grid;
  std::string output_dir = "out";
};

/// Parse and validate a configuration document. Unknown keys and type
/// mismatches are rejected with a ConfigError naming the offending key path.
RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& json_text);

}  // namespace attctl
