#include "attctl/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "attctl/errors.hpp"

namespace attctl {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config: " + path + ": " + what);
}

void require_keys(const json& obj, const std::string& path,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) fail(path + "." + key, "unknown key");
  }
}

double get_number(const json& obj, const std::string& path, const char* key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

bool get_bool(const json& obj, const std::string& path, const char* key,
              bool fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_boolean()) fail(path + "." + key, "expected a boolean");
  return v.get<bool>();
}

int get_int(const json& obj, const std::string& path, const char* key,
            int fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

uint64_t get_seed(const json& obj, const std::string& path, const char* key,
                  uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_unsigned() && !v.is_number_integer())
    fail(path + "." + key, "expected an integer seed");
  return v.get<uint64_t>();
}

Eigen::Vector3d get_vec3(const json& obj, const std::string& path,
                         const char* key, const Eigen::Vector3d& fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_array() || v.size() != 3) fail(path + "." + key, "expected [x, y, z]");
  Eigen::Vector3d out;
  for (int i = 0; i < 3; ++i) {
    if (!v[static_cast<size_t>(i)].is_number())
      fail(path + "." + key, "expected numeric entries");
    out(i) = v[static_cast<size_t>(i)].get<double>();
  }
  return out;
}

RhoVector get_rho(const json& obj, const std::string& path, const char* key,
                  const RhoVector& fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_array() || v.size() != 7)
    fail(path + "." + key, "expected the 7 scheduling bounds");
  RhoVector rho;
  double* fields[7] = {&rho.rho1, &rho.rho2, &rho.rho3, &rho.rho4,
                       &rho.rho5, &rho.rho6, &rho.rho7};
  for (size_t i = 0; i < 7; ++i) {
    if (!v[i].is_number()) fail(path + "." + key, "expected numeric entries");
    *fields[i] = v[i].get<double>();
  }
  return rho;
}

void parse_inertia(const json& j, RunConfig& cfg) {
  require_keys(j, "inertia", {"mass", "Ix", "Iy", "Iz"});
  cfg.inertia.mass = get_number(j, "inertia", "mass", cfg.inertia.mass);
  cfg.inertia.Ix = get_number(j, "inertia", "Ix", cfg.inertia.Ix);
  cfg.inertia.Iy = get_number(j, "inertia", "Iy", cfg.inertia.Iy);
  cfg.inertia.Iz = get_number(j, "inertia", "Iz", cfg.inertia.Iz);
  if (cfg.inertia.mass <= 0.0 || cfg.inertia.Ix <= 0.0 || cfg.inertia.Iy <= 0.0 ||
      cfg.inertia.Iz <= 0.0)
    fail("inertia", "mass and inertias must be positive");
}

void parse_weights(const json& j, RunConfig& cfg) {
  require_keys(j, "weights",
               {"w_att", "w_act", "w_dist", "w_noise", "noise_shaping",
                "noise_zero", "noise_pole", "dist_shaping", "dist_pole",
                "att_shaping", "att_pole"});
  auto& w = cfg.weights;
  w.w_att = get_vec3(j, "weights", "w_att", w.w_att);
  w.w_act = get_vec3(j, "weights", "w_act", w.w_act);
  w.w_dist = get_number(j, "weights", "w_dist", w.w_dist);
  w.w_noise = get_vec3(j, "weights", "w_noise", w.w_noise);
  w.noise_shaping = get_bool(j, "weights", "noise_shaping", w.noise_shaping);
  w.noise_zero = get_number(j, "weights", "noise_zero", w.noise_zero);
  w.noise_pole = get_number(j, "weights", "noise_pole", w.noise_pole);
  if (w.noise_shaping && (w.noise_pole <= 0.0 || w.noise_zero <= 0.0))
    fail("weights", "shaping filter must be stable (pole, zero > 0)");
  w.dist_shaping = get_bool(j, "weights", "dist_shaping", w.dist_shaping);
  w.dist_pole = get_number(j, "weights", "dist_pole", w.dist_pole);
  if (w.dist_shaping && w.dist_pole <= 0.0)
    fail("weights", "disturbance shaping pole must be positive");
  w.att_shaping = get_bool(j, "weights", "att_shaping", w.att_shaping);
  w.att_pole = get_number(j, "weights", "att_pole", w.att_pole);
  if (w.att_shaping && w.att_pole <= 0.0)
    fail("weights", "attitude shaping pole must be positive");
}

void parse_dryden(const json& j, RunConfig& cfg) {
  require_keys(j, "dryden",
               {"wind_speed", "altitude", "L_u", "L_v", "L_w", "sigma_u",
                "sigma_v", "sigma_w", "c_phi", "c_theta", "c_psi",
                "sample_rate", "seed"});
  auto& d = cfg.dryden;
  d.wind_speed = get_number(j, "dryden", "wind_speed", d.wind_speed);
  d.altitude = get_number(j, "dryden", "altitude", d.altitude);
  d.L_u = get_number(j, "dryden", "L_u", d.L_u);
  d.L_v = get_number(j, "dryden", "L_v", d.L_v);
  d.L_w = get_number(j, "dryden", "L_w", d.L_w);
  d.sigma_u = get_number(j, "dryden", "sigma_u", d.sigma_u);
  d.sigma_v = get_number(j, "dryden", "sigma_v", d.sigma_v);
  d.sigma_w = get_number(j, "dryden", "sigma_w", d.sigma_w);
  d.c_phi = get_number(j, "dryden", "c_phi", d.c_phi);
  d.c_theta = get_number(j, "dryden", "c_theta", d.c_theta);
  d.c_psi = get_number(j, "dryden", "c_psi", d.c_psi);
  d.sample_rate = get_number(j, "dryden", "sample_rate", d.sample_rate);
  d.seed = get_seed(j, "dryden", "seed", d.seed);
  if (d.wind_speed <= 0.0 || d.L_u <= 0.0 || d.L_v <= 0.0 || d.L_w <= 0.0 ||
      d.sigma_u <= 0.0 || d.sigma_v <= 0.0 || d.sigma_w <= 0.0 ||
      d.sample_rate <= 0.0)
    fail("dryden", "speeds, lengths, intensities and rates must be positive");
}

void parse_gyro(const json& j, RunConfig& cfg) {
  require_keys(j, "gyro_noise", {"snr_db", "sigma", "sample_rate", "seed"});
  auto& g = cfg.gyro_noise;
  g.snr_db = get_number(j, "gyro_noise", "snr_db", g.snr_db);
  if (j.contains("sigma"))
    g.sigma = get_number(j, "gyro_noise", "sigma", g.sigma);
  else if (j.contains("snr_db"))
    g.sigma = GyroNoiseConfig::sigma_from_snr(g.snr_db);
  g.sample_rate = get_number(j, "gyro_noise", "sample_rate", g.sample_rate);
  g.seed = get_seed(j, "gyro_noise", "seed", g.seed);
  if (g.sigma <= 0.0 || g.sample_rate <= 0.0)
    fail("gyro_noise", "sigma and sample_rate must be positive");
}

void parse_pid(const json& j, RunConfig& cfg) {
  require_keys(j, "pid",
               {"omega_c", "zeta", "third_pole_ratio", "leak", "sweep_omega_c"});
  auto& p = cfg.pid;
  p.omega_c = get_number(j, "pid", "omega_c", p.omega_c);
  p.zeta = get_number(j, "pid", "zeta", p.zeta);
  p.third_pole_ratio = get_number(j, "pid", "third_pole_ratio", p.third_pole_ratio);
  p.leak = get_number(j, "pid", "leak", p.leak);
  if (j.contains("sweep_omega_c")) {
    const auto& v = j.at("sweep_omega_c");
    if (!v.is_array() || v.empty()) fail("pid.sweep_omega_c", "expected a nonempty array");
    p.sweep_omega_c.clear();
    for (const auto& e : v) {
      if (!e.is_number()) fail("pid.sweep_omega_c", "expected numeric entries");
      p.sweep_omega_c.push_back(e.get<double>());
    }
  }
}

void parse_sim(const json& j, RunConfig& cfg) {
  require_keys(j, "sim",
               {"duration", "dt", "initial_attitude_deg", "disturbance", "noise",
                "discrete_controller", "seed", "num_seeds"});
  auto& s = cfg.sim;
  s.duration = get_number(j, "sim", "duration", s.duration);
  s.dt = get_number(j, "sim", "dt", s.dt);
  s.initial_attitude_deg =
      get_vec3(j, "sim", "initial_attitude_deg", s.initial_attitude_deg);
  s.disturbance = get_bool(j, "sim", "disturbance", s.disturbance);
  s.noise = get_bool(j, "sim", "noise", s.noise);
  s.discrete_controller =
      get_bool(j, "sim", "discrete_controller", s.discrete_controller);
  s.seed = get_seed(j, "sim", "seed", s.seed);
  s.num_seeds = get_int(j, "sim", "num_seeds", s.num_seeds);
  if (s.duration <= 0.0 || s.dt <= 0.0) fail("sim", "duration and dt must be positive");
  if (s.num_seeds < 1) fail("sim.num_seeds", "must be at least 1");
}

void parse_synthesis(const json& j, RunConfig& cfg) {
  require_keys(j, "synthesis", {"epsilon", "gamma_min", "gamma_max", "tol"});
  auto& s = cfg.synthesis;
  s.epsilon = get_number(j, "synthesis", "epsilon", s.epsilon);
  s.options.gamma_min = get_number(j, "synthesis", "gamma_min", s.options.gamma_min);
  s.options.gamma_max = get_number(j, "synthesis", "gamma_max", s.options.gamma_max);
  s.options.tol = get_number(j, "synthesis", "tol", s.options.tol);
  if (s.epsilon < 0.0) fail("synthesis.epsilon", "must be non-negative");
}

void parse_grid(const json& j, RunConfig& cfg) {
  require_keys(j, "grid", {"points_per_axis", "samples", "seed"});
  cfg.grid.points_per_axis =
      get_int(j, "grid", "points_per_axis", cfg.grid.points_per_axis);
  cfg.grid.samples = get_int(j, "grid", "samples", cfg.grid.samples);
  cfg.grid.seed = get_seed(j, "grid", "seed", cfg.grid.seed);
  if (cfg.grid.points_per_axis < 2) fail("grid.points_per_axis", "must be >= 2");
  if (cfg.grid.samples < 0) fail("grid.samples", "must be non-negative");
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }

  require_keys(j, "(root)",
               {"inertia", "rho_bounds", "weights", "actuator", "dryden",
                "gyro_noise", "pid", "sim", "synthesis", "grid", "output"});

  RunConfig cfg;
  if (j.contains("inertia")) parse_inertia(j.at("inertia"), cfg);
  if (j.contains("rho_bounds")) {
    const auto& b = j.at("rho_bounds");
    require_keys(b, "rho_bounds", {"min", "max"});
    cfg.rho_bounds.min = get_rho(b, "rho_bounds", "min", cfg.rho_bounds.min);
    cfg.rho_bounds.max = get_rho(b, "rho_bounds", "max", cfg.rho_bounds.max);
    if ((cfg.rho_bounds.min.vector().array() >
         cfg.rho_bounds.max.vector().array()).any())
      fail("rho_bounds", "min must be elementwise <= max");
  }
  if (j.contains("weights")) parse_weights(j.at("weights"), cfg);
  if (j.contains("actuator")) {
    const auto& a = j.at("actuator");
    require_keys(a, "actuator", {"tau", "u_max"});
    cfg.actuator.tau = get_number(a, "actuator", "tau", cfg.actuator.tau);
    cfg.actuator.u_max = get_number(a, "actuator", "u_max", cfg.actuator.u_max);
    if (cfg.actuator.tau <= 0.0 || cfg.actuator.u_max <= 0.0)
      fail("actuator", "tau and u_max must be positive");
  }
  if (j.contains("dryden")) parse_dryden(j.at("dryden"), cfg);
  if (j.contains("gyro_noise")) parse_gyro(j.at("gyro_noise"), cfg);
  if (j.contains("pid")) parse_pid(j.at("pid"), cfg);
  if (j.contains("sim")) parse_sim(j.at("sim"), cfg);
  if (j.contains("synthesis")) parse_synthesis(j.at("synthesis"), cfg);
  if (j.contains("grid")) parse_grid(j.at("grid"), cfg);
  if (j.contains("output")) {
    const auto& o = j.at("output");
    require_keys(o, "output", {"dir"});
    if (o.contains("dir")) {
      if (!o.at("dir").is_string()) fail("output.dir", "expected a string");
      cfg.output_dir = o.at("dir").get<std::string>();
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

}  // namespace attctl
