#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "attctl/artifacts.hpp"
#include "attctl/errors.hpp"
#include "attctl/workflow.hpp"

namespace {

namespace fs = std::filesystem;
using namespace attctl;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON configuration file");
  cmd->add_option("--out", args.out_dir, "Output directory");
  cmd->add_option("--seed", args.seed, "Base seed override")
      ->each([&args](const std::string&) { args.seed_set = true; });
}

RunConfig load_config(const CommonArgs& args) {
  RunConfig cfg;
  if (!args.config_path.empty()) cfg = load_run_config(args.config_path);
  if (args.seed_set) cfg.sim.seed = args.seed;
  cfg.output_dir = args.out_dir;
  fs::create_directories(cfg.output_dir);
  return cfg;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

void print_metrics_row(const char* name, const Metrics& m, bool diverged) {
  std::printf("%-10s %12.4f %12.4f %12.4f %12.4f %10s\n", name,
              m.peak_attitude_deg, m.attitude_rmse_deg, m.control_rms,
              m.control_peak, diverged ? "DIVERGED" : "ok");
}

void print_metrics_header() {
  std::printf("%-10s %12s %12s %12s %12s %10s\n", "controller", "peak[deg]",
              "rmse[deg]", "u_rms[Nm]", "u_peak[Nm]", "status");
}

int cmd_synth(const CommonArgs& args) {
  const RunConfig cfg = load_config(args);
  const SynthesisResult result = synthesize(cfg);
  const std::string path = cfg.output_dir + "/controller.json";
  save_synthesis_result(result, path);
  std::printf("gamma = %.6g (%d bisection iterations)\n", result.gamma,
              result.bisection_iterations);
  std::printf("controller order = %ld, closed-loop norm = %.6g\n",
              static_cast<long>(result.controller.states()),
              result.achieved_norm);
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_verify(const CommonArgs& args, const std::string& controller_path) {
  const RunConfig cfg = load_config(args);
  StateSpaceModel controller;
  if (!controller_path.empty()) {
    controller = load_synthesis_result(controller_path).controller;
  } else {
    controller = synthesize(cfg).controller;
  }
  const RobustStabilityReport report = verify_design(cfg, controller);
  const std::string path = cfg.output_dir + "/grid_report.json";
  write_grid_report_json(report, path);
  std::printf("grid points = %zu, worst abscissa = %.6g, margin = %.6g\n",
              report.points.size(), report.worst_abscissa, report.margin);
  std::printf("robust stability on grid: %s\n",
              report.all_stable ? "PASS" : "FAIL");
  std::printf("wrote %s\n", path.c_str());
  return report.all_stable ? 0 : 4;
}

int cmd_simulate(const CommonArgs& args, const std::string& controller_path,
                 bool use_pid, bool no_timestamp) {
  const RunConfig cfg = load_config(args);
  StateSpaceModel controller;
  if (!use_pid) {
    if (!controller_path.empty()) {
      controller = load_synthesis_result(controller_path).controller;
    } else {
      controller = synthesize(cfg).controller;
    }
  }
  const SimConfig sim_cfg = make_sim_config(
      cfg, use_pid ? ControllerKind::kPid : ControllerKind::kHinf, controller,
      cfg.pid.omega_c, cfg.sim.seed);
  const SimResult result = run_closed_loop(sim_cfg);
  write_trajectory_csv(result, cfg.output_dir + "/trajectory.csv");
  write_metrics_json(result.metrics, result.diverged,
                     no_timestamp ? std::string() : iso_timestamp(),
                     cfg.output_dir + "/metrics.json");
  print_metrics_header();
  print_metrics_row(use_pid ? "pid" : "hinf", result.metrics, result.diverged);
  std::printf("wrote %s/trajectory.csv and %s/metrics.json\n",
              cfg.output_dir.c_str(), cfg.output_dir.c_str());
  return result.diverged ? 5 : 0;
}

int cmd_compare(const CommonArgs& args, const std::string& controller_path,
                bool no_timestamp) {
  const RunConfig cfg = load_config(args);
  StateSpaceModel controller;
  if (!controller_path.empty()) {
    controller = load_synthesis_result(controller_path).controller;
  } else {
    controller = synthesize(cfg).controller;
  }
  const CompareSummary summary = run_compare(cfg, controller);

  std::string csv =
      "seed,hinf_peak_deg,hinf_rmse_deg,hinf_u_rms,hinf_u_peak,"
      "pid_peak_deg,pid_rmse_deg,pid_u_rms,pid_u_peak,pid_omega_c,"
      "hinf_diverged,pid_diverged\n";
  char line[512];
  for (const auto& row : summary.rows) {
    std::snprintf(line, sizeof(line),
                  "%llu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%d,%d\n",
                  static_cast<unsigned long long>(row.seed),
                  row.hinf.peak_attitude_deg, row.hinf.attitude_rmse_deg,
                  row.hinf.control_rms, row.hinf.control_peak,
                  row.pid.peak_attitude_deg, row.pid.attitude_rmse_deg,
                  row.pid.control_rms, row.pid.control_peak, row.pid_omega_c,
                  row.hinf_diverged ? 1 : 0, row.pid_diverged ? 1 : 0);
    csv += line;
  }
  {
    std::ofstream out(cfg.output_dir + "/compare.csv", std::ios::binary);
    if (!out) throw ConfigError("cannot write compare.csv");
    out << csv;
  }

  // Side-by-side trajectories for the first seed, for plotting.
  if (!summary.rows.empty()) {
    const uint64_t seed0 = summary.rows.front().seed;
    const SimResult h = run_closed_loop(make_sim_config(
        cfg, ControllerKind::kHinf, controller, cfg.pid.omega_c, seed0));
    const SimResult p = run_closed_loop(
        make_sim_config(cfg, ControllerKind::kPid, controller,
                        summary.rows.front().pid_omega_c, seed0));
    std::string traj =
        "t,hinf_phi,hinf_theta,hinf_psi,pid_phi,pid_theta,pid_psi,"
        "hinf_L,hinf_M,hinf_N,pid_L,pid_M,pid_N,d_phi,d_theta,d_psi\n";
    const size_t n = std::min(h.time.size(), p.time.size());
    for (size_t k = 0; k < n; ++k) {
      std::snprintf(line, sizeof(line),
                    "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                    "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    h.time[k], h.state[k].phi, h.state[k].theta,
                    h.state[k].psi, p.state[k].phi, p.state[k].theta,
                    p.state[k].psi, h.control[k](0), h.control[k](1),
                    h.control[k](2), p.control[k](0), p.control[k](1),
                    p.control[k](2), h.disturbance[k](0), h.disturbance[k](1),
                    h.disturbance[k](2));
      traj += line;
    }
    std::ofstream out(cfg.output_dir + "/compare_trajectories.csv",
                      std::ios::binary);
    if (!out) throw ConfigError("cannot write compare_trajectories.csv");
    out << traj;
  }

  nlohmann::json j;
  j["seeds"] = summary.rows.size();
  j["mean_hinf_rmse_deg"] = summary.mean_hinf_rmse;
  j["mean_pid_rmse_deg"] = summary.mean_pid_rmse;
  j["mean_peak_ratio_pid_over_hinf"] = summary.mean_peak_ratio;
  j["mean_hinf_control_rms"] = summary.mean_hinf_control_rms;
  j["mean_pid_control_rms"] = summary.mean_pid_control_rms;
  j["hinf_wins_rmse_all_seeds"] = summary.hinf_wins_rmse_all_seeds;
  if (!no_timestamp) j["timestamp"] = iso_timestamp();
  {
    std::ofstream out(cfg.output_dir + "/compare_summary.json",
                      std::ios::binary);
    if (!out) throw ConfigError("cannot write compare_summary.json");
    out << j.dump(2) << "\n";
  }

  std::printf("per-seed results (PID at its best sweep bandwidth):\n");
  std::printf("%6s %12s %12s %12s %12s %8s\n", "seed", "hinf_rmse", "pid_rmse",
              "hinf_peak", "pid_peak", "pid_wc");
  for (const auto& row : summary.rows) {
    std::printf("%6llu %12.4f %12.4f %12.4f %12.4f %8.1f\n",
                static_cast<unsigned long long>(row.seed),
                row.hinf.attitude_rmse_deg, row.pid.attitude_rmse_deg,
                row.hinf.peak_attitude_deg, row.pid.peak_attitude_deg,
                row.pid_omega_c);
  }
  std::printf("\nmeans: rmse %.4f vs %.4f deg, peak ratio %.2f, "
              "u_rms %.4f vs %.4f N m\n",
              summary.mean_hinf_rmse, summary.mean_pid_rmse,
              summary.mean_peak_ratio, summary.mean_hinf_control_rms,
              summary.mean_pid_control_rms);
  std::printf("wrote compare.csv, compare_trajectories.csv, "
              "compare_summary.json in %s\n",
              cfg.output_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gyro-only H-infinity attitude control: synthesis, "
               "verification, and closed-loop validation"};
  app.require_subcommand(1);

  CommonArgs synth_args, verify_args, sim_args, compare_args;
  std::string verify_controller, sim_controller, compare_controller;
  bool sim_pid = false;
  bool sim_no_timestamp = false;
  bool compare_no_timestamp = false;

  CLI::App* synth = app.add_subcommand("synth", "Synthesize the controller");
  add_common(synth, synth_args);

  CLI::App* verify =
      app.add_subcommand("verify", "Check closed-loop stability on the "
                                   "frozen-parameter grid");
  add_common(verify, verify_args);
  verify->add_option("--controller", verify_controller,
                     "Controller JSON (default: synthesize fresh)");

  CLI::App* simulate =
      app.add_subcommand("simulate", "Run one closed-loop simulation");
  add_common(simulate, sim_args);
  simulate->add_option("--controller", sim_controller,
                       "Controller JSON (default: synthesize fresh)");
  simulate->add_flag("--pid", sim_pid, "Use the cascaded PID baseline");
  simulate->add_flag("--no-timestamp", sim_no_timestamp,
                     "Omit the timestamp field for byte-stable output");

  CLI::App* compare = app.add_subcommand(
      "compare", "Paired-seed comparison against the PID baseline");
  add_common(compare, compare_args);
  compare->add_option("--controller", compare_controller,
                      "Controller JSON (default: synthesize fresh)");
  compare->add_flag("--no-timestamp", compare_no_timestamp,
                    "Omit the timestamp field for byte-stable output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return cmd_synth(synth_args);
    if (verify->parsed()) return cmd_verify(verify_args, verify_controller);
    if (simulate->parsed())
      return cmd_simulate(sim_args, sim_controller, sim_pid, sim_no_timestamp);
    if (compare->parsed())
      return cmd_compare(compare_args, compare_controller,
                         compare_no_timestamp);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const RegularityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BisectionFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 6;
  }
  return 0;
}
