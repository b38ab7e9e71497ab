#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "attctl/config.hpp"
#include "attctl/errors.hpp"

using namespace attctl;

namespace {

std::string message_of(const std::string& text) {
  try {
    parse_run_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("empty document yields the working defaults") {
  const RunConfig cfg = parse_run_config("{}");
  CHECK(cfg.inertia.Ix == 0.25);
  CHECK(cfg.weights.w_att(0) == 20.0);
  CHECK(cfg.weights.w_act(0) == 0.5);
  CHECK(cfg.weights.w_dist == 0.65);
  CHECK(cfg.weights.w_noise(0) == doctest::Approx(0.0267));
  CHECK_FALSE(cfg.weights.noise_shaping);
  CHECK(cfg.actuator.tau == 0.02);
  CHECK(cfg.sim.duration == 60.0);
  CHECK(cfg.sim.num_seeds == 10);
  CHECK(cfg.pid.sweep_omega_c == std::vector<double>{4.0, 6.0, 8.0});
  CHECK(cfg.synthesis.epsilon == kDefaultEpsilon);
  CHECK(cfg.grid.samples == 200);
}

TEST_CASE("sections override defaults") {
  const RunConfig cfg = parse_run_config(R"({
    "inertia": {"mass": 12.0, "Ix": 0.3, "Iy": 0.22, "Iz": 0.12},
    "weights": {"w_att": [30, 30, 30], "w_dist": 0.5,
                "dist_shaping": true, "dist_pole": 1.5,
                "att_shaping": true, "att_pole": 10.0},
    "sim": {"duration": 20.0, "seed": 99},
    "synthesis": {"gamma_max": 1e7},
    "output": {"dir": "results"}
  })");
  CHECK(cfg.inertia.mass == 12.0);
  CHECK(cfg.weights.w_att(2) == 30.0);
  CHECK(cfg.weights.dist_shaping);
  CHECK(cfg.weights.dist_pole == 1.5);
  CHECK(cfg.weights.att_shaping);
  CHECK(cfg.weights.att_pole == 10.0);
  CHECK(cfg.sim.duration == 20.0);
  CHECK(cfg.sim.seed == 99);
  CHECK(cfg.synthesis.options.gamma_max == 1e7);
  CHECK(cfg.output_dir == "results");
}

TEST_CASE("unknown keys are rejected with their dotted path") {
  const std::string msg = message_of(R"({"weights": {"w_typo": 1.0}})");
  CHECK(msg.find("weights.w_typo") != std::string::npos);

  const std::string root = message_of(R"({"wieghts": {}})");
  CHECK(root.find("wieghts") != std::string::npos);
}

TEST_CASE("type mismatches are rejected") {
  CHECK_THROWS_AS(parse_run_config(R"({"sim": {"duration": "long"}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"weights": {"w_att": [1, 2]}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"sim": {"seed": 1.5}})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("[1, 2, 3]"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("not json"), ConfigError);
}

TEST_CASE("value validation") {
  CHECK_THROWS_AS(parse_run_config(R"({"inertia": {"Ix": -0.1}})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"sim": {"dt": 0.0}})"), ConfigError);
  CHECK_THROWS_AS(
      parse_run_config(R"({"weights": {"dist_shaping": true, "dist_pole": 0.0}})"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_run_config(R"({"weights": {"att_shaping": true, "att_pole": -1.0}})"),
      ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"grid": {"points_per_axis": 1}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"pid": {"sweep_omega_c": []}})"),
                  ConfigError);
}

TEST_CASE("gyro sigma derives from snr unless given explicitly") {
  const RunConfig from_snr = parse_run_config(R"({"gyro_noise": {"snr_db": 20.0}})");
  CHECK(from_snr.gyro_noise.sigma ==
        doctest::Approx(GyroNoiseConfig::sigma_from_snr(20.0)));
  const RunConfig given =
      parse_run_config(R"({"gyro_noise": {"sigma": 0.01}})");
  CHECK(given.gyro_noise.sigma == 0.01);
}

TEST_CASE("load_run_config reads a file and reports missing ones") {
  const std::string path = "test_config_tmp.json";
  {
    std::ofstream out(path);
    out << R"({"sim": {"duration": 5.0}})";
  }
  const RunConfig cfg = load_run_config(path);
  CHECK(cfg.sim.duration == 5.0);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_run_config("definitely_missing.json"), ConfigError);
}
