#include "attctl/artifacts.hpp"

#include <cstdio>
#include <limits>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "attctl/errors.hpp"

namespace attctl {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j, const char* name) {
  if (!j.is_array()) throw ConfigError(std::string("artifact: ") + name + ": expected rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = 0;
  if (rows > 0) cols = static_cast<Eigen::Index>(j.at(0).size());
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j.at(static_cast<size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != cols)
      throw ConfigError(std::string("artifact: ") + name + ": ragged matrix");
    for (Eigen::Index k = 0; k < cols; ++k)
      M(i, k) = row.at(static_cast<size_t>(k)).get<double>();
  }
  return M;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("artifact: cannot write " + path);
  out << text;
}

void append_number(std::string& line, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  line += buf;
}

}  // namespace

void save_synthesis_result(const SynthesisResult& result, const std::string& path) {
  json j;
  j["gamma"] = result.gamma;
  j["controller"] = {{"A", matrix_to_json(result.controller.A)},
                     {"B", matrix_to_json(result.controller.B)},
                     {"C", matrix_to_json(result.controller.C)},
                     {"D", matrix_to_json(result.controller.D)}};
  j["diagnostics"] = {{"bisection_iterations", result.bisection_iterations},
                      {"spectral_radius_xy", result.spectral_radius_xy},
                      {"achieved_norm", result.achieved_norm}};
  j["riccati"] = {{"X", matrix_to_json(result.X)}, {"Y", matrix_to_json(result.Y)}};
  write_text(path, j.dump(2) + "\n");
}

SynthesisResult load_synthesis_result(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("artifact: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("artifact: invalid JSON in ") + path + ": " + e.what());
  }
  SynthesisResult result;
  try {
    const auto& k = j.at("controller");
    result.controller = StateSpaceModel(
        matrix_from_json(k.at("A"), "A"), matrix_from_json(k.at("B"), "B"),
        matrix_from_json(k.at("C"), "C"), matrix_from_json(k.at("D"), "D"));
    result.gamma = j.at("gamma").get<double>();
    // Non-finite diagnostics serialize as JSON null.
    const auto number_or = [](const json& d, const char* key, double fallback) {
      return (d.contains(key) && d.at(key).is_number())
                 ? d.at(key).get<double>()
                 : fallback;
    };
    if (j.contains("diagnostics")) {
      const auto& d = j.at("diagnostics");
      result.bisection_iterations =
          static_cast<int>(number_or(d, "bisection_iterations", 0.0));
      result.spectral_radius_xy = number_or(d, "spectral_radius_xy", 0.0);
      result.achieved_norm = number_or(
          d, "achieved_norm", std::numeric_limits<double>::infinity());
    }
    if (j.contains("riccati")) {
      result.X = matrix_from_json(j.at("riccati").at("X"), "X");
      result.Y = matrix_from_json(j.at("riccati").at("Y"), "Y");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("artifact: malformed controller file ") +
                      path + ": " + e.what());
  }
  return result;
}

void write_trajectory_csv(const SimResult& result, const std::string& path) {
  std::string text =
      "t,phi,theta,psi,p,q,r,y_p,y_q,y_r,L,M,N,d_phi,d_theta,d_psi\n";
  for (size_t k = 0; k < result.time.size(); ++k) {
    std::string line;
    append_number(line, result.time[k]);
    const double fields[15] = {
        result.state[k].phi,          result.state[k].theta,
        result.state[k].psi,          result.state[k].p,
        result.state[k].q,            result.state[k].r,
        result.measured_rates[k](0),  result.measured_rates[k](1),
        result.measured_rates[k](2),  result.control[k](0),
        result.control[k](1),         result.control[k](2),
        result.disturbance[k](0),     result.disturbance[k](1),
        result.disturbance[k](2)};
    for (double f : fields) {
      line += ',';
      append_number(line, f);
    }
    line += '\n';
    text += line;
  }
  write_text(path, text);
}

void write_metrics_json(const Metrics& metrics, bool diverged,
                        const std::string& timestamp, const std::string& path) {
  json j;
  j["metrics"] = {{"peak_attitude_deg", metrics.peak_attitude_deg},
                  {"attitude_rmse_deg", metrics.attitude_rmse_deg},
                  {"control_rms", metrics.control_rms},
                  {"control_peak", metrics.control_peak}};
  j["diverged"] = diverged;
  if (!timestamp.empty()) j["timestamp"] = timestamp;
  write_text(path, j.dump(2) + "\n");
}

void write_grid_report_json(const RobustStabilityReport& report,
                            const std::string& path) {
  json j;
  j["all_stable"] = report.all_stable;
  j["margin"] = report.margin;
  j["worst_abscissa"] = report.worst_abscissa;
  const auto worst = report.worst_rho.vector();
  j["worst_rho"] = std::vector<double>(worst.data(), worst.data() + 7);
  j["points"] = report.points.size();
  json failures = json::array();
  for (const auto& p : report.points) {
    if (p.abscissa >= report.margin) {
      const auto v = p.rho.vector();
      failures.push_back({{"rho", std::vector<double>(v.data(), v.data() + 7)},
                          {"abscissa", p.abscissa}});
    }
  }
  j["failures"] = std::move(failures);
  write_text(path, j.dump(2) + "\n");
}

void write_disturbance_csv(const DisturbanceSeries& series, const std::string& path) {
  std::string text = "t,d_phi,d_theta,d_psi\n";
  for (size_t k = 0; k < series.torque.size(); ++k) {
    std::string line;
    append_number(line, static_cast<double>(k) * series.dt);
    for (int i = 0; i < 3; ++i) {
      line += ',';
      append_number(line, series.torque[k](i));
    }
    line += '\n';
    text += line;
  }
  write_text(path, text);
}

}  // namespace attctl
