#pragma once

#include <string>

#include "attctl/hinf.hpp"
#include "attctl/sim.hpp"

namespace attctl {

/// Synthesis result as a JSON document (matrices row-major); round-trips
/// exactly (shortest-representation doubles).
void save_synthesis_result(const SynthesisResult& result, const std::string& path);
SynthesisResult load_synthesis_result(const std::string& path);

/// Trajectory CSV, one row per sample:
/// t, phi, theta, psi, p, q, r, y_p, y_q, y_r, L, M, N, d_phi, d_theta, d_psi
void write_trajectory_csv(const SimResult& result, const std::string& path);

/// Metrics summary JSON. `timestamp` is the single non-deterministic metadata
/// field; pass an empty string to omit it for byte-stable output.
void write_metrics_json(const Metrics& metrics, bool diverged,
                        const std::string& timestamp, const std::string& path);

void write_grid_report_json(const RobustStabilityReport& report,
                            const std::string& path);

/// Disturbance torque series CSV: t, d_phi, d_theta, d_psi.
void write_disturbance_csv(const DisturbanceSeries& series, const std::string& path);

}  // namespace attctl
