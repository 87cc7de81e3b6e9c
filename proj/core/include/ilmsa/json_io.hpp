#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ilmsa/baselines.hpp"
#include "ilmsa/bench.hpp"
#include "ilmsa/planner3d.hpp"
#include "ilmsa/stats.hpp"

namespace ilmsa {

/// Everything a planning run can be configured with; mirrors the JSON config
/// file. Flags override file values override these defaults.
struct RunConfig {
    SweepConfig sweep;         // holds planner, weights, spline
    BaselineConfig baseline;
};

RunConfig load_run_config(const std::filesystem::path& path);

struct PathOutput {
    std::string algorithm;
    std::optional<double> plane_theta_deg;
    bool two_d = false;
    std::vector<Point3D> nodes;
    std::vector<Point3D> smoothed;
    std::vector<Point2D> nodes2d;
    std::vector<Point2D> smoothed2d;
    PathMetrics metrics;
    std::optional<double> score;
    long long node_count = 0;
    double planning_time_ms = 0.0;
};

std::string path_output_to_json(const PathOutput& out);
void write_path_json(const PathOutput& out, const std::filesystem::path& path);

/// Materializes a suite file: each scenario is either {"id", "env": <file>}
/// or {"id", "generate": {...}}. Relative env paths resolve against the
/// suite file's directory.
std::vector<Scenario> load_suite(const std::filesystem::path& path);

std::string stat_result_to_json(const StatResult& result, const std::string& metric,
                                const std::vector<double>& success_rates);

}  // namespace ilmsa
