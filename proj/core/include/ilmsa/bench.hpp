#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ilmsa/baselines.hpp"
#include "ilmsa/environment.hpp"
#include "ilmsa/planner3d.hpp"

namespace ilmsa {

enum class Algo { Ilmsa2d, Ilmsa3d, Astar, Rrt, RrtConnect, Rrt3d, Lps };

/// Name accepted on the command line (ilmsa2d, ilmsa3d, astar, rrt,
/// rrtconnect, rrt3d, lps).
const char* algo_cli_name(Algo algo);

/// Label written into records; rrt3d reports as "rrt3d-goalbias" since the
/// plane-directed variant is approximated by goal biasing.
const char* algo_report_label(Algo algo);

Algo algo_from_name(const std::string& name);
bool algo_is_2d(Algo algo);

struct Scenario {
    std::string id;
    Environment env;
};

struct TrialRecord {
    std::string scenario_id;
    std::uint64_t seed = 0;
    std::string algorithm;
    int trial_index = 0;
    bool success = false;
    // Metrics below are meaningful only when success is true.
    long long node_count = -1;      // trajectory nodes after 1 mm densification
    long long key_node_count = -1;  // planning-level nodes
    double planning_time_ms = 0.0;
    double length_mm = 0.0;
    double clearance_mm = 0.0;
    double smoothness_rad = 0.0;
    std::optional<double> score;    // only the plane-sweep planner scores paths
};

/// Uniform planner output: `nodes` is the planning-level polyline and
/// `smoothed` the delivered trajectory (spline samples for the sweep planner,
/// the densified polyline for the lowest-point heuristic, the polyline itself
/// for the rest).
struct PlannedPath {
    bool two_d = false;
    std::vector<Point2D> nodes2d;
    std::vector<Point2D> smoothed2d;
    std::vector<Point3D> nodes3d;
    std::vector<Point3D> smoothed3d;
    std::optional<double> plane_theta_deg;
    std::optional<double> score;
};

/// Dispatches to the selected planner. 2D algorithms run on `projected`.
/// Throws the planner's error on failure.
PlannedPath plan_with(Algo algo, const Environment& env, const Environment2D& projected,
                      const SweepConfig& sweep, const BaselineConfig& baseline);

/// Fills the path metrics of a record from a planned path (uninflated
/// clearance, 1 mm densified node count).
void fill_record_metrics(TrialRecord& record, const PlannedPath& planned,
                         const Environment& env, const Environment2D& projected);

/// One planner invocation, timed around the plan call only. Failures come
/// back as success=false records instead of exceptions.
TrialRecord run_single_trial(const Scenario& scenario, const Environment2D& projected, Algo algo,
                             int trial_index, std::uint64_t seed, const SweepConfig& sweep,
                             const BaselineConfig& baseline);

/// Full factorial (scenario x algorithm x trial) sweep with seed =
/// base_seed + trial. Record order is deterministic.
std::vector<TrialRecord> run_trials(const std::vector<Scenario>& suite,
                                    const std::vector<Algo>& algorithms, int n_trials,
                                    std::uint64_t base_seed, const SweepConfig& sweep,
                                    const BaselineConfig& baseline);

/// RFC-4180 CSV with one header row; failed trials leave their metric fields
/// empty. Doubles round-trip exactly.
void export_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path);
std::vector<TrialRecord> import_csv(const std::filesystem::path& path);

/// Column accessor for the stats CLI; accepts both the short metric names
/// (length, time, nodes, key_nodes, clearance, smoothness, score) and the CSV
/// header names.
double record_metric(const TrialRecord& record, const std::string& metric);

}  // namespace ilmsa
