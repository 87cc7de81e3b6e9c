#include "ilmsa/json_io.hpp"

#include <fstream>

#include <json.hpp>

#include "ilmsa/io_util.hpp"

namespace ilmsa {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::SchemaViolation, path.string() + ": " + e.what());
    }
    return j;
}

double get_number(const ordered_json& j, const char* key, double fallback,
                  const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number())
        throw Error(ErrorCode::SchemaViolation, path + "." + key + ": expected a number");
    return it->get<double>();
}

bool get_bool(const ordered_json& j, const char* key, bool fallback, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_boolean())
        throw Error(ErrorCode::SchemaViolation, path + "." + key + ": expected a bool");
    return it->get<bool>();
}

Point3D get_point3(const ordered_json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
        !j[2].is_number())
        throw Error(ErrorCode::SchemaViolation, path + ": expected [x, y, z]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

void validate_run_config(const RunConfig& cfg) {
    const PlannerConfig& p = cfg.sweep.planner;
    if (p.safe_distance_e <= 0.0)
        throw Error(ErrorCode::SchemaViolation, "planner.safe_distance_e must be positive");
    if (p.max_iter < 1)
        throw Error(ErrorCode::SchemaViolation, "planner.max_iter must be at least 1");
    if (cfg.sweep.delta_theta_deg <= 0.0 || cfg.sweep.delta_theta_deg > 90.0)
        throw Error(ErrorCode::SchemaViolation, "sweep.delta_theta_deg must be in (0, 90]");
    const EvaluationWeights& w = cfg.sweep.weights;
    if (w.length < 0.0 || w.safety < 0.0 || w.smoothness < 0.0 ||
        w.length + w.safety + w.smoothness <= 0.0)
        throw Error(ErrorCode::SchemaViolation,
                    "weights must be non-negative with a positive sum");
    if (cfg.sweep.spline.degree < 1)
        throw Error(ErrorCode::SchemaViolation, "spline.degree must be at least 1");
    if (cfg.sweep.spline.samples_per_segment < 2)
        throw Error(ErrorCode::SchemaViolation, "spline.samples_per_segment must be at least 2");
    const BaselineConfig& b = cfg.baseline;
    if (b.grid_resolution <= 0.0)
        throw Error(ErrorCode::SchemaViolation, "baseline.grid_resolution must be positive");
    if (b.goal_bias < 0.0 || b.goal_bias > 1.0)
        throw Error(ErrorCode::SchemaViolation, "baseline.goal_bias must be in [0, 1]");
    if (b.max_samples < 1)
        throw Error(ErrorCode::SchemaViolation, "baseline.max_samples must be at least 1");
    if (b.step_size <= 0.0 || b.step_size_3d <= 0.0)
        throw Error(ErrorCode::SchemaViolation, "baseline.step_size must be positive");
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& path) {
    const ordered_json j = parse_file(path);
    RunConfig cfg;

    if (auto it = j.find("planner"); it != j.end()) {
        cfg.sweep.planner.safe_distance_e =
            get_number(*it, "safe_distance_e", cfg.sweep.planner.safe_distance_e, "$.planner");
        cfg.sweep.planner.max_iter = static_cast<int>(
            get_number(*it, "max_iter", cfg.sweep.planner.max_iter, "$.planner"));
    }
    if (auto it = j.find("sweep"); it != j.end())
        cfg.sweep.delta_theta_deg =
            get_number(*it, "delta_theta_deg", cfg.sweep.delta_theta_deg, "$.sweep");
    if (auto it = j.find("weights"); it != j.end()) {
        cfg.sweep.weights.length =
            get_number(*it, "length", cfg.sweep.weights.length, "$.weights");
        cfg.sweep.weights.safety =
            get_number(*it, "safety", cfg.sweep.weights.safety, "$.weights");
        cfg.sweep.weights.smoothness =
            get_number(*it, "smoothness", cfg.sweep.weights.smoothness, "$.weights");
    }
    if (auto it = j.find("spline"); it != j.end()) {
        cfg.sweep.spline.degree =
            static_cast<int>(get_number(*it, "degree", cfg.sweep.spline.degree, "$.spline"));
        cfg.sweep.spline.samples_per_segment = static_cast<int>(get_number(
            *it, "samples_per_segment", cfg.sweep.spline.samples_per_segment, "$.spline"));
        cfg.sweep.spline.clamped = get_bool(*it, "clamped", cfg.sweep.spline.clamped, "$.spline");
    }
    if (auto it = j.find("baseline"); it != j.end()) {
        cfg.baseline.grid_resolution =
            get_number(*it, "grid_resolution", cfg.baseline.grid_resolution, "$.baseline");
        cfg.baseline.step_size =
            get_number(*it, "step_size", cfg.baseline.step_size, "$.baseline");
        cfg.baseline.step_size_3d =
            get_number(*it, "step_size_3d", cfg.baseline.step_size_3d, "$.baseline");
        cfg.baseline.goal_bias =
            get_number(*it, "goal_bias", cfg.baseline.goal_bias, "$.baseline");
        cfg.baseline.max_samples = static_cast<int>(
            get_number(*it, "max_samples", cfg.baseline.max_samples, "$.baseline"));
        cfg.baseline.clearance_e =
            get_number(*it, "clearance_e", cfg.baseline.clearance_e, "$.baseline");
        cfg.baseline.corridor_radius =
            get_number(*it, "corridor_radius", cfg.baseline.corridor_radius, "$.baseline");
    }
    validate_run_config(cfg);
    return cfg;
}

namespace {

ordered_json point_array(Point3D p) { return ordered_json::array({p.x, p.y, p.z}); }
ordered_json point_array(Point2D p) { return ordered_json::array({p.x, p.z}); }

}  // namespace

std::string path_output_to_json(const PathOutput& out) {
    ordered_json j;
    j["version"] = 1;
    j["units"] = "mm";
    j["algorithm"] = out.algorithm;
    if (out.plane_theta_deg)
        j["plane_theta_deg"] = *out.plane_theta_deg;
    else
        j["plane_theta_deg"] = nullptr;
    j["nodes"] = ordered_json::array();
    j["smoothed"] = ordered_json::array();
    if (out.two_d) {
        for (const Point2D& p : out.nodes2d) j["nodes"].push_back(point_array(p));
        for (const Point2D& p : out.smoothed2d) j["smoothed"].push_back(point_array(p));
    } else {
        for (const Point3D& p : out.nodes) j["nodes"].push_back(point_array(p));
        for (const Point3D& p : out.smoothed) j["smoothed"].push_back(point_array(p));
    }
    ordered_json metrics;
    metrics["length_mm"] = out.metrics.length;
    metrics["clearance_mm"] = out.metrics.min_clearance;
    metrics["smoothness_rad"] = out.metrics.smoothness;
    if (out.score)
        metrics["score"] = *out.score;
    else
        metrics["score"] = nullptr;
    metrics["planning_time_ms"] = out.planning_time_ms;
    metrics["node_count"] = out.node_count;
    j["metrics"] = std::move(metrics);
    return j.dump(2) + "\n";
}

void write_path_json(const PathOutput& out, const std::filesystem::path& path) {
    write_text_atomic(path, path_output_to_json(out));
}

std::vector<Scenario> load_suite(const std::filesystem::path& path) {
    const ordered_json j = parse_file(path);
    auto scenarios_it = j.find("scenarios");
    if (scenarios_it == j.end() || !scenarios_it->is_array())
        throw Error(ErrorCode::SchemaViolation, "$.scenarios: expected an array");

    std::vector<Scenario> suite;
    const std::filesystem::path base = path.parent_path();
    for (std::size_t i = 0; i < scenarios_it->size(); ++i) {
        const auto& s = (*scenarios_it)[i];
        const std::string ctx = "$.scenarios[" + std::to_string(i) + "]";
        Scenario scenario;
        auto id_it = s.find("id");
        if (id_it == s.end() || !id_it->is_string())
            throw Error(ErrorCode::SchemaViolation, ctx + ".id: expected a string");
        scenario.id = id_it->get<std::string>();

        if (auto env_it = s.find("env"); env_it != s.end()) {
            if (!env_it->is_string())
                throw Error(ErrorCode::SchemaViolation, ctx + ".env: expected a file path");
            std::filesystem::path env_path = env_it->get<std::string>();
            if (env_path.is_relative()) env_path = base / env_path;
            scenario.env = load_environment(env_path);
        } else if (auto gen_it = s.find("generate"); gen_it != s.end()) {
            const auto& g = *gen_it;
            ScenarioSpec spec;
            spec.seed = static_cast<std::uint64_t>(
                get_number(g, "seed", 0.0, ctx + ".generate"));
            spec.n_fruits =
                static_cast<int>(get_number(g, "fruits", 0.0, ctx + ".generate"));
            auto bounds_it = g.find("bounds");
            if (bounds_it == g.end())
                throw Error(ErrorCode::SchemaViolation, ctx + ".generate.bounds: missing");
            spec.bounds_min = get_point3((*bounds_it)["min"], ctx + ".generate.bounds.min");
            spec.bounds_max = get_point3((*bounds_it)["max"], ctx + ".generate.bounds.max");
            auto start_it = g.find("start");
            auto end_it = g.find("end");
            if (start_it == g.end() || end_it == g.end())
                throw Error(ErrorCode::SchemaViolation, ctx + ".generate: start/end missing");
            spec.start = get_point3(*start_it, ctx + ".generate.start");
            spec.end = get_point3(*end_it, ctx + ".generate.end");
            if (auto fs = g.find("fruit_size"); fs != g.end())
                spec.fruit_size = get_point3(*fs, ctx + ".generate.fruit_size");
            spec.clearance_e = get_number(g, "clearance_e", spec.clearance_e, ctx + ".generate");
            if (auto zone = g.find("fruit_zone"); zone != g.end()) {
                spec.fruit_zone_min =
                    get_point3((*zone)["min"], ctx + ".generate.fruit_zone.min");
                spec.fruit_zone_max =
                    get_point3((*zone)["max"], ctx + ".generate.fruit_zone.max");
            }
            scenario.env = generate_scenario(spec);
        } else {
            throw Error(ErrorCode::SchemaViolation, ctx + ": needs either env or generate");
        }
        suite.push_back(std::move(scenario));
    }
    if (suite.empty()) throw Error(ErrorCode::EmptyInput, "suite has no scenarios");
    return suite;
}

std::string stat_result_to_json(const StatResult& result, const std::string& metric,
                                const std::vector<double>& success_rates) {
    ordered_json j;
    j["test"] = result.test_name;
    j["metric"] = metric;
    j["statistic"] = result.statistic;
    j["p_value"] = result.p_value;
    j["groups"] = ordered_json::array();
    for (std::size_t i = 0; i < result.group_labels.size(); ++i) {
        ordered_json g;
        g["label"] = result.group_labels[i];
        g["n"] = result.n_per_group[i];
        if (i < success_rates.size()) g["success_rate"] = success_rates[i];
        j["groups"].push_back(std::move(g));
    }
    return j.dump(2) + "\n";
}

}  // namespace ilmsa
