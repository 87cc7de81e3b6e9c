#include "ilmsa/bench.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ilmsa/evaluation.hpp"
#include "ilmsa/io_util.hpp"
#include "ilmsa/smoothing.hpp"

namespace ilmsa {

const char* algo_cli_name(Algo algo) {
    switch (algo) {
        case Algo::Ilmsa2d: return "ilmsa2d";
        case Algo::Ilmsa3d: return "ilmsa3d";
        case Algo::Astar: return "astar";
        case Algo::Rrt: return "rrt";
        case Algo::RrtConnect: return "rrtconnect";
        case Algo::Rrt3d: return "rrt3d";
        case Algo::Lps: return "lps";
    }
    return "unknown";
}

const char* algo_report_label(Algo algo) {
    return algo == Algo::Rrt3d ? "rrt3d-goalbias" : algo_cli_name(algo);
}

Algo algo_from_name(const std::string& name) {
    for (Algo algo : {Algo::Ilmsa2d, Algo::Ilmsa3d, Algo::Astar, Algo::Rrt, Algo::RrtConnect,
                      Algo::Rrt3d, Algo::Lps})
        if (name == algo_cli_name(algo) || name == algo_report_label(algo)) return algo;
    throw Error(ErrorCode::SchemaViolation, "unknown algorithm: " + name);
}

bool algo_is_2d(Algo algo) {
    return algo == Algo::Ilmsa2d || algo == Algo::Astar || algo == Algo::Rrt ||
           algo == Algo::RrtConnect;
}

PlannedPath plan_with(Algo algo, const Environment& env, const Environment2D& projected,
                      const SweepConfig& sweep, const BaselineConfig& baseline) {
    PlannedPath out;
    out.two_d = algo_is_2d(algo);
    switch (algo) {
        case Algo::Ilmsa2d: {
            std::vector<Polygon2D> grown;
            grown.reserve(projected.obstacles.size());
            for (const Obstacle2D& obs : projected.obstacles)
                grown.push_back(inflate_polygon(obs.polygon, sweep.planner.safe_distance_e));
            PlannerConfig cfg = sweep.planner;
            cfg.bounds = Bounds2D{projected.bounds_min, projected.bounds_max};
            Path2D path = generate_path_2d(projected.start, projected.end, grown, cfg);

            // Same smoothing rule as the sweep planner, run in the plane y = 0.
            std::vector<Point3D> lifted;
            lifted.reserve(path.nodes.size());
            for (const Point2D& p : path.nodes) lifted.push_back({p.x, 0.0, p.z});
            const std::vector<Point3D> samples = generate_bspline_3d(lifted, sweep.spline);
            std::vector<Point2D> samples2d;
            samples2d.reserve(samples.size());
            for (const Point3D& p : samples) samples2d.push_back({p.x, p.z});
            out.smoothed2d = validate_smoothed_2d(samples2d, grown) ? std::move(samples2d)
                                                                    : path.nodes;
            out.nodes2d = std::move(path.nodes);
            return out;
        }
        case Algo::Astar:
        case Algo::Rrt:
        case Algo::RrtConnect: {
            Path2D path = algo == Algo::Astar        ? astar_2d(projected, baseline)
                          : algo == Algo::Rrt        ? rrt_2d(projected, baseline)
                                                     : rrt_connect_2d(projected, baseline);
            out.smoothed2d = path.nodes;
            out.nodes2d = std::move(path.nodes);
            return out;
        }
        case Algo::Ilmsa3d: {
            SweepResult result = plan_3d(env, sweep);
            out.nodes3d = std::move(result.best.nodes);
            out.smoothed3d = std::move(result.best.smoothed);
            out.plane_theta_deg = result.best.plane_theta_deg;
            out.score = result.best_score;
            return out;
        }
        case Algo::Rrt3d: {
            Path3D path = rrt_3d(env, baseline);
            out.smoothed3d = path.nodes;
            out.nodes3d = std::move(path.nodes);
            return out;
        }
        case Algo::Lps: {
            Path3D path = lps_3d(env, baseline);
            for (std::size_t i : path.key_nodes) out.nodes3d.push_back(path.nodes[i]);
            out.smoothed3d = std::move(path.nodes);
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

void fill_record_metrics(TrialRecord& rec, const PlannedPath& planned, const Environment& env,
                         const Environment2D& projected) {
    rec.success = true;
    rec.score = planned.score;
    if (planned.two_d) {
        rec.key_node_count = static_cast<long long>(planned.nodes2d.size());
        std::vector<Polygon2D> raw;
        raw.reserve(projected.obstacles.size());
        for (const Obstacle2D& obs : projected.obstacles) raw.push_back(obs.polygon);
        rec.node_count = densified_node_count(planned.smoothed2d, 1.0);
        rec.length_mm = path_length(planned.smoothed2d);
        rec.clearance_mm = path_clearance(densify_polyline(planned.smoothed2d, 1.0), raw);
        rec.smoothness_rad = path_smoothness(planned.smoothed2d);
    } else {
        rec.key_node_count = static_cast<long long>(planned.nodes3d.size());
        rec.node_count = densified_node_count(planned.smoothed3d, 1.0);
        rec.length_mm = path_length(planned.smoothed3d);
        rec.clearance_mm =
            path_clearance(densify_polyline(planned.smoothed3d, 1.0), env.obstacles);
        rec.smoothness_rad = path_smoothness(planned.smoothed3d);
    }
}

TrialRecord run_single_trial(const Scenario& scenario, const Environment2D& projected, Algo algo,
                             int trial_index, std::uint64_t seed, const SweepConfig& sweep,
                             const BaselineConfig& baseline) {
    TrialRecord rec;
    rec.scenario_id = scenario.id;
    rec.seed = seed;
    rec.algorithm = algo_report_label(algo);
    rec.trial_index = trial_index;

    BaselineConfig seeded = baseline;
    seeded.rng_seed = seed;

    const auto t0 = std::chrono::steady_clock::now();
    try {
        const PlannedPath planned = plan_with(algo, scenario.env, projected, sweep, seeded);
        rec.planning_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        fill_record_metrics(rec, planned, scenario.env, projected);
    } catch (const std::exception&) {
        rec.planning_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        rec.success = false;
    }
    return rec;
}

std::vector<TrialRecord> run_trials(const std::vector<Scenario>& suite,
                                    const std::vector<Algo>& algorithms, int n_trials,
                                    std::uint64_t base_seed, const SweepConfig& sweep,
                                    const BaselineConfig& baseline) {
    if (n_trials < 1) throw std::invalid_argument("n_trials must be at least 1");
    std::vector<TrialRecord> records;
    records.reserve(suite.size() * algorithms.size() * static_cast<std::size_t>(n_trials));
    for (const Scenario& scenario : suite) {
        const Environment2D projected = project_to_xoz(scenario.env);
        for (Algo algo : algorithms)
            for (int trial = 0; trial < n_trials; ++trial)
                records.push_back(run_single_trial(scenario, projected, algo, trial,
                                                   base_seed + static_cast<std::uint64_t>(trial),
                                                   sweep, baseline));
    }
    return records;
}

// --- CSV ---------------------------------------------------------------------------

namespace {

const char* kCsvHeader =
    "scenario_id,seed,algorithm,trial_index,success,node_count,key_node_count,"
    "planning_time_ms,length_mm,clearance_mm,smoothness_rad,score";

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

double parse_double_field(const std::string& s, const std::string& context) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw Error(ErrorCode::SchemaViolation, context + ": bad number '" + s + "'");
    return v;
}

}  // namespace

void export_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path) {
    if (records.empty()) throw Error(ErrorCode::EmptyInput, "no records to export");
    std::ostringstream out;
    out << kCsvHeader << "\r\n";
    for (const TrialRecord& r : records) {
        out << csv_quote(r.scenario_id) << ',' << r.seed << ',' << csv_quote(r.algorithm) << ','
            << r.trial_index << ',' << (r.success ? "true" : "false") << ',';
        if (r.success) {
            out << r.node_count << ',' << r.key_node_count << ','
                << format_double(r.planning_time_ms) << ',' << format_double(r.length_mm) << ','
                << format_double(r.clearance_mm) << ',' << format_double(r.smoothness_rad) << ',';
            if (r.score) out << format_double(*r.score);
        } else {
            out << ",," << format_double(r.planning_time_ms) << ",,,,";
        }
        out << "\r\n";
    }
    write_text_atomic(path, out.str());
}

std::vector<TrialRecord> import_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::SchemaViolation, "empty CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader)
        throw Error(ErrorCode::SchemaViolation, "unexpected CSV header: " + line);

    std::vector<TrialRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> f = split_csv_line(line);
        const std::string ctx = "line " + std::to_string(line_no);
        if (f.size() != 12)
            throw Error(ErrorCode::SchemaViolation, ctx + ": expected 12 fields");
        TrialRecord r;
        r.scenario_id = f[0];
        r.seed = static_cast<std::uint64_t>(parse_double_field(f[1], ctx));
        r.algorithm = f[2];
        r.trial_index = static_cast<int>(parse_double_field(f[3], ctx));
        if (f[4] != "true" && f[4] != "false")
            throw Error(ErrorCode::SchemaViolation, ctx + ": success must be true/false");
        r.success = f[4] == "true";
        if (r.success) {
            r.node_count = static_cast<long long>(parse_double_field(f[5], ctx));
            r.key_node_count = static_cast<long long>(parse_double_field(f[6], ctx));
            r.planning_time_ms = parse_double_field(f[7], ctx);
            r.length_mm = parse_double_field(f[8], ctx);
            r.clearance_mm = parse_double_field(f[9], ctx);
            r.smoothness_rad = parse_double_field(f[10], ctx);
            if (!f[11].empty()) r.score = parse_double_field(f[11], ctx);
        } else {
            r.planning_time_ms = parse_double_field(f[7], ctx);
        }
        records.push_back(std::move(r));
    }
    return records;
}

double record_metric(const TrialRecord& record, const std::string& metric) {
    if (metric == "length" || metric == "length_mm") return record.length_mm;
    if (metric == "time" || metric == "planning_time_ms") return record.planning_time_ms;
    if (metric == "nodes" || metric == "node_count")
        return static_cast<double>(record.node_count);
    if (metric == "key_nodes" || metric == "key_node_count")
        return static_cast<double>(record.key_node_count);
    if (metric == "clearance" || metric == "clearance_mm") return record.clearance_mm;
    if (metric == "smoothness" || metric == "smoothness_rad") return record.smoothness_rad;
    if (metric == "score") return record.score.value_or(std::nan(""));
    throw Error(ErrorCode::SchemaViolation, "unknown metric: " + metric);
}

}  // namespace ilmsa
