// Command-line front end: environment generation, planning, projection,
// benchmarking, statistics, and plotting.
#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ilmsa/baselines.hpp"
#include "ilmsa/bench.hpp"
#include "ilmsa/environment.hpp"
#include "ilmsa/json_io.hpp"
#include "ilmsa/planner3d.hpp"
#include "ilmsa/smoothing.hpp"
#include "ilmsa/stats.hpp"
#include "ilmsa/svg.hpp"

namespace {

using namespace ilmsa;

constexpr int kExitOk = 0;
constexpr int kExitSchema = 2;
constexpr int kExitNoPath = 3;
constexpr int kExitIo = 4;

int exit_code_for(const Error& err) {
    switch (err.code()) {
        case ErrorCode::IoError:
            return kExitIo;
        case ErrorCode::NoPath:
        case ErrorCode::NoPathWithinBudget:
        case ErrorCode::NoFeasiblePlane:
        case ErrorCode::StartOrGoalBlocked:
        case ErrorCode::CorridorBlocked:
        case ErrorCode::PlacementFailure:
            return kExitNoPath;
        default:
            return kExitSchema;
    }
}

std::vector<double> parse_numbers(const std::string& text, std::size_t expected,
                                  const std::string& flag) {
    std::vector<double> out;
    std::string token;
    std::stringstream stream(text);
    while (std::getline(stream, token, ',')) {
        try {
            out.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw Error(ErrorCode::SchemaViolation, flag + ": bad number '" + token + "'");
        }
    }
    if (out.size() != expected)
        throw Error(ErrorCode::SchemaViolation,
                    flag + ": expected " + std::to_string(expected) + " comma-separated values");
    return out;
}

struct CommonPlanFlags {
    std::string config_path;
    std::optional<double> safe_distance_e;
    std::optional<double> delta_theta;
    std::optional<int> max_iter;
    std::optional<double> grid_resolution;
    std::optional<double> step_size;
    std::optional<double> step_size_3d;
    std::optional<double> goal_bias;
    std::optional<int> max_samples;
    std::optional<std::uint64_t> seed;
};

RunConfig resolve_config(const CommonPlanFlags& flags) {
    RunConfig cfg;
    if (!flags.config_path.empty()) cfg = load_run_config(flags.config_path);
    if (flags.safe_distance_e) {
        cfg.sweep.planner.safe_distance_e = *flags.safe_distance_e;
        cfg.baseline.clearance_e = *flags.safe_distance_e;
    }
    if (flags.delta_theta) cfg.sweep.delta_theta_deg = *flags.delta_theta;
    if (flags.max_iter) cfg.sweep.planner.max_iter = *flags.max_iter;
    if (flags.grid_resolution) cfg.baseline.grid_resolution = *flags.grid_resolution;
    if (flags.step_size) cfg.baseline.step_size = *flags.step_size;
    if (flags.step_size_3d) cfg.baseline.step_size_3d = *flags.step_size_3d;
    if (flags.goal_bias) cfg.baseline.goal_bias = *flags.goal_bias;
    if (flags.max_samples) cfg.baseline.max_samples = *flags.max_samples;
    if (flags.seed) cfg.baseline.rng_seed = *flags.seed;
    return cfg;
}

void add_config_flags(CLI::App* cmd, CommonPlanFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON config file (flags win over it)");
    cmd->add_option("--e", flags.safe_distance_e, "safe distance e in mm (default 5)");
    cmd->add_option("--delta-theta", flags.delta_theta,
                    "plane sweep increment in degrees (default 5)");
    cmd->add_option("--max-iter", flags.max_iter, "planner iteration cap (default 50)");
    cmd->add_option("--grid-resolution", flags.grid_resolution,
                    "A* grid resolution in mm (default 5)");
    cmd->add_option("--step-size", flags.step_size, "planar RRT step size in mm (default 10)");
    cmd->add_option("--step-size-3d", flags.step_size_3d,
                    "spatial RRT step size in mm (default 2.5)");
    cmd->add_option("--goal-bias", flags.goal_bias, "RRT goal bias (default 0.05)");
    cmd->add_option("--max-samples", flags.max_samples, "RRT sample budget (default 10000)");
    cmd->add_option("--seed", flags.seed, "RNG seed for sampling planners (default 0)");
}

// --- plan ---------------------------------------------------------------------------

int run_plan(const std::string& env_path, const std::string& algo_name,
             const CommonPlanFlags& flags, const std::string& out_path,
             const std::string& svg_path) {
    const RunConfig cfg = resolve_config(flags);
    const Algo algo = algo_from_name(algo_name);

    Environment env;
    Environment2D env2d;
    if (environment_file_is_2d(env_path)) {
        if (!algo_is_2d(algo))
            throw Error(ErrorCode::SchemaViolation,
                        std::string(algo_cli_name(algo)) + " needs a 3D environment file");
        env2d = load_environment_2d(env_path);
    } else {
        env = load_environment(env_path);
        if (algo_is_2d(algo)) env2d = project_to_xoz(env);
    }

    // Endpoint check up front so the diagnostic can name the blocking obstacle.
    const double e = algo == Algo::Ilmsa2d || algo == Algo::Ilmsa3d
                         ? cfg.sweep.planner.safe_distance_e
                         : cfg.baseline.clearance_e;
    const auto blocked =
        algo_is_2d(algo) ? find_blocking_obstacle(env2d, e) : find_blocking_obstacle(env, e);
    if (blocked)
        throw Error(ErrorCode::StartOrGoalBlocked,
                    blocked->first + " is inside inflated obstacle " + blocked->second,
                    blocked->second);

    const auto t0 = std::chrono::steady_clock::now();
    const PlannedPath planned = plan_with(algo, env, env2d, cfg.sweep, cfg.baseline);
    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    TrialRecord rec;
    fill_record_metrics(rec, planned, env, env2d);

    PathOutput out;
    out.algorithm = algo_report_label(algo);
    out.two_d = planned.two_d;
    out.nodes = planned.nodes3d;
    out.smoothed = planned.smoothed3d;
    out.nodes2d = planned.nodes2d;
    out.smoothed2d = planned.smoothed2d;
    out.plane_theta_deg = planned.plane_theta_deg;
    out.score = planned.score;
    out.metrics.length = rec.length_mm;
    out.metrics.min_clearance = rec.clearance_mm;
    out.metrics.smoothness = rec.smoothness_rad;
    out.node_count = rec.node_count;
    out.planning_time_ms = elapsed_ms;
    write_path_json(out, out_path);

    if (!svg_path.empty()) {
        if (out.two_d)
            write_environment_svg_2d(env2d, out.nodes2d, out.smoothed2d, svg_path);
        else
            write_environment_svg(env, out.nodes, out.smoothed, svg_path);
    }
    std::cout << "planned " << out.algorithm << ": length " << rec.length_mm << " mm, "
              << rec.node_count << " nodes, " << elapsed_ms << " ms\n";
    return kExitOk;
}

// --- stats ---------------------------------------------------------------------------

int run_stats(const std::string& results_path, const std::string& metric,
              const std::string& test, const std::vector<std::string>& groups,
              const std::string& alternative) {
    const auto records = import_csv(results_path);

    std::vector<std::vector<double>> samples(groups.size());
    std::vector<double> success_rates(groups.size(), 0.0);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        std::size_t total = 0;
        for (const TrialRecord& r : records) {
            if (r.algorithm != groups[g]) continue;
            ++total;
            if (r.success) samples[g].push_back(record_metric(r, metric));
        }
        if (total == 0)
            throw Error(ErrorCode::EmptySample, "no records for group " + groups[g]);
        success_rates[g] = static_cast<double>(samples[g].size()) / total;
    }

    StatResult result;
    if (test == "mann-whitney") {
        if (groups.size() != 2)
            throw Error(ErrorCode::SchemaViolation, "mann-whitney needs exactly 2 groups");
        Alternative alt = Alternative::TwoSided;
        if (alternative == "less") alt = Alternative::Less;
        else if (alternative == "greater") alt = Alternative::Greater;
        else if (alternative != "two-sided")
            throw Error(ErrorCode::SchemaViolation, "unknown alternative: " + alternative);
        result = mann_whitney_u(samples[0], samples[1], alt);
    } else if (test == "kruskal-wallis") {
        result = kruskal_wallis(samples);
    } else {
        throw Error(ErrorCode::SchemaViolation, "unknown test: " + test);
    }
    result.group_labels = groups;

    std::cout << stat_result_to_json(result, metric, success_rates);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Plane-sweep strawberry-harvesting path planner and benchmark harness"};
    app.require_subcommand(1);

    // gen-env
    auto* gen = app.add_subcommand("gen-env", "Generate a seeded scenario file");
    std::uint64_t gen_seed = 0;
    int gen_fruits = 13;
    std::string gen_bounds = "0,500,0,300,0,500";
    std::string gen_start = "40,120,280";
    std::string gen_end = "465,145,330";
    std::string gen_fruit_size = "40,40,40";
    double gen_clearance = 5.0;
    std::string gen_zone;
    std::string gen_out;
    gen->add_option("--seed", gen_seed, "scenario seed")->required();
    gen->add_option("--fruits", gen_fruits, "number of fruits (default 13)");
    gen->add_option("--bounds", gen_bounds, "XMIN,XMAX,YMIN,YMAX,ZMIN,ZMAX in mm");
    gen->add_option("--start", gen_start, "start X,Y,Z in mm");
    gen->add_option("--end", gen_end, "end X,Y,Z in mm");
    gen->add_option("--fruit-size", gen_fruit_size, "fruit box size SX,SY,SZ in mm");
    gen->add_option("--clearance", gen_clearance, "placement clearance e in mm (default 5)");
    gen->add_option("--fruit-zone", gen_zone,
                    "XMIN,XMAX,YMIN,YMAX,ZMIN,ZMAX placement box for fruit centers "
                    "(default: full bounds)");
    gen->add_option("--out", gen_out, "output environment JSON")->required();

    // plan
    auto* plan = app.add_subcommand("plan", "Plan a path on an environment file");
    std::string plan_env, plan_algo = "ilmsa3d", plan_out, plan_svg;
    CommonPlanFlags plan_flags;
    plan->add_option("--env", plan_env, "environment JSON")->required();
    plan->add_option("--algo", plan_algo,
                     "one of ilmsa2d, ilmsa3d, astar, rrt, rrtconnect, rrt3d, lps");
    plan->add_option("--out", plan_out, "output path JSON")->required();
    plan->add_option("--svg", plan_svg, "also draw an x-z elevation SVG");
    add_config_flags(plan, plan_flags);

    // project
    auto* project = app.add_subcommand("project", "Project a 3D environment onto the xoz plane");
    std::string project_env, project_out;
    project->add_option("--env", project_env, "3D environment JSON")->required();
    project->add_option("--out", project_out, "output 2D environment JSON")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "Run a benchmark suite to CSV");
    std::string bench_suite, bench_algos = "ilmsa3d,lps,rrt3d", bench_out;
    int bench_trials = 50;
    std::uint64_t bench_seed = 0;
    CommonPlanFlags bench_flags;
    bench->add_option("--suite", bench_suite, "suite JSON")->required();
    bench->add_option("--algos", bench_algos, "comma-separated algorithm list");
    bench->add_option("--trials", bench_trials, "trials per scenario and algorithm (default 50)");
    bench->add_option("--seed", bench_seed, "base seed; trial i runs with seed+i");
    bench->add_option("--out", bench_out, "output CSV")->required();
    add_config_flags(bench, bench_flags);

    // stats
    auto* stats = app.add_subcommand("stats", "Nonparametric test over a results CSV");
    std::string stats_results, stats_metric = "length", stats_test = "mann-whitney";
    std::string stats_groups, stats_alternative = "two-sided";
    stats->add_option("--results", stats_results, "results CSV from bench")->required();
    stats->add_option("--metric", stats_metric,
                      "length | time | nodes | key_nodes | clearance | smoothness | score");
    stats->add_option("--test", stats_test, "mann-whitney | kruskal-wallis");
    stats->add_option("--groups", stats_groups, "comma-separated algorithm labels")->required();
    stats->add_option("--alternative", stats_alternative, "two-sided | less | greater");

    // plot
    auto* plot = app.add_subcommand("plot", "Render a results CSV to SVG");
    std::string plot_results, plot_metric = "length", plot_out, plot_style = "bars";
    plot->add_option("--results", plot_results, "results CSV from bench")->required();
    plot->add_option("--metric", plot_metric, "metric to draw");
    plot->add_option("--out", plot_out, "output SVG")->required();
    plot->add_option("--style", plot_style, "bars | sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitSchema;
    }

    try {
        if (gen->parsed()) {
            const auto b = parse_numbers(gen_bounds, 6, "--bounds");
            const auto s = parse_numbers(gen_start, 3, "--start");
            const auto e = parse_numbers(gen_end, 3, "--end");
            const auto fs = parse_numbers(gen_fruit_size, 3, "--fruit-size");
            ScenarioSpec spec;
            spec.seed = gen_seed;
            spec.n_fruits = gen_fruits;
            spec.bounds_min = {b[0], b[2], b[4]};
            spec.bounds_max = {b[1], b[3], b[5]};
            spec.start = {s[0], s[1], s[2]};
            spec.end = {e[0], e[1], e[2]};
            spec.fruit_size = {fs[0], fs[1], fs[2]};
            spec.clearance_e = gen_clearance;
            if (!gen_zone.empty()) {
                const auto z = parse_numbers(gen_zone, 6, "--fruit-zone");
                spec.fruit_zone_min = Point3D{z[0], z[2], z[4]};
                spec.fruit_zone_max = Point3D{z[1], z[3], z[5]};
            }
            save_environment(generate_scenario(spec), gen_out);
            std::cout << "wrote " << gen_out << "\n";
            return kExitOk;
        }
        if (plan->parsed())
            return run_plan(plan_env, plan_algo, plan_flags, plan_out, plan_svg);
        if (project->parsed()) {
            save_environment_2d(project_to_xoz(load_environment(project_env)), project_out);
            std::cout << "wrote " << project_out << "\n";
            return kExitOk;
        }
        if (bench->parsed()) {
            const RunConfig cfg = resolve_config(bench_flags);
            const auto suite = load_suite(bench_suite);
            std::vector<Algo> algos;
            std::string token;
            std::stringstream stream(bench_algos);
            while (std::getline(stream, token, ',')) algos.push_back(algo_from_name(token));
            if (algos.empty())
                throw Error(ErrorCode::SchemaViolation, "--algos: no algorithms given");
            const auto records =
                run_trials(suite, algos, bench_trials, bench_seed, cfg.sweep, cfg.baseline);
            export_csv(records, bench_out);
            std::cout << "wrote " << records.size() << " records to " << bench_out << "\n";
            return kExitOk;
        }
        if (stats->parsed()) {
            std::vector<std::string> groups;
            std::string token;
            std::stringstream stream(stats_groups);
            while (std::getline(stream, token, ',')) groups.push_back(token);
            return run_stats(stats_results, stats_metric, stats_test, groups,
                             stats_alternative);
        }
        if (plot->parsed()) {
            if (plot_style != "bars" && plot_style != "sweep")
                throw Error(ErrorCode::SchemaViolation, "--style must be bars or sweep");
            emit_svg_plot(import_csv(plot_results), plot_metric, plot_out,
                          plot_style == "bars" ? PlotStyle::Bars : PlotStyle::Sweep);
            std::cout << "wrote " << plot_out << "\n";
            return kExitOk;
        }
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return exit_code_for(err);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitSchema;
    }
    return kExitOk;
}
