#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "ilmsa/bench.hpp"
#include "ilmsa/io_util.hpp"
#include "ilmsa/json_io.hpp"
#include "ilmsa/svg.hpp"

using namespace ilmsa;

namespace {

std::filesystem::path temp_file(const char* name) {
    const auto dir = std::filesystem::temp_directory_path() / "ilmsa_bench_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

Scenario small_scenario(std::uint64_t seed, int fruits = 4) {
    ScenarioSpec spec;
    spec.seed = seed;
    spec.n_fruits = fruits;
    spec.bounds_min = {0, 0, 0};
    spec.bounds_max = {500, 300, 500};
    spec.start = {40, 120, 280};
    spec.end = {465, 145, 330};
    return {"s" + std::to_string(seed), generate_scenario(spec)};
}

bool records_equal(const TrialRecord& a, const TrialRecord& b) {
    const bool score_equal = a.score.has_value() == b.score.has_value() &&
                             (!a.score || *a.score == *b.score);
    return a.scenario_id == b.scenario_id && a.seed == b.seed && a.algorithm == b.algorithm &&
           a.trial_index == b.trial_index && a.success == b.success &&
           a.node_count == b.node_count && a.key_node_count == b.key_node_count &&
           a.planning_time_ms == b.planning_time_ms && a.length_mm == b.length_mm &&
           a.clearance_mm == b.clearance_mm && a.smoothness_rad == b.smoothness_rad &&
           score_equal;
}

}  // namespace

TEST_CASE("algorithm names") {
    CHECK(algo_from_name("ilmsa3d") == Algo::Ilmsa3d);
    CHECK(algo_from_name("rrt3d-goalbias") == Algo::Rrt3d);
    CHECK(std::string(algo_report_label(Algo::Rrt3d)) == "rrt3d-goalbias");
    CHECK(std::string(algo_report_label(Algo::Lps)) == "lps");
    CHECK_THROWS_AS(algo_from_name("dijkstra"), Error);
    CHECK(algo_is_2d(Algo::Astar));
    CHECK_FALSE(algo_is_2d(Algo::Lps));
}

TEST_CASE("run_trials cardinality and determinism") {
    const std::vector<Scenario> suite{small_scenario(100)};
    const SweepConfig sweep;
    const BaselineConfig baseline;

    const auto records =
        run_trials(suite, {Algo::Ilmsa3d, Algo::Lps}, 5, 7, sweep, baseline);
    REQUIRE(records.size() == 10);

    // the deterministic planner repeats its geometry across trials
    for (std::size_t i = 1; i < 5; ++i) {
        CHECK(records[i].algorithm == "ilmsa3d");
        CHECK(records[i].success == records[0].success);
        if (records[0].success) {
            CHECK(records[i].length_mm == records[0].length_mm);
            CHECK(records[i].node_count == records[0].node_count);
        }
    }
    // seeds follow base_seed + trial
    CHECK(records[0].seed == 7);
    CHECK(records[4].seed == 11);
    CHECK(records[0].trial_index == 0);
}

TEST_CASE("failed trials become success=false records") {
    // start boxed in on all sides: every planner fails, nothing throws
    Environment env;
    env.bounds_min = {0, 0, 0};
    env.bounds_max = {500, 300, 500};
    env.start = {40, 120, 280};
    env.end = {465, 145, 330};
    env.obstacles.push_back({"cage", {50, 0.5, 0.5}, {70, 299.5, 499.5}, false});
    env.obstacles.push_back({"lid", {0.5, 0.5, 300}, {50, 299.5, 320}, false});
    const std::vector<Scenario> suite{{"caged", env}};

    const auto records = run_trials(suite, {Algo::Ilmsa3d, Algo::Rrt3d, Algo::Lps, Algo::Astar},
                                    1, 1, {}, {.max_samples = 500});
    REQUIRE(records.size() == 4);
    for (const TrialRecord& r : records) {
        CHECK_FALSE(r.success);
        CHECK(r.node_count == -1);
        CHECK(r.planning_time_ms >= 0.0);
    }
}

TEST_CASE("csv round trip is exact") {
    const std::vector<Scenario> suite{small_scenario(101)};
    auto records = run_trials(suite, {Algo::Ilmsa3d, Algo::Rrt3d, Algo::Astar}, 2, 3, {}, {});
    // splice in a synthetic failure row to exercise empty fields
    TrialRecord failed;
    failed.scenario_id = "synthetic, with comma";
    failed.seed = 99;
    failed.algorithm = "rrt3d-goalbias";
    failed.trial_index = 0;
    failed.success = false;
    failed.planning_time_ms = 12.5;
    records.push_back(failed);

    const auto path = temp_file("records.csv");
    export_csv(records, path);
    const auto loaded = import_csv(path);
    REQUIRE(loaded.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) CHECK(records_equal(records[i], loaded[i]));

    // 100 records -> 101 lines; here: records + header
    const std::string text = read_text(path);
    std::size_t lines = 0;
    for (char c : text) lines += c == '\n';
    CHECK(lines == records.size() + 1);
}

TEST_CASE("export_csv rejects empty input") {
    CHECK_THROWS_AS(export_csv({}, temp_file("empty.csv")), Error);
}

TEST_CASE("svg plots have the expected structure") {
    const std::vector<Scenario> suite{small_scenario(102), small_scenario(103, 6)};
    const auto records = run_trials(suite, {Algo::Ilmsa3d, Algo::Lps}, 2, 5, {}, {});

    SUBCASE("bars") {
        const auto path = temp_file("bars.svg");
        emit_svg_plot(records, "length", path, PlotStyle::Bars);
        const std::string svg = read_text(path);
        CHECK(svg.find("<svg") != std::string::npos);
        CHECK(svg.find("path length (mm)") != std::string::npos);
        CHECK(svg.find("<rect") != std::string::npos);
        CHECK(svg.find("ilmsa3d") != std::string::npos);
        CHECK(svg.find("lps") != std::string::npos);
    }
    SUBCASE("sweep lines") {
        const auto path = temp_file("sweep.svg");
        emit_svg_plot(records, "time", path, PlotStyle::Sweep);
        const std::string svg = read_text(path);
        CHECK(svg.find("<polyline") != std::string::npos);
        CHECK(svg.find("planning time (ms)") != std::string::npos);
        CHECK(svg.find("s102") != std::string::npos);
    }
    SUBCASE("empty input") {
        CHECK_THROWS_AS(emit_svg_plot({}, "length", temp_file("x.svg")), Error);
    }
}

TEST_CASE("suite files materialize generated and file-backed scenarios") {
    const auto dir = std::filesystem::temp_directory_path() / "ilmsa_bench_tests";
    std::filesystem::create_directories(dir);
    const Scenario base = small_scenario(104);
    save_environment(base.env, dir / "suite_env.json");

    const char* suite_json = R"({
      "version": 1,
      "scenarios": [
        {"id": "from-file", "env": "suite_env.json"},
        {"id": "generated", "generate": {
          "seed": 9, "fruits": 3,
          "bounds": {"min": [0,0,0], "max": [500,300,500]},
          "start": [40,120,280], "end": [465,145,330]}}
      ]
    })";
    write_text_atomic(dir / "suite.json", suite_json);

    const auto suite = load_suite(dir / "suite.json");
    REQUIRE(suite.size() == 2);
    CHECK(suite[0].id == "from-file");
    CHECK(suite[0].env == base.env);
    CHECK(suite[1].env.obstacles.size() == 3);
}

TEST_CASE("record_metric accessor") {
    TrialRecord r;
    r.length_mm = 123.0;
    r.node_count = 45;
    r.score = 0.25;
    CHECK(record_metric(r, "length") == 123.0);
    CHECK(record_metric(r, "length_mm") == 123.0);
    CHECK(record_metric(r, "nodes") == 45.0);
    CHECK(record_metric(r, "score") == 0.25);
    CHECK_THROWS_AS(record_metric(r, "speed"), Error);
}
