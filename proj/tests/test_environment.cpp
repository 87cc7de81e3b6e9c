#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "ilmsa/environment.hpp"

using namespace ilmsa;

namespace {

std::filesystem::path temp_file(const char* name) {
    const auto dir = std::filesystem::temp_directory_path() / "ilmsa_env_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

ScenarioSpec env2_spec(std::uint64_t seed) {
    ScenarioSpec spec;
    spec.seed = seed;
    spec.n_fruits = 13;
    spec.bounds_min = {0, 0, 0};
    spec.bounds_max = {500, 300, 500};
    spec.start = {40, 120, 280};
    spec.end = {465, 145, 330};
    return spec;
}

}  // namespace

TEST_CASE("minimal environment with no obstacles round trips") {
    Environment env;
    env.bounds_min = {0, 0, 0};
    env.bounds_max = {400, 300, 500};
    env.start = {40, 120, 280};
    env.end = {395, 145, 330};
    const auto path = temp_file("minimal.json");
    save_environment(env, path);
    const Environment loaded = load_environment(path);
    CHECK(loaded == env);
    CHECK(loaded.obstacles.empty());
}

TEST_CASE("start inside an obstacle fails validation with the obstacle id") {
    Environment env;
    env.bounds_min = {0, 0, 0};
    env.bounds_max = {400, 300, 500};
    env.start = {100, 100, 100};
    env.end = {395, 145, 330};
    env.obstacles.push_back({"f01", {80, 80, 80}, {120, 120, 500}, true});
    try {
        validate_environment(env);
        FAIL("expected InvariantViolation");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::InvariantViolation);
        CHECK(err.detail() == "f01");
    }
}

TEST_CASE("schema violations carry a field path") {
    const auto path = temp_file("broken.json");
    {
        std::ofstream out(path);
        out << R"({"version":1,"units":"mm","bounds":{"min":[0,0,0],"max":[400,300,500]},)"
            << R"("start":[40,120],"end":[395,145,330],"obstacles":[],"targets":[]})";
    }
    try {
        load_environment(path);
        FAIL("expected SchemaViolation");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::SchemaViolation);
        CHECK(std::string(err.what()).find("$.start") != std::string::npos);
    }
}

TEST_CASE("generated scenario saves and loads with equal structures") {
    const Environment env = generate_scenario(env2_spec(1));
    const auto path = temp_file("env2.json");
    save_environment(env, path);
    CHECK(load_environment(path) == env);
}

TEST_CASE("generation is deterministic and respects the invariants") {
    const Environment a = generate_scenario(env2_spec(7));
    const Environment b = generate_scenario(env2_spec(7));
    CHECK(a == b);
    CHECK(a.obstacles.size() == 13);
    CHECK(a.targets.size() == 13);

    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 11ULL, 42ULL}) {
        const Environment env = generate_scenario(env2_spec(seed));
        CHECK_NOTHROW(validate_environment(env));
        for (const Sbbox& box : env.obstacles) {
            CHECK(box.stem_extended);
            CHECK(box.max_corner.z == doctest::Approx(500.0));
        }
        // inflated boxes pairwise disjoint
        for (std::size_t i = 0; i < env.obstacles.size(); ++i)
            for (std::size_t j = i + 1; j < env.obstacles.size(); ++j) {
                const Sbbox gi = inflated(env.obstacles[i], 5.0);
                const Sbbox gj = inflated(env.obstacles[j], 5.0);
                CHECK_FALSE(boxes_intersect_closed(gi.min_corner, gi.max_corner, gj.min_corner,
                                                   gj.max_corner));
            }
    }
}

TEST_CASE("environment-1 style scenario") {
    ScenarioSpec spec;
    spec.seed = 1;
    spec.n_fruits = 5;
    spec.bounds_min = {0, 0, 0};
    spec.bounds_max = {400, 300, 500};
    spec.start = {40, 120, 280};
    spec.end = {395, 145, 330};
    const Environment env = generate_scenario(spec);
    CHECK(env.obstacles.size() == 5);
    CHECK_NOTHROW(validate_environment(env));
}

TEST_CASE("over-dense generation fails with PlacementFailure") {
    ScenarioSpec spec;
    spec.seed = 3;
    spec.n_fruits = 100;
    spec.bounds_min = {0, 0, 0};
    spec.bounds_max = {200, 100, 300};
    spec.start = {5, 50, 150};
    spec.end = {195, 50, 150};
    CHECK_THROWS_AS(generate_scenario(spec), Error);
}

TEST_CASE("extend_stem") {
    Sbbox box{"f01", {100, 50, 300}, {140, 90, 340}, false};
    SUBCASE("extends to the ceiling") {
        const Sbbox out = extend_stem(box, 500);
        CHECK(out.max_corner.z == 500);
        CHECK(out.min_corner == box.min_corner);
        CHECK(out.max_corner.x == box.max_corner.x);
        CHECK(out.stem_extended);
    }
    SUBCASE("extension to the current top only sets the flag") {
        const Sbbox out = extend_stem(box, 340);
        CHECK(out.max_corner.z == 340);
        CHECK(out.stem_extended);
    }
    SUBCASE("shrinking is rejected") {
        CHECK_THROWS_AS(extend_stem(box, 250), Error);
    }
}

TEST_CASE("xoz projection") {
    Environment env;
    env.bounds_min = {0, 0, 0};
    env.bounds_max = {500, 300, 500};
    env.start = {40, 120, 280};
    env.end = {465, 145, 330};
    env.obstacles.push_back({"f01", {100, 50, 200}, {140, 90, 500}, true});
    env.obstacles.push_back({"f02", {100, 200, 200}, {140, 240, 500}, true});  // same footprint in x-z

    const Environment2D flat = project_to_xoz(env);
    CHECK(flat.start == Point2D{40, 280});
    CHECK(flat.end == Point2D{465, 330});
    CHECK(flat.obstacles.size() == 2);
    const Polygon2D expected{{{100, 200}, {140, 200}, {140, 500}, {100, 500}}};
    CHECK(flat.obstacles[0].polygon == expected);
    CHECK(flat.obstacles[1].polygon == expected);  // y collapses
}

TEST_CASE("projection preserves count and x/z extents") {
    const Environment env = generate_scenario(env2_spec(5));
    const Environment2D flat = project_to_xoz(env);
    REQUIRE(flat.obstacles.size() == env.obstacles.size());
    for (std::size_t i = 0; i < env.obstacles.size(); ++i) {
        const auto& poly = flat.obstacles[i].polygon.vertices;
        double min_x = poly[0].x, max_x = poly[0].x, min_z = poly[0].z, max_z = poly[0].z;
        for (const Point2D& v : poly) {
            min_x = std::min(min_x, v.x);
            max_x = std::max(max_x, v.x);
            min_z = std::min(min_z, v.z);
            max_z = std::max(max_z, v.z);
        }
        CHECK(min_x == env.obstacles[i].min_corner.x);
        CHECK(max_x == env.obstacles[i].max_corner.x);
        CHECK(min_z == env.obstacles[i].min_corner.z);
        CHECK(max_z == env.obstacles[i].max_corner.z);
    }
}

TEST_CASE("harvest sequence") {
    CHECK(harvest_sequence({{0, 0, 330}, {0, 0, 280}, {0, 0, 410}}) ==
          std::vector<Point3D>{{0, 0, 280}, {0, 0, 330}, {0, 0, 410}});
    CHECK(harvest_sequence({}).empty());
    CHECK(harvest_sequence({{5, 0, 100}, {2, 0, 100}}) ==
          std::vector<Point3D>{{2, 0, 100}, {5, 0, 100}});
}

TEST_CASE("harvest sequence is an idempotent permutation") {
    const Environment env = generate_scenario(env2_spec(9));
    std::vector<Point3D> centers;
    for (const FruitTarget& t : env.targets) centers.push_back(t.center);
    const std::vector<Point3D> once = harvest_sequence(centers);
    CHECK(once.size() == centers.size());
    for (const Point3D& c : centers)
        CHECK(std::count(once.begin(), once.end(), c) ==
              std::count(centers.begin(), centers.end(), c));
    CHECK(harvest_sequence(once) == once);
}

TEST_CASE("2d environment files round trip") {
    Environment2D flat;
    flat.bounds_min = {0, 0};
    flat.bounds_max = {500, 500};
    flat.start = {40, 280};
    flat.end = {465, 330};
    flat.obstacles.push_back(
        {"f01", Polygon2D{{{100, 250}, {140, 250}, {140, 500}, {100, 500}}}});
    flat.obstacles.push_back(
        {"f02", Polygon2D{{{300, 300}, {340, 300}, {340, 500}, {300, 500}}}});
    const auto path = temp_file("env2d.json");
    save_environment_2d(flat, path);
    CHECK(load_environment_2d(path) == flat);
    CHECK(environment_file_is_2d(path));

    const auto path3 = temp_file("env3d.json");
    save_environment(generate_scenario(env2_spec(4)), path3);
    CHECK_FALSE(environment_file_is_2d(path3));
}

TEST_CASE("polygon inflation is an exact rectangle dilation") {
    const Polygon2D rect{{{10, 10}, {20, 10}, {20, 30}, {10, 30}}};
    const Polygon2D grown = inflate_polygon(rect, 5.0);
    CHECK(grown.vertices.size() == 4);
    CHECK(locate_point_in_polygon({5.5, 5.5}, grown) == PointLocation::Inside);
    CHECK(locate_point_in_polygon({4.5, 5.5}, grown) == PointLocation::Outside);
    CHECK(locate_point_in_polygon({24.5, 34.5}, grown) == PointLocation::Inside);
}
