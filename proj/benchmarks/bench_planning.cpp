#include <benchmark/benchmark.h>

#include "ilmsa/baselines.hpp"
#include "ilmsa/bench.hpp"
#include "ilmsa/planner3d.hpp"
#include "ilmsa/smoothing.hpp"

using namespace ilmsa;

namespace {

Environment scenario_with(int fruits, std::uint64_t seed = 77) {
    ScenarioSpec spec;
    spec.seed = seed;
    spec.n_fruits = fruits;
    spec.bounds_min = {0, 0, 0};
    spec.bounds_max = {500, 300, 500};
    spec.start = {40, 120, 280};
    spec.end = {465, 145, 330};
    return generate_scenario(spec);
}

}  // namespace

static void BM_SegmentsIntersect(benchmark::State& state) {
    const Segment2D a({0, 0}, {100, 80});
    const Segment2D b({0, 80}, {100, 0});
    for (auto _ : state) benchmark::DoNotOptimize(segments_intersect(a, b));
}
BENCHMARK(BM_SegmentsIntersect);

static void BM_DeBoor(benchmark::State& state) {
    std::vector<Point3D> cps;
    for (int i = 0; i < 12; ++i)
        cps.push_back({10.0 * i, 3.0 * (i % 4), 20.0 + 5.0 * (i % 3)});
    const auto knots = knot_vector(12, 3, true);
    double t = 0.0;
    for (auto _ : state) {
        t += 0.01;
        if (t > 1.0) t = 0.0;
        benchmark::DoNotOptimize(de_boor(knots, cps, 3, t));
    }
}
BENCHMARK(BM_DeBoor);

static void BM_GeneratePath2d(benchmark::State& state) {
    const Environment env = scenario_with(static_cast<int>(state.range(0)));
    const Environment2D flat = project_to_xoz(env);
    std::vector<Polygon2D> grown;
    for (const Obstacle2D& obs : flat.obstacles) grown.push_back(inflate_polygon(obs.polygon, 5.0));
    PlannerConfig config;
    config.bounds = Bounds2D{flat.bounds_min, flat.bounds_max};
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_path_2d(flat.start, flat.end, grown, config));
}
BENCHMARK(BM_GeneratePath2d)->Arg(4)->Arg(13)->Arg(20);

static void BM_Plan3d(benchmark::State& state) {
    const Environment env = scenario_with(static_cast<int>(state.range(0)));
    const SweepConfig config;
    for (auto _ : state) benchmark::DoNotOptimize(plan_3d(env, config));
}
BENCHMARK(BM_Plan3d)->Arg(4)->Arg(13)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_Rrt3d(benchmark::State& state) {
    const Environment env = scenario_with(static_cast<int>(state.range(0)));
    BaselineConfig config;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        config.rng_seed = ++seed;
        try {
            benchmark::DoNotOptimize(rrt_3d(env, config));
        } catch (const Error&) {
        }
    }
}
BENCHMARK(BM_Rrt3d)->Arg(4)->Arg(13)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
