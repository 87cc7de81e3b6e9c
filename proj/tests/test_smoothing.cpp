#include <doctest.h>

#include <cmath>

#include "ilmsa/rng.hpp"
#include "ilmsa/smoothing.hpp"
#include "oracles.hpp"

using namespace ilmsa;

TEST_CASE("knot_vector") {
    CHECK(knot_vector(4, 3, true) == std::vector<double>{0, 0, 0, 0, 1, 1, 1, 1});
    CHECK(knot_vector(5, 3, true) == std::vector<double>{0, 0, 0, 0, 0.5, 1, 1, 1, 1});
    CHECK_THROWS_AS(knot_vector(3, 3, true), Error);
    CHECK(knot_vector(5, 2, true).size() == 8);
}

TEST_CASE("de_boor") {
    SUBCASE("identical control points collapse to that point") {
        const std::vector<Point3D> cps(5, Point3D{3, 4, 5});
        const auto knots = knot_vector(5, 3, true);
        for (double t : {0.0, 0.25, 0.5, 0.99, 1.0}) {
            const Point3D p = de_boor(knots, cps, 3, t);
            CHECK(distance(p, {3, 4, 5}) < 1e-12);
        }
    }
    SUBCASE("clamped spline interpolates the first control point at t = 0") {
        const std::vector<Point3D> cps{{0, 0, 0}, {10, 5, 0}, {20, -5, 3}, {30, 0, 1}};
        const auto knots = knot_vector(4, 3, true);
        CHECK(distance(de_boor(knots, cps, 3, 0.0), cps.front()) < 1e-12);
        CHECK(distance(de_boor(knots, cps, 3, 1.0), cps.back()) < 1e-12);
    }
    SUBCASE("matches the basis-function summation oracle") {
        Rng rng(31);
        for (int round = 0; round < 20; ++round) {
            std::vector<Point3D> cps;
            const int n = 4 + static_cast<int>(rng.uniform_index(6));
            for (int i = 0; i < n; ++i)
                cps.push_back({rng.uniform(0, 400), rng.uniform(0, 300), rng.uniform(0, 500)});
            const auto knots = knot_vector(n, 3, true);
            for (int k = 0; k < 25; ++k) {
                const double t = rng.uniform();
                const Point3D direct = de_boor(knots, cps, 3, t);
                const Point3D summed = oracles::spline_point_by_basis(knots, cps, 3, t);
                CHECK(distance(direct, summed) < 1e-9);
            }
        }
    }
    SUBCASE("parameter range is enforced") {
        const std::vector<Point3D> cps{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}};
        const auto knots = knot_vector(4, 3, true);
        CHECK_THROWS_AS(de_boor(knots, cps, 3, -0.01), Error);
        CHECK_THROWS_AS(de_boor(knots, cps, 3, 1.01), Error);
    }
}

TEST_CASE("generate_bspline_3d") {
    SUBCASE("collinear control points stay on the line") {
        std::vector<Point3D> cps;
        for (int i = 0; i < 6; ++i) cps.push_back({10.0 * i, 5.0 * i, 2.0 * i});
        const auto samples = generate_bspline_3d(cps);
        const Point3D dir = normalized(cps.back() - cps.front());
        for (const Point3D& p : samples) {
            const Point3D rel = p - cps.front();
            const Point3D off = rel - dot(rel, dir) * dir;
            CHECK(norm(off) < 1e-9);
        }
    }
    SUBCASE("worked-example path lifted to 3D") {
        const std::vector<Point3D> cps{{0, 0, 50}, {40, 0, 35}, {60, 0, 35}, {100, 0, 50}};
        const auto samples = generate_bspline_3d(cps);
        CHECK(samples.size() == 20);  // one span, 20 samples
        CHECK(distance(samples.front(), cps.front()) < 1e-9);
        CHECK(distance(samples.back(), cps.back()) < 1e-9);
    }
    SUBCASE("two control points pass through unchanged") {
        const std::vector<Point3D> cps{{0, 0, 0}, {10, 0, 0}};
        CHECK(generate_bspline_3d(cps) == cps);
    }
    SUBCASE("sample count is spans x samples_per_segment") {
        Rng rng(32);
        for (int n : {4, 5, 7, 12}) {
            std::vector<Point3D> cps;
            for (int i = 0; i < n; ++i)
                cps.push_back({rng.uniform(0, 100), rng.uniform(0, 100), rng.uniform(0, 100)});
            const auto samples = generate_bspline_3d(cps);
            CHECK(samples.size() == static_cast<std::size_t>(n - 3) * 20);
        }
    }
}

TEST_CASE("clamped endpoint interpolation on random control polygons") {
    Rng rng(33);
    for (int round = 0; round < 300; ++round) {
        std::vector<Point3D> cps;
        const int n = 4 + static_cast<int>(rng.uniform_index(8));
        for (int i = 0; i < n; ++i)
            cps.push_back({rng.uniform(0, 400), rng.uniform(0, 300), rng.uniform(0, 500)});
        const auto samples = generate_bspline_3d(cps);
        CHECK(distance(samples.front(), cps.front()) < 1e-9);
        CHECK(distance(samples.back(), cps.back()) < 1e-9);
    }
}

TEST_CASE("samples lie in the convex hull of the active control points") {
    // The basis values are the barycentric weights: non-negative, sum to one,
    // and reproduce the sample.
    Rng rng(34);
    std::vector<Point3D> cps;
    for (int i = 0; i < 8; ++i)
        cps.push_back({rng.uniform(0, 400), rng.uniform(0, 300), rng.uniform(0, 500)});
    const auto knots = knot_vector(8, 3, true);
    for (int k = 0; k < 200; ++k) {
        const double t = rng.uniform();
        const Point3D sample = de_boor(knots, cps, 3, t);
        double sum = 0.0;
        Point3D reconstructed{0, 0, 0};
        for (std::size_t i = 0; i < cps.size(); ++i) {
            const double w = oracles::basis_function(knots, i, 3, t);
            CHECK(w >= -1e-12);
            sum += w;
            reconstructed = reconstructed + w * cps[i];
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(distance(sample, reconstructed) < 1e-9);
    }
}

TEST_CASE("validate_smoothed") {
    SUBCASE("straight line in free space") {
        const std::vector<Point3D> samples{{0, 0, 0}, {100, 0, 0}};
        CHECK(validate_smoothed(samples, {}, 5.0));
    }
    SUBCASE("spline cutting a corner the polyline cleared") {
        // Control polygon wraps the inflated corner (40, 60); the cubic pulls
        // inside. The box below inflates to [40,60]x[40,60] in x-z.
        const std::vector<Point3D> cps{
            {20, 0, 20}, {35, 0, 35}, {35, 0, 65}, {65, 0, 65}, {80, 0, 80}};
        const std::vector<Sbbox> obstacles{
            {"f01", {45, -10, 45}, {55, 10, 55}, false}};

        const std::vector<Sbbox> grown{inflated(obstacles[0], 5.0)};
        CHECK_FALSE(oracles::path_collides_sampled_3d(cps, grown));  // polyline is safe

        const auto samples = generate_bspline_3d(cps);
        CHECK_FALSE(validate_smoothed(samples, obstacles, 5.0));
        CHECK(oracles::path_collides_sampled_3d(samples, grown));  // and the oracle agrees
    }
    SUBCASE("empty obstacle list") {
        const auto samples = generate_bspline_3d(
            {{0, 0, 0}, {10, 0, 30}, {20, 0, -10}, {30, 0, 20}});
        CHECK(validate_smoothed(samples, {}, 5.0));
    }
}
