#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ilmsa/evaluation.hpp"
#include "ilmsa/rng.hpp"

using namespace ilmsa;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("path_length") {
    CHECK(path_length(std::vector<Point2D>{{0, 0}, {3, 4}}) == doctest::Approx(5.0));
    CHECK(path_length(std::vector<Point2D>{{0, 0}, {1, 0}, {1, 1}}) == doctest::Approx(2.0));
    CHECK(path_length(std::vector<Point2D>{{0, 0}, {2, 0}, {2, 2}, {0, 2}, {0, 0}}) ==
          doctest::Approx(8.0));
    CHECK_THROWS_AS(path_length(std::vector<Point2D>{{1, 1}}), Error);
}

TEST_CASE("path_length is invariant under rigid transforms") {
    Rng rng(41);
    for (int round = 0; round < 50; ++round) {
        std::vector<Point3D> nodes;
        for (int i = 0; i < 6; ++i)
            nodes.push_back({rng.uniform(0, 100), rng.uniform(0, 100), rng.uniform(0, 100)});
        const double base = path_length(nodes);

        const double angle = rng.uniform(0, 2 * kPi);
        const double c = std::cos(angle), s = std::sin(angle);
        const Point3D shift{rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(-50, 50)};
        std::vector<Point3D> moved;
        for (const Point3D& p : nodes)  // rotate about z, then translate
            moved.push_back({c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y,
                             p.z + shift.z});
        CHECK(path_length(moved) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("path_clearance") {
    SUBCASE("single point against a box face") {
        const std::vector<Sbbox> obstacles{{"f01", {10, 10, 10}, {20, 20, 20}, false}};
        CHECK(path_clearance(std::vector<Point3D>{{3, 15, 15}}, obstacles) ==
              doctest::Approx(7.0));
    }
    SUBCASE("no obstacles gives the sentinel") {
        CHECK(path_clearance(std::vector<Point3D>{{0, 0, 0}}, {}) == kNoObstacleClearance);
    }
    SUBCASE("worked-example path clears the square") {
        const std::vector<Polygon2D> obstacles{
            Polygon2D{{{40, 40}, {60, 40}, {60, 60}, {40, 60}}}};

        // The bottom segment sits exactly the safe distance below the square.
        const std::vector<Point2D> bottom{{40, 35}, {60, 35}};
        CHECK(path_clearance(densify_polyline(bottom, 1.0), obstacles) ==
              doctest::Approx(5.0).epsilon(1e-6));

        // The full path passes nearer the bottom corners on its diagonals:
        // min over t of |(40t, 15t - 5)| = sqrt(25 - 150^2 / (4 * 1825)).
        const std::vector<Point2D> nodes{{0, 50}, {40, 35}, {60, 35}, {100, 50}};
        const double analytic = std::sqrt(25.0 - 150.0 * 150.0 / (4.0 * 1825.0));
        const double clearance = path_clearance(densify_polyline(nodes, 1.0), obstacles);
        CHECK(clearance == doctest::Approx(analytic).epsilon(0.01));
        CHECK(clearance <= 5.0);
    }
    SUBCASE("points inside report negative clearance") {
        const std::vector<Sbbox> obstacles{{"f01", {0, 0, 0}, {10, 10, 10}, false}};
        CHECK(path_clearance(std::vector<Point3D>{{5, 5, 5}}, obstacles) < 0.0);
    }
}

TEST_CASE("path_smoothness") {
    CHECK(path_smoothness(std::vector<Point2D>{{0, 0}, {1, 1}, {2, 2}}) ==
          doctest::Approx(0.0));
    CHECK(path_smoothness(std::vector<Point2D>{{0, 0}, {1, 0}, {1, 1}}) ==
          doctest::Approx(kPi / 2));
    CHECK(path_smoothness(std::vector<Point2D>{{0, 0}, {1, 0}, {1, 1}, {2, 1}}) ==
          doctest::Approx(kPi));
    // duplicates are dropped before measuring turns
    CHECK(path_smoothness(std::vector<Point2D>{{0, 0}, {0, 0}, {1, 0}, {1, 0}, {1, 1}}) ==
          doctest::Approx(kPi / 2));
}

TEST_CASE("path_smoothness is scale invariant") {
    Rng rng(42);
    for (int round = 0; round < 50; ++round) {
        std::vector<Point2D> nodes;
        for (int i = 0; i < 7; ++i) nodes.push_back({rng.uniform(0, 100), rng.uniform(0, 100)});
        const double base = path_smoothness(nodes);
        const double scale = rng.uniform(0.1, 10.0);
        std::vector<Point2D> scaled;
        for (const Point2D& p : nodes) scaled.push_back({scale * p.x, scale * p.z});
        CHECK(path_smoothness(scaled) == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("score_candidates") {
    const EvaluationWeights weights;

    SUBCASE("identical candidates score identically") {
        const PathMetrics m{100.0, 10.0, 0.5, 0.0};
        const auto scores = score_candidates({m, m}, weights);
        CHECK(scores[0] == scores[1]);
    }
    SUBCASE("a dominating candidate scores strictly lower") {
        PathMetrics good{100.0, 20.0, 0.2, 0.0};
        PathMetrics bad{150.0, 10.0, 0.8, 0.0};
        const auto scores = score_candidates({good, bad}, weights);
        CHECK(scores[0] < scores[1]);
    }
    SUBCASE("length-only weights rank by raw length") {
        const EvaluationWeights length_only{1.0, 0.0, 0.0};
        std::vector<PathMetrics> metrics;
        Rng rng(43);
        for (int i = 0; i < 10; ++i)
            metrics.push_back({rng.uniform(100, 500), rng.uniform(0, 50), rng.uniform(0, 3), 0.0});
        const auto scores = score_candidates(metrics, length_only);
        for (std::size_t i = 0; i < metrics.size(); ++i)
            for (std::size_t j = 0; j < metrics.size(); ++j)
                if (metrics[i].length < metrics[j].length) CHECK(scores[i] < scores[j]);
    }
    SUBCASE("empty input") {
        CHECK_THROWS_AS(score_candidates({}, weights), Error);
    }
}

TEST_CASE("scores stay in [0, 1] for unit-sum weights") {
    Rng rng(44);
    std::vector<PathMetrics> metrics;
    for (int i = 0; i < 20; ++i)
        metrics.push_back({rng.uniform(100, 900), rng.uniform(0, 80), rng.uniform(0, 6), 0.0});
    for (double s : score_candidates(metrics, {})) {
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
    }
}

TEST_CASE("argmin is invariant under positive affine rescaling of one metric") {
    Rng rng(45);
    for (int round = 0; round < 30; ++round) {
        std::vector<PathMetrics> metrics;
        for (int i = 0; i < 8; ++i)
            metrics.push_back(
                {rng.uniform(100, 900), rng.uniform(0, 80), rng.uniform(0, 6), 0.0});
        const auto base = score_candidates(metrics, {});
        const std::size_t best =
            std::min_element(base.begin(), base.end()) - base.begin();

        const double a = rng.uniform(0.1, 10.0);
        const double b = rng.uniform(-100.0, 100.0);
        std::vector<PathMetrics> rescaled = metrics;
        for (PathMetrics& m : rescaled) m.length = a * m.length + b;
        const auto scores = score_candidates(rescaled, {});
        const std::size_t best_rescaled =
            std::min_element(scores.begin(), scores.end()) - scores.begin();
        CHECK(best == best_rescaled);
    }
}

TEST_CASE("densify keeps vertices and spacing") {
    const std::vector<Point2D> nodes{{0, 0}, {10, 0}, {10, 5}};
    const auto dense = densify_polyline(nodes, 1.0);
    CHECK(dense.size() == 16);  // 10 + 5 segments of 1 mm plus the start
    CHECK(dense.front() == nodes.front());
    CHECK(dense.back() == nodes.back());
    CHECK(std::find(dense.begin(), dense.end(), Point2D{10, 0}) != dense.end());
}
