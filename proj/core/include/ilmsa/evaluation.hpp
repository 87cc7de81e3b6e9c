#pragma once

#include <vector>

#include "ilmsa/environment.hpp"
#include "ilmsa/geometry.hpp"

namespace ilmsa {

struct EvaluationWeights {
    double length = 0.4;
    double safety = 0.4;
    double smoothness = 0.2;
};

/// Reported clearance when the environment has no obstacles.
constexpr double kNoObstacleClearance = 1e9;

struct PathMetrics {
    double length = 0.0;          // mm
    double min_clearance = 0.0;   // mm, against uninflated geometry
    double smoothness = 0.0;      // summed turning angle, radians
    double score = 0.0;
};

double path_length(const std::vector<Point2D>& nodes);
double path_length(const std::vector<Point3D>& nodes);

/// Minimum over samples of the distance to the nearest obstacle boundary.
/// Negative when a sample is inside an obstacle.
double path_clearance(const std::vector<Point3D>& samples, const std::vector<Sbbox>& obstacles);
double path_clearance(const std::vector<Point2D>& samples,
                      const std::vector<Polygon2D>& obstacles);

/// Sum of turning angles at interior nodes, each in [0, pi]. Consecutive
/// duplicate nodes are dropped first.
double path_smoothness(const std::vector<Point2D>& nodes);
double path_smoothness(const std::vector<Point3D>& nodes);

/// Min-max normalizes each metric over the candidate set (constant metrics
/// normalize to 0), inverts clearance, and combines with the weights. Lower
/// is better. Order is preserved.
std::vector<double> score_candidates(const std::vector<PathMetrics>& metrics,
                                     const EvaluationWeights& weights);

/// Arc-length resampling that keeps every original vertex, so corners survive.
/// Used for clearance sampling.
std::vector<Point2D> densify_polyline(const std::vector<Point2D>& nodes, double spacing);
std::vector<Point3D> densify_polyline(const std::vector<Point3D>& nodes, double spacing);

/// Trajectory node count at a uniform spacing along the whole polyline,
/// independent of how finely the input happens to be sampled:
/// floor(length / spacing) + endpoints.
long long densified_node_count(const std::vector<Point2D>& nodes, double spacing);
long long densified_node_count(const std::vector<Point3D>& nodes, double spacing);

}  // namespace ilmsa
