#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ilmsa/environment.hpp"
#include "ilmsa/evaluation.hpp"
#include "ilmsa/geometry.hpp"
#include "ilmsa/planner2d.hpp"
#include "ilmsa/smoothing.hpp"

namespace ilmsa {

struct SweepConfig {
    double delta_theta_deg = 5.0;  // in (0, 90]
    PlannerConfig planner;
    EvaluationWeights weights;
    SplineConfig spline;
};

struct PlaneCandidate {
    Plane plane;
    Path2D raw_path;                  // in plane coordinates
    std::vector<Point3D> lifted_path;
    std::vector<Point3D> smoothed;    // equals lifted_path when smoothing was rejected
    bool smoothing_applied = false;
    bool feasible = false;
    std::string failure_reason;
    PathMetrics metrics;
    double score = 0.0;
};

struct Path3D {
    std::vector<Point3D> nodes;
    std::vector<std::size_t> key_nodes;
    std::vector<Point3D> smoothed;
    std::optional<double> plane_theta_deg;
};

struct SweepResult {
    Path3D best;
    PathMetrics best_metrics;
    double best_score = 0.0;
    std::size_t best_index = 0;
    std::vector<PlaneCandidate> candidates;
};

/// Projects each box's 8 corners onto the plane and reduces them to a convex
/// polygon in plane coordinates. A degenerate projection becomes a two-vertex
/// segment obstacle. Output order matches input order.
std::vector<Polygon2D> project_obstacles_on_plane(const Plane& plane,
                                                  const std::vector<Sbbox>& obstacles);

/// Runs the planar planner on one swept plane. Failures are encoded in the
/// candidate, never thrown.
PlaneCandidate plan_on_plane(const Environment& env, double theta_deg, const SweepConfig& config);

/// Full sweep over theta in [0, 180): plans per plane, smooths, scores, and
/// returns the minimum-score candidate. Throws NoFeasiblePlane when every
/// plane fails, StartOrGoalBlocked when an endpoint is inside an obstacle.
SweepResult plan_3d(const Environment& env, const SweepConfig& config);

}  // namespace ilmsa
