#include "ilmsa/planner3d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ilmsa {

namespace {

constexpr double kRevalidateStep = 0.5;

// Two-point fallback when the projected corners collapse onto a line: the
// extreme pair still carries the edge for intersection tests.
Polygon2D degenerate_segment_polygon(const std::vector<Point2D>& points) {
    Point2D lo = points.front();
    Point2D hi = points.front();
    auto less = [](Point2D a, Point2D b) { return a.x < b.x || (a.x == b.x && a.z < b.z); };
    for (const Point2D& p : points) {
        if (less(p, lo)) lo = p;
        if (less(hi, p)) hi = p;
    }
    if (lo == hi) throw Error(ErrorCode::DegenerateHull, "obstacle projects to a point");
    return Polygon2D{{lo, hi}};
}

bool lifted_segment_clear(Point3D a, Point3D b, const std::vector<Sbbox>& inflated_boxes) {
    // Probe only the boxes whose volume the segment's bounding box touches.
    const Point3D seg_lo{std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)};
    const Point3D seg_hi{std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)};
    std::vector<const Sbbox*> nearby;
    for (const Sbbox& box : inflated_boxes)
        if (boxes_intersect_closed(seg_lo, seg_hi, box.min_corner, box.max_corner))
            nearby.push_back(&box);
    if (nearby.empty()) return true;

    const double len = distance(a, b);
    const int steps = std::max(1, static_cast<int>(std::ceil(len / kRevalidateStep)));
    for (int i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / steps;
        const Point3D p = a + t * (b - a);
        for (const Sbbox* box : nearby)
            if (point_in_box_strict(p, box->min_corner, box->max_corner)) return false;
    }
    return true;
}

}  // namespace

std::vector<Polygon2D> project_obstacles_on_plane(const Plane& plane,
                                                  const std::vector<Sbbox>& obstacles) {
    std::vector<Polygon2D> projected;
    projected.reserve(obstacles.size());
    for (const Sbbox& box : obstacles) {
        std::vector<Point2D> corners;
        corners.reserve(8);
        for (const Point3D& c : box_corners(box))
            corners.push_back(to_plane_coords(plane, project_point(plane, c)));
        try {
            projected.push_back(convex_hull_2d(corners));
        } catch (const Error& err) {
            if (err.code() != ErrorCode::DegenerateHull) throw;
            projected.push_back(degenerate_segment_polygon(corners));
        }
    }
    return projected;
}

PlaneCandidate plan_on_plane(const Environment& env, double theta_deg,
                             const SweepConfig& config) {
    PlaneCandidate cand;
    cand.plane = build_plane(env.start, env.end, theta_deg);

    const double e = config.planner.safe_distance_e;
    std::vector<Sbbox> grown;
    grown.reserve(env.obstacles.size());
    for (const Sbbox& box : env.obstacles) grown.push_back(inflated(box, e));

    const std::vector<Polygon2D> projected = project_obstacles_on_plane(cand.plane, grown);

    // Conservative in-plane bounds: the (u, v) interval hull of the projected
    // bounds corners. The lifted nodes are re-checked against the true box.
    Bounds2D plane_bounds{{std::numeric_limits<double>::infinity(),
                           std::numeric_limits<double>::infinity()},
                          {-std::numeric_limits<double>::infinity(),
                           -std::numeric_limits<double>::infinity()}};
    Sbbox bounds_box;
    bounds_box.min_corner = env.bounds_min;
    bounds_box.max_corner = env.bounds_max;
    for (const Point3D& c : box_corners(bounds_box)) {
        const Point2D q = to_plane_coords(cand.plane, project_point(cand.plane, c));
        plane_bounds.min.x = std::min(plane_bounds.min.x, q.x);
        plane_bounds.min.z = std::min(plane_bounds.min.z, q.z);
        plane_bounds.max.x = std::max(plane_bounds.max.x, q.x);
        plane_bounds.max.z = std::max(plane_bounds.max.z, q.z);
    }

    PlannerConfig planner_config = config.planner;
    planner_config.bounds = plane_bounds;

    const Point2D start2 = to_plane_coords(cand.plane, env.start);
    const Point2D end2 = to_plane_coords(cand.plane, project_point(cand.plane, env.end));

    try {
        cand.raw_path = generate_path_2d(start2, end2, projected, planner_config);
    } catch (const Error& err) {
        cand.failure_reason = error_code_name(err.code());
        return cand;
    }

    cand.lifted_path.reserve(cand.raw_path.nodes.size());
    for (const Point2D& q : cand.raw_path.nodes)
        cand.lifted_path.push_back(from_plane_coords(cand.plane, q));

    for (const Point3D& p : cand.lifted_path) {
        const Point3D slack{1e-9, 1e-9, 1e-9};
        if (!point_in_box_closed(p, env.bounds_min - slack, env.bounds_max + slack)) {
            cand.failure_reason = error_code_name(ErrorCode::OutOfBounds);
            cand.lifted_path.clear();
            return cand;
        }
    }

    // Planning happened on projections; confirm the lifted polyline against
    // the true 3D boxes as well.
    for (std::size_t i = 0; i + 1 < cand.lifted_path.size(); ++i) {
        if (!lifted_segment_clear(cand.lifted_path[i], cand.lifted_path[i + 1], grown)) {
            cand.failure_reason = "LiftedPathCollides";
            cand.lifted_path.clear();
            return cand;
        }
    }

    cand.feasible = true;
    return cand;
}

SweepResult plan_3d(const Environment& env, const SweepConfig& config) {
    if (config.delta_theta_deg <= 0.0 || config.delta_theta_deg > 90.0)
        throw std::invalid_argument("delta_theta_deg must be in (0, 90]");
    if (auto blocked = find_blocking_obstacle(env, config.planner.safe_distance_e))
        throw Error(ErrorCode::StartOrGoalBlocked,
                    blocked->first + " inside inflated obstacle " + blocked->second,
                    blocked->second);

    SweepResult result;
    for (double theta = 0.0; theta < 180.0; theta += config.delta_theta_deg)
        result.candidates.push_back(plan_on_plane(env, theta, config));

    std::vector<std::size_t> feasible;
    std::vector<PathMetrics> metrics;
    for (std::size_t i = 0; i < result.candidates.size(); ++i) {
        PlaneCandidate& cand = result.candidates[i];
        if (!cand.feasible) continue;

        cand.smoothed = generate_bspline_3d(cand.lifted_path, config.spline);
        cand.smoothing_applied =
            validate_smoothed(cand.smoothed, env.obstacles, config.planner.safe_distance_e);
        if (!cand.smoothing_applied) cand.smoothed = cand.lifted_path;

        const std::vector<Point3D>& geometry = cand.smoothed;
        cand.metrics.length = path_length(geometry);
        const std::vector<Point3D> clearance_samples =
            cand.smoothing_applied ? geometry : densify_polyline(cand.lifted_path, 1.0);
        cand.metrics.min_clearance = path_clearance(clearance_samples, env.obstacles);
        cand.metrics.smoothness = path_smoothness(geometry);

        feasible.push_back(i);
        metrics.push_back(cand.metrics);
    }
    if (feasible.empty())
        throw Error(ErrorCode::NoFeasiblePlane, "no swept plane produced a feasible path");

    const std::vector<double> scores = score_candidates(metrics, config.weights);
    std::size_t best = 0;
    for (std::size_t i = 0; i < feasible.size(); ++i) {
        result.candidates[feasible[i]].score = scores[i];
        result.candidates[feasible[i]].metrics.score = scores[i];
        if (scores[i] < scores[best]) best = i;
    }

    const std::size_t best_index = feasible[best];
    const PlaneCandidate& winner = result.candidates[best_index];
    result.best_index = best_index;
    result.best_score = scores[best];
    result.best_metrics = winner.metrics;
    result.best.nodes = winner.lifted_path;
    result.best.key_nodes = winner.raw_path.key_nodes;
    result.best.smoothed = winner.smoothed;
    result.best.plane_theta_deg = winner.plane.theta_deg;
    return result;
}

}  // namespace ilmsa
