#pragma once

#include <optional>
#include <vector>

#include "ilmsa/geometry.hpp"

namespace ilmsa {

struct Bounds2D {
    Point2D min;
    Point2D max;
};

enum class TieBreak { SmallerXThenZ };

struct PlannerConfig {
    double safe_distance_e = 5.0;
    int max_iter = 50;
    TieBreak tie_break = TieBreak::SmallerXThenZ;
    /// When set, detour nodes that fall outside are rejected.
    std::optional<Bounds2D> bounds;
};

/// Planar path. key_nodes holds the indices of nodes that were inserted to
/// avoid obstacles (everything except the two endpoints).
struct Path2D {
    std::vector<Point2D> nodes;
    std::vector<std::size_t> key_nodes;
    int iterations_used = 0;
};

/// True when the segment crosses a polygon edge or has an endpoint strictly
/// inside a polygon. Obstacles must already be inflated by the safe distance.
bool collision_detected(Point2D s, Point2D e, const std::vector<Polygon2D>& obstacles);
bool collision_detected(const Segment2D& seg, const std::vector<Polygon2D>& obstacles);

struct AvoidanceScan {
    bool collides = false;          // any obstacle edge crosses the segment
    std::vector<Point2D> vertices;  // candidate detour vertices, all obstacles
};

/// Collects, per obstacle, the minimum-z vertices whose x lies within the
/// segment's x-range and which are on or below the line through s and e.
/// Grazing vertices count as below: the edge test already flags them as
/// collisions, so they must be avoidable.
AvoidanceScan collision_avoiding(Point2D s, Point2D e, const std::vector<Polygon2D>& obstacles);

/// Argmax of distance to the line through s and e; ties go to the smaller x,
/// then the smaller z. Throws EmptyVertexSet.
Point2D max_distance_vertex(const std::vector<Point2D>& vertices, Point2D s, Point2D e);

/// Detour node: the vertex pushed straight down by the safe distance.
/// Throws OutOfBounds when the result leaves the configured bounds.
Point2D add_new_node(Point2D vertex, const PlannerConfig& config);

/// Iterative node expansion: every colliding segment contributes one detour
/// node per round until the polyline is collision-free.
Path2D generate_path_2d(Point2D start, Point2D end, const std::vector<Polygon2D>& obstacles,
                        const PlannerConfig& config);

}  // namespace ilmsa
