#include "ilmsa/planner2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ilmsa {

namespace {

constexpr double kBelowLineTol = 1e-9;
constexpr double kVertexTieTol = 1e-9;
constexpr double kDuplicateNodeTol = 1e-6;

// Per-obstacle data reused across the planner's many segment queries.
struct PreparedObstacle {
    const Polygon2D* poly = nullptr;
    double lo_x = 0.0, hi_x = 0.0, lo_z = 0.0, hi_z = 0.0;
    double min_z = 0.0;
};

std::vector<PreparedObstacle> prepare_obstacles(const std::vector<Polygon2D>& obstacles) {
    std::vector<PreparedObstacle> out;
    out.reserve(obstacles.size());
    for (const Polygon2D& poly : obstacles) {
        if (poly.vertices.empty()) continue;
        PreparedObstacle p;
        p.poly = &poly;
        p.lo_x = p.hi_x = poly.vertices[0].x;
        p.lo_z = p.hi_z = poly.vertices[0].z;
        for (const Point2D& v : poly.vertices) {
            p.lo_x = std::min(p.lo_x, v.x);
            p.hi_x = std::max(p.hi_x, v.x);
            p.lo_z = std::min(p.lo_z, v.z);
            p.hi_z = std::max(p.hi_z, v.z);
        }
        p.min_z = p.lo_z;
        out.push_back(p);
    }
    return out;
}

// Cheap reject: the polygon cannot touch a segment whose bounding box misses
// the polygon's (with a whisker for the boundary tolerance).
bool bbox_overlaps(Point2D s, Point2D e, const PreparedObstacle& p) {
    constexpr double pad = 1e-6;
    return std::max(s.x, e.x) >= p.lo_x - pad && std::min(s.x, e.x) <= p.hi_x + pad &&
           std::max(s.z, e.z) >= p.lo_z - pad && std::min(s.z, e.z) <= p.hi_z + pad;
}

bool segment_hits_polygon_edge(Point2D s, Point2D e, const Polygon2D& poly) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    if (n < 2) return false;
    const std::size_t edge_count = (n == 2) ? 1 : n;
    for (std::size_t i = 0; i < edge_count; ++i)
        if (segments_intersect(s, e, v[i], v[(i + 1) % n])) return true;
    return false;
}

// On or below the line through s and e at the vertex's x. Vertical segments
// define no below side.
bool below_line(Point2D v, Point2D s, Point2D e) {
    const double dx = e.x - s.x;
    if (dx == 0.0) return false;
    const double t = (v.x - s.x) / dx;
    const double line_z = s.z + t * (e.z - s.z);
    return v.z <= line_z + kBelowLineTol;
}

bool near_existing(Point2D p, const std::vector<Point2D>& nodes) {
    for (const Point2D& n : nodes)
        if (distance(p, n) <= kDuplicateNodeTol) return true;
    return false;
}

}  // namespace

namespace {

bool collision_detected_prepared(Point2D s, Point2D e,
                                 const std::vector<PreparedObstacle>& prepared) {
    for (const PreparedObstacle& p : prepared) {
        if (!bbox_overlaps(s, e, p)) continue;
        if (segment_hits_polygon_edge(s, e, *p.poly)) return true;
        if (point_strictly_inside(s, *p.poly) || point_strictly_inside(e, *p.poly)) return true;
    }
    return false;
}

AvoidanceScan collision_avoiding_prepared(Point2D s, Point2D e,
                                          const std::vector<PreparedObstacle>& prepared) {
    AvoidanceScan scan;
    const double x_min = std::min(s.x, e.x);
    const double x_max = std::max(s.x, e.x);

    for (const PreparedObstacle& p : prepared) {
        if (p.hi_x >= x_min && p.lo_x <= x_max) {
            for (const Point2D& v : p.poly->vertices) {
                if (v.z > p.min_z + kVertexTieTol) continue;
                if (v.x < x_min || v.x > x_max) continue;
                if (!below_line(v, s, e)) continue;
                scan.vertices.push_back(v);
            }
        }
        // Unlike the early-out formulation, the scan finishes every obstacle
        // so the caller always sees the full candidate set.
        if (!scan.collides && bbox_overlaps(s, e, p) &&
            segment_hits_polygon_edge(s, e, *p.poly))
            scan.collides = true;
    }
    return scan;
}

// Recovery candidates when the minimum-z scan cannot make progress. Projected
// box hulls have tilted bottom edges, so the single lowest corner is not
// always enough: the segment into a dip node can keep clipping the obstacle
// near its other low corners. Offer every below-the-line vertex of the
// colliding obstacles (farthest from the line first), then the global lowest
// vertex as a last resort.
std::vector<Point2D> fallback_vertices_prepared(Point2D s, Point2D e,
                                                const std::vector<PreparedObstacle>& prepared) {
    const double x_min = std::min(s.x, e.x);
    const double x_max = std::max(s.x, e.x);
    std::vector<Point2D> below;
    std::optional<Point2D> lowest;
    for (const PreparedObstacle& p : prepared) {
        if (!bbox_overlaps(s, e, p)) continue;
        if (!segment_hits_polygon_edge(s, e, *p.poly) &&
            !point_strictly_inside(s, *p.poly) && !point_strictly_inside(e, *p.poly))
            continue;
        for (const Point2D& v : p.poly->vertices) {
            if (v.x >= x_min && v.x <= x_max && below_line(v, s, e)) below.push_back(v);
            if (!lowest || v.z < lowest->z || (v.z == lowest->z && v.x < lowest->x)) lowest = v;
        }
    }
    std::sort(below.begin(), below.end(), [&](Point2D a, Point2D b) {
        const double da = point_segment_line_distance(a, s, e);
        const double db = point_segment_line_distance(b, s, e);
        if (da != db) return da > db;
        if (a.x != b.x) return a.x < b.x;
        return a.z < b.z;
    });
    if (lowest) below.push_back(*lowest);
    return below;
}

}  // namespace

bool collision_detected(Point2D s, Point2D e, const std::vector<Polygon2D>& obstacles) {
    return collision_detected_prepared(s, e, prepare_obstacles(obstacles));
}

bool collision_detected(const Segment2D& seg, const std::vector<Polygon2D>& obstacles) {
    return collision_detected(seg.start, seg.end, obstacles);
}

AvoidanceScan collision_avoiding(Point2D s, Point2D e, const std::vector<Polygon2D>& obstacles) {
    return collision_avoiding_prepared(s, e, prepare_obstacles(obstacles));
}

Point2D max_distance_vertex(const std::vector<Point2D>& vertices, Point2D s, Point2D e) {
    if (vertices.empty()) throw Error(ErrorCode::EmptyVertexSet, "no avoidance vertices");
    Point2D best = vertices.front();
    double best_d = point_segment_line_distance(best, s, e);
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        const Point2D& v = vertices[i];
        const double d = point_segment_line_distance(v, s, e);
        if (d > best_d + kVertexTieTol) {
            best = v;
            best_d = d;
        } else if (d >= best_d - kVertexTieTol) {
            if (v.x < best.x || (v.x == best.x && v.z < best.z)) best = v;
        }
    }
    return best;
}

Point2D add_new_node(Point2D vertex, const PlannerConfig& config) {
    const Point2D node{vertex.x, vertex.z - config.safe_distance_e};
    if (config.bounds) {
        const Bounds2D& b = *config.bounds;
        if (node.x < b.min.x || node.x > b.max.x || node.z < b.min.z || node.z > b.max.z)
            throw Error(ErrorCode::OutOfBounds, "detour node outside environment bounds");
    }
    return node;
}

Path2D generate_path_2d(Point2D start, Point2D end, const std::vector<Polygon2D>& obstacles,
                        const PlannerConfig& config) {
    if (start == end) throw Error(ErrorCode::DegenerateSegment, "start equals end");
    for (const Polygon2D& poly : obstacles)
        if (locate_point_in_polygon(start, poly) != PointLocation::Outside ||
            locate_point_in_polygon(end, poly) != PointLocation::Outside)
            throw Error(ErrorCode::StartOrGoalBlocked, "start or end inside an inflated obstacle");

    const std::vector<PreparedObstacle> prepared = prepare_obstacles(obstacles);

    const Point2D dir = (1.0 / distance(start, end)) * (end - start);
    std::vector<Point2D> interior;

    auto assemble = [&](std::vector<Point2D> mid) {
        std::vector<Point2D> nodes;
        nodes.reserve(mid.size() + 2);
        nodes.push_back(start);
        std::sort(mid.begin(), mid.end(), [&](Point2D a, Point2D b) {
            const double ta = dot(a - start, dir);
            const double tb = dot(b - start, dir);
            if (ta != tb) return ta < tb;
            if (a.x != b.x) return a.x < b.x;
            return a.z < b.z;
        });
        nodes.insert(nodes.end(), mid.begin(), mid.end());
        nodes.push_back(end);
        return nodes;
    };

    Path2D path;
    std::vector<Point2D> nodes = assemble(interior);

    // Obstacles are static, so a segment once found clean stays clean; the
    // re-sorted path mostly repeats segments from earlier rounds.
    std::vector<std::pair<Point2D, Point2D>> known_clean;
    auto segment_clean = [&](Point2D a, Point2D b) {
        for (const auto& [ca, cb] : known_clean)
            if (ca == a && cb == b) return true;
        if (collision_detected_prepared(a, b, prepared)) return false;
        known_clean.emplace_back(a, b);
        return true;
    };

    for (int iter = 0; iter < config.max_iter; ++iter) {
        bool collision_found = false;
        std::vector<Point2D> pending;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            const Point2D a = nodes[i];
            const Point2D b = nodes[i + 1];
            if (segment_clean(a, b)) continue;
            collision_found = true;

            const AvoidanceScan scan = collision_avoiding_prepared(a, b, prepared);
            std::vector<Point2D> candidates;
            if (!scan.vertices.empty())
                candidates.push_back(max_distance_vertex(scan.vertices, a, b));
            const std::vector<Point2D> recovery = fallback_vertices_prepared(a, b, prepared);
            candidates.insert(candidates.end(), recovery.begin(), recovery.end());

            // First vertex whose offset node is fresh and in bounds wins.
            for (const Point2D& vertex : candidates) {
                Point2D node;
                try {
                    node = add_new_node(vertex, config);
                } catch (const Error& err) {
                    if (err.code() == ErrorCode::OutOfBounds) continue;  // no room below
                    throw;
                }
                if (!near_existing(node, nodes) && !near_existing(node, pending)) {
                    pending.push_back(node);
                    break;
                }
            }
        }

        if (!collision_found) {
            path.nodes = std::move(nodes);
            path.key_nodes.clear();
            for (std::size_t i = 1; i + 1 < path.nodes.size(); ++i) path.key_nodes.push_back(i);
            return path;
        }
        if (pending.empty())
            throw Error(ErrorCode::NoPathWithinBudget,
                        "collisions remain but no new detour node can be placed");

        interior.insert(interior.end(), pending.begin(), pending.end());
        nodes = assemble(interior);
        ++path.iterations_used;
    }

    // Budget exhausted; accept the path only if the last round left it clean.
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (!segment_clean(nodes[i], nodes[i + 1]))
            throw Error(ErrorCode::NoPathWithinBudget,
                        "max_iter reached with collisions remaining");
    path.nodes = std::move(nodes);
    path.key_nodes.clear();
    for (std::size_t i = 1; i + 1 < path.nodes.size(); ++i) path.key_nodes.push_back(i);
    return path;
}

}  // namespace ilmsa
