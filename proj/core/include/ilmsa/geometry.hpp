#pragma once

#include <cmath>
#include <vector>

#include "ilmsa/errors.hpp"

namespace ilmsa {

// All coordinates are millimetres. 2D points live in a vertical plane and use
// (x, z) with z pointing up, matching the planar planner's "below" convention.
struct Point2D {
    double x = 0.0;
    double z = 0.0;

    bool operator==(const Point2D&) const = default;
};

struct Point3D {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool operator==(const Point3D&) const = default;
};

inline Point2D operator+(Point2D a, Point2D b) { return {a.x + b.x, a.z + b.z}; }
inline Point2D operator-(Point2D a, Point2D b) { return {a.x - b.x, a.z - b.z}; }
inline Point2D operator*(double s, Point2D p) { return {s * p.x, s * p.z}; }
inline double dot(Point2D a, Point2D b) { return a.x * b.x + a.z * b.z; }
inline double cross(Point2D a, Point2D b) { return a.x * b.z - a.z * b.x; }
inline double norm(Point2D p) { return std::sqrt(dot(p, p)); }
inline double distance(Point2D a, Point2D b) { return norm(a - b); }

inline Point3D operator+(Point3D a, Point3D b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Point3D operator-(Point3D a, Point3D b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Point3D operator*(double s, Point3D p) { return {s * p.x, s * p.y, s * p.z}; }
inline double dot(Point3D a, Point3D b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Point3D cross(Point3D a, Point3D b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Point3D p) { return std::sqrt(dot(p, p)); }
inline double distance(Point3D a, Point3D b) { return norm(a - b); }
Point3D normalized(Point3D p);

bool is_finite(Point2D p);
bool is_finite(Point3D p);

/// Non-degenerate segment; construction rejects equal endpoints.
struct Segment2D {
    Segment2D(Point2D s, Point2D e);
    Point2D start;
    Point2D end;
};

struct Segment3D {
    Segment3D(Point3D s, Point3D e);
    Point3D start;
    Point3D end;
};

/// Simple polygon, vertices in counter-clockwise order. Two-vertex instances
/// model degenerate (segment) obstacles and carry a single edge.
struct Polygon2D {
    std::vector<Point2D> vertices;

    bool operator==(const Polygon2D&) const = default;
};

enum class PointLocation { Outside, OnBoundary, Inside };

/// Counter-clockwise orientation predicate. Strict: collinear triples are false.
bool ccw(Point2D a, Point2D b, Point2D c);

bool segments_intersect(const Segment2D& ab, const Segment2D& cd);
bool segments_intersect(Point2D a, Point2D b, Point2D c, Point2D d);

/// Perpendicular distance from v to the infinite line through s and e.
double point_segment_line_distance(Point2D v, Point2D s, Point2D e);

/// Distance from p to the finite segment [a, b].
double point_segment_distance(Point2D p, Point2D a, Point2D b);

PointLocation locate_point_in_polygon(Point2D p, const Polygon2D& poly);
bool point_strictly_inside(Point2D p, const Polygon2D& poly);

/// Unsigned distance from p to the polygon boundary (min over edges).
double point_polygon_boundary_distance(Point2D p, const Polygon2D& poly);

/// Counter-clockwise convex hull with collinear interior points removed.
/// Throws DegenerateHull for fewer than 3 distinct points or all-collinear input.
Polygon2D convex_hull_2d(std::vector<Point2D> points);

/// Plane through two points at a sweep angle, with an in-plane orthonormal
/// frame (u along start->end, v = normal x u). (a,b,c) is unit length.
struct Plane {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double theta_deg = 0.0;
    Point3D frame_origin;
    Point3D u_axis;
    Point3D v_axis;

    double signed_offset(Point3D p) const { return a * p.x + b * p.y + c * p.z + d; }
    Point3D normal() const { return {a, b, c}; }
};

Plane build_plane(Point3D start, Point3D end, double theta_deg);
Point3D project_point(const Plane& plane, Point3D p);

/// Chart between the plane and its (u, v) coordinates. to_plane_coords requires
/// the point to satisfy the plane equation within 1e-6 mm.
Point2D to_plane_coords(const Plane& plane, Point3D p_on_plane);
Point3D from_plane_coords(const Plane& plane, Point2D q);

}  // namespace ilmsa
