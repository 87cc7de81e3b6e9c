#include "ilmsa/geometry.hpp"

#include <algorithm>
#include <limits>

namespace ilmsa {

namespace {

constexpr double kBoundaryTol = 1e-9;

}  // namespace

Point3D normalized(Point3D p) {
    double n = norm(p);
    if (n == 0.0) throw Error(ErrorCode::DegenerateSegment, "cannot normalize zero vector");
    return (1.0 / n) * p;
}

bool is_finite(Point2D p) { return std::isfinite(p.x) && std::isfinite(p.z); }
bool is_finite(Point3D p) { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z); }

Segment2D::Segment2D(Point2D s, Point2D e) : start(s), end(e) {
    if (s == e) throw Error(ErrorCode::DegenerateSegment, "zero-length segment");
}

Segment3D::Segment3D(Point3D s, Point3D e) : start(s), end(e) {
    if (s == e) throw Error(ErrorCode::DegenerateSegment, "zero-length segment");
}

bool ccw(Point2D a, Point2D b, Point2D c) {
    return (c.z - a.z) * (b.x - a.x) > (b.z - a.z) * (c.x - a.x);
}

bool segments_intersect(Point2D a, Point2D b, Point2D c, Point2D d) {
    return ccw(a, c, d) != ccw(b, c, d) && ccw(a, b, c) != ccw(a, b, d);
}

bool segments_intersect(const Segment2D& ab, const Segment2D& cd) {
    return segments_intersect(ab.start, ab.end, cd.start, cd.end);
}

double point_segment_line_distance(Point2D v, Point2D s, Point2D e) {
    if (s == e) throw Error(ErrorCode::DegenerateSegment, "line through coincident points");
    const double num =
        std::abs((e.z - s.z) * v.x - (e.x - s.x) * v.z + e.x * s.z - e.z * s.x);
    const double den = std::sqrt((e.z - s.z) * (e.z - s.z) + (e.x - s.x) * (e.x - s.x));
    return num / den;
}

namespace {

double point_segment_distance_sq(Point2D p, Point2D a, Point2D b) {
    const Point2D ab = b - a;
    const double len2 = dot(ab, ab);
    const Point2D ap = p - a;
    if (len2 == 0.0) return dot(ap, ap);
    const double t = std::clamp(dot(ap, ab) / len2, 0.0, 1.0);
    const Point2D diff = ap - t * ab;
    return dot(diff, diff);
}

}  // namespace

double point_segment_distance(Point2D p, Point2D a, Point2D b) {
    return std::sqrt(point_segment_distance_sq(p, a, b));
}

PointLocation locate_point_in_polygon(Point2D p, const Polygon2D& poly) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    if (n < 2) return PointLocation::Outside;

    const std::size_t edge_count = (n == 2) ? 1 : n;
    for (std::size_t i = 0; i < edge_count; ++i) {
        if (point_segment_distance_sq(p, v[i], v[(i + 1) % n]) <= kBoundaryTol * kBoundaryTol)
            return PointLocation::OnBoundary;
    }
    if (n == 2) return PointLocation::Outside;

    // Ray cast towards +x; boundary cases are already resolved above.
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const bool straddles = (v[i].z > p.z) != (v[j].z > p.z);
        if (straddles) {
            const double x_cross = v[j].x + (p.z - v[j].z) / (v[i].z - v[j].z) * (v[i].x - v[j].x);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside ? PointLocation::Inside : PointLocation::Outside;
}

bool point_strictly_inside(Point2D p, const Polygon2D& poly) {
    return locate_point_in_polygon(p, poly) == PointLocation::Inside;
}

double point_polygon_boundary_distance(Point2D p, const Polygon2D& poly) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    if (n == 0) return std::numeric_limits<double>::infinity();
    if (n == 1) return distance(p, v[0]);
    const std::size_t edge_count = (n == 2) ? 1 : n;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < edge_count; ++i)
        best = std::min(best, point_segment_distance_sq(p, v[i], v[(i + 1) % n]));
    return std::sqrt(best);
}

Polygon2D convex_hull_2d(std::vector<Point2D> points) {
    std::sort(points.begin(), points.end(), [](Point2D a, Point2D b) {
        return a.x < b.x || (a.x == b.x && a.z < b.z);
    });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < 3)
        throw Error(ErrorCode::DegenerateHull, "fewer than 3 distinct points");

    auto turn = [](Point2D o, Point2D a, Point2D b) { return cross(a - o, b - o); };

    std::vector<Point2D> hull(2 * points.size());
    std::size_t k = 0;
    for (const Point2D& p : points) {  // lower chain
        while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = points.rbegin() + 1; it != points.rend(); ++it) {  // upper chain
        while (k >= lower && turn(hull[k - 2], hull[k - 1], *it) <= 0.0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    if (hull.size() < 3)
        throw Error(ErrorCode::DegenerateHull, "all points collinear");
    return Polygon2D{std::move(hull)};
}

namespace {

// Rodrigues rotation of v about the unit axis by theta (radians).
Point3D rotate_about_axis(Point3D v, Point3D axis, double theta_rad) {
    const double c = std::cos(theta_rad);
    const double cp = 1.0 - c;
    const double s = std::sin(theta_rad);
    const double ux = axis.x, uy = axis.y, uz = axis.z;
    return {
        (c + ux * ux * cp) * v.x + (ux * uy * cp - uz * s) * v.y + (ux * uz * cp + uy * s) * v.z,
        (uy * ux * cp + uz * s) * v.x + (c + uy * uy * cp) * v.y + (uy * uz * cp - ux * s) * v.z,
        (uz * ux * cp - uy * s) * v.x + (uz * uy * cp + ux * s) * v.y + (c + uz * uz * cp) * v.z,
    };
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

Plane build_plane(Point3D start, Point3D end, double theta_deg) {
    if (start == end) throw Error(ErrorCode::DegenerateSegment, "plane through coincident points");

    const Point3D direction = end - start;
    const Point3D axis = normalized(direction);

    // Reference up-vector; swap to +y when the direction is vertical so the
    // cross product stays well conditioned. theta = 0 then gives the vertical
    // plane through both points.
    const bool vertical = std::sqrt(axis.x * axis.x + axis.y * axis.y) < 1e-9;
    const Point3D up = vertical ? Point3D{0.0, 1.0, 0.0} : Point3D{0.0, 0.0, 1.0};

    const Point3D n0 = normalized(cross(axis, up));
    Point3D n = rotate_about_axis(n0, axis, theta_deg * kPi / 180.0);
    n = normalized(n);

    Plane plane;
    plane.a = n.x;
    plane.b = n.y;
    plane.c = n.z;
    plane.d = -dot(n, start);
    plane.theta_deg = theta_deg;
    plane.frame_origin = start;
    plane.u_axis = axis;
    plane.v_axis = normalized(cross(n, axis));
    return plane;
}

Point3D project_point(const Plane& plane, Point3D p) {
    const double t = (plane.a * p.x + plane.b * p.y + plane.c * p.z + plane.d) /
                     (plane.a * plane.a + plane.b * plane.b + plane.c * plane.c);
    return {p.x - t * plane.a, p.y - t * plane.b, p.z - t * plane.c};
}

Point2D to_plane_coords(const Plane& plane, Point3D p_on_plane) {
    if (std::abs(plane.signed_offset(p_on_plane)) > 1e-6)
        throw Error(ErrorCode::OffPlanePoint, "point does not satisfy the plane equation");
    const Point3D rel = p_on_plane - plane.frame_origin;
    return {dot(rel, plane.u_axis), dot(rel, plane.v_axis)};
}

Point3D from_plane_coords(const Plane& plane, Point2D q) {
    return plane.frame_origin + q.x * plane.u_axis + q.z * plane.v_axis;
}

}  // namespace ilmsa
