#include "ilmsa/smoothing.hpp"

#include <algorithm>
#include <cmath>

namespace ilmsa {

std::vector<double> knot_vector(int n_control, int degree, bool clamped) {
    if (n_control <= degree)
        throw Error(ErrorCode::TooFewControlPoints,
                    "need more than degree control points, got " + std::to_string(n_control));
    const int length = n_control + degree + 1;
    std::vector<double> knots(static_cast<std::size_t>(length));
    if (clamped) {
        const int spans = n_control - degree;  // interior knots + 1
        for (int i = 0; i < length; ++i) {
            if (i <= degree)
                knots[i] = 0.0;
            else if (i >= n_control)
                knots[i] = 1.0;
            else
                knots[i] = static_cast<double>(i - degree) / spans;
        }
    } else {
        for (int i = 0; i < length; ++i)
            knots[i] = static_cast<double>(i) / (length - 1);
    }
    return knots;
}

Point3D de_boor(const std::vector<double>& knots, const std::vector<Point3D>& control_points,
                int degree, double t) {
    const int n = static_cast<int>(control_points.size());
    if (n <= degree)
        throw Error(ErrorCode::TooFewControlPoints, "not enough control points for de Boor");
    if (knots.size() != static_cast<std::size_t>(n + degree + 1))
        throw Error(ErrorCode::ParameterOutOfRange, "knot vector has the wrong length");
    const double t_min = knots[degree];
    const double t_max = knots[n];
    if (t < t_min || t > t_max)
        throw Error(ErrorCode::ParameterOutOfRange, "parameter outside the spline domain");

    // Knot span index k with knots[k] <= t < knots[k+1]; the domain end maps
    // to the last non-empty span.
    int k = degree;
    if (t >= t_max) {
        k = n - 1;
        while (k > degree && knots[k] == knots[k + 1]) --k;
    } else {
        while (k + 1 < n && knots[k + 1] <= t) ++k;
    }

    constexpr int kStackDegree = 7;
    Point3D stack_buf[kStackDegree + 1];
    std::vector<Point3D> heap_buf;
    Point3D* d = stack_buf;
    if (degree > kStackDegree) {
        heap_buf.resize(static_cast<std::size_t>(degree) + 1);
        d = heap_buf.data();
    }
    for (int j = 0; j <= degree; ++j) d[j] = control_points[j + k - degree];

    for (int r = 1; r <= degree; ++r) {
        for (int j = degree; j >= r; --j) {
            const int i = j + k - degree;
            const double denom = knots[i + degree + 1 - r] - knots[i];
            const double alpha = denom == 0.0 ? 0.0 : (t - knots[i]) / denom;
            d[j] = (1.0 - alpha) * d[j - 1] + alpha * d[j];
        }
    }
    return d[degree];
}

std::vector<Point3D> generate_bspline_3d(const std::vector<Point3D>& control_points,
                                         const SplineConfig& config) {
    if (config.degree < 1 || config.samples_per_segment < 2)
        throw std::invalid_argument("invalid spline configuration");
    const int n = static_cast<int>(control_points.size());
    if (n <= config.degree) return control_points;  // pass-through

    const std::vector<double> knots = knot_vector(n, config.degree, config.clamped);
    const double t_max = knots[n];
    const int s = config.samples_per_segment;

    std::vector<Point3D> samples;
    samples.reserve(static_cast<std::size_t>(n - config.degree) * s);
    for (int j = config.degree; j < n; ++j) {
        if (knots[j + 1] <= knots[j]) continue;  // empty span
        for (int i = 0; i < s; ++i) {
            double t = knots[j] + (knots[j + 1] - knots[j]) * i / (s - 1);
            t = std::min(t, t_max);
            samples.push_back(de_boor(knots, control_points, config.degree, t));
        }
    }
    return samples;
}

namespace {

constexpr double kProbeStep = 0.5;

template <typename PointT, typename InsideFn>
bool segment_probe_clear(PointT a, PointT b, InsideFn inside) {
    const double len = distance(a, b);
    const int steps = std::max(1, static_cast<int>(std::ceil(len / kProbeStep)));
    for (int i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / steps;
        const PointT p = a + t * (b - a);
        if (inside(p)) return false;
    }
    return true;
}

}  // namespace

bool validate_smoothed(const std::vector<Point3D>& samples, const std::vector<Sbbox>& obstacles,
                       double e) {
    if (samples.size() < 2 || obstacles.empty()) return true;
    std::vector<Sbbox> grown;
    grown.reserve(obstacles.size());
    for (const Sbbox& box : obstacles) grown.push_back(inflated(box, e));

    std::vector<const Sbbox*> nearby;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const Point3D a = samples[i];
        const Point3D b = samples[i + 1];
        const Point3D lo{std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)};
        const Point3D hi{std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)};
        nearby.clear();
        for (const Sbbox& box : grown)
            if (boxes_intersect_closed(lo, hi, box.min_corner, box.max_corner))
                nearby.push_back(&box);
        if (nearby.empty()) continue;
        auto inside_nearby = [&](Point3D p) {
            for (const Sbbox* box : nearby)
                if (point_in_box_strict(p, box->min_corner, box->max_corner)) return true;
            return false;
        };
        if (!segment_probe_clear(a, b, inside_nearby)) return false;
    }
    return true;
}

bool validate_smoothed_2d(const std::vector<Point2D>& samples,
                          const std::vector<Polygon2D>& inflated_obstacles) {
    if (samples.size() < 2 || inflated_obstacles.empty()) return true;
    auto inside_any = [&](Point2D p) {
        for (const Polygon2D& poly : inflated_obstacles)
            if (point_strictly_inside(p, poly)) return true;
        return false;
    };
    for (std::size_t i = 0; i + 1 < samples.size(); ++i)
        if (!segment_probe_clear(samples[i], samples[i + 1], inside_any)) return false;
    return true;
}

}  // namespace ilmsa
