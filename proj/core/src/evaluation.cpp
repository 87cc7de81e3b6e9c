#include "ilmsa/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ilmsa {

namespace {

constexpr double kDuplicateTol = 1e-12;

template <typename PointT>
double length_impl(const std::vector<PointT>& nodes) {
    if (nodes.size() < 2) throw Error(ErrorCode::TooShort, "path needs at least 2 nodes");
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) total += distance(nodes[i], nodes[i + 1]);
    return total;
}

template <typename PointT>
double smoothness_impl(const std::vector<PointT>& nodes) {
    if (nodes.size() < 2) throw Error(ErrorCode::TooShort, "path needs at least 2 nodes");
    // walk with duplicates skipped in place
    double total = 0.0;
    std::size_t prev = 0;
    std::size_t curr = prev;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (distance(nodes[i], nodes[curr]) <= kDuplicateTol) continue;
        if (curr != prev) {
            const PointT u = nodes[curr] - nodes[prev];
            const PointT w = nodes[i] - nodes[curr];
            const double denom = norm(u) * norm(w);
            if (denom > 0.0) {
                const double c = std::clamp(dot(u, w) / denom, -1.0, 1.0);
                total += std::acos(c);
            }
        }
        prev = curr;
        curr = i;
    }
    return total;
}

template <typename PointT>
std::vector<PointT> densify_impl(const std::vector<PointT>& nodes, double spacing) {
    if (nodes.size() < 2 || spacing <= 0.0) return nodes;
    std::vector<PointT> out;
    out.push_back(nodes.front());
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const PointT a = nodes[i];
        const PointT b = nodes[i + 1];
        const double len = distance(a, b);
        if (len > kDuplicateTol) {
            const int steps = static_cast<int>(std::floor(len / spacing));
            for (int k = 1; k <= steps; ++k) {
                const PointT p = a + (k * spacing / len) * (b - a);
                if (distance(p, b) > kDuplicateTol) out.push_back(p);
            }
        }
        if (distance(out.back(), b) > kDuplicateTol) out.push_back(b);
    }
    return out;
}

}  // namespace

double path_length(const std::vector<Point2D>& nodes) { return length_impl(nodes); }
double path_length(const std::vector<Point3D>& nodes) { return length_impl(nodes); }

double path_clearance(const std::vector<Point3D>& samples, const std::vector<Sbbox>& obstacles) {
    if (samples.empty()) throw Error(ErrorCode::TooShort, "no samples");
    if (obstacles.empty()) return kNoObstacleClearance;

    Point3D lo = samples.front(), hi = samples.front();
    for (const Point3D& p : samples) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }

    // Track squared distances outside; a penetration (negative) wins outright.
    double best_sq = std::numeric_limits<double>::infinity();
    double worst_inside = 0.0;
    for (const Sbbox& box : obstacles) {
        // a box farther from the whole path's bounding box cannot improve the minimum
        const double gx = std::max({box.min_corner.x - hi.x, 0.0, lo.x - box.max_corner.x});
        const double gy = std::max({box.min_corner.y - hi.y, 0.0, lo.y - box.max_corner.y});
        const double gz = std::max({box.min_corner.z - hi.z, 0.0, lo.z - box.max_corner.z});
        if (gx * gx + gy * gy + gz * gz >= best_sq) continue;

        for (const Point3D& p : samples) {
            const double dx = std::max({box.min_corner.x - p.x, 0.0, p.x - box.max_corner.x});
            const double dy = std::max({box.min_corner.y - p.y, 0.0, p.y - box.max_corner.y});
            const double dz = std::max({box.min_corner.z - p.z, 0.0, p.z - box.max_corner.z});
            const double sq = dx * dx + dy * dy + dz * dz;
            if (sq > 0.0) {
                best_sq = std::min(best_sq, sq);
            } else {  // on or inside the box
                const double depth =
                    point_box_boundary_distance(p, box.min_corner, box.max_corner);
                if (depth < 0.0)
                    worst_inside = std::min(worst_inside, depth);
                else
                    best_sq = 0.0;
            }
        }
    }
    return worst_inside < 0.0 ? worst_inside : std::sqrt(best_sq);
}

double path_clearance(const std::vector<Point2D>& samples,
                      const std::vector<Polygon2D>& obstacles) {
    if (samples.empty()) throw Error(ErrorCode::TooShort, "no samples");
    if (obstacles.empty()) return kNoObstacleClearance;
    double best = std::numeric_limits<double>::infinity();
    for (const Point2D& p : samples)
        for (const Polygon2D& poly : obstacles) {
            double d = point_polygon_boundary_distance(p, poly);
            if (point_strictly_inside(p, poly)) d = -d;
            best = std::min(best, d);
        }
    return best;
}

double path_smoothness(const std::vector<Point2D>& nodes) { return smoothness_impl(nodes); }
double path_smoothness(const std::vector<Point3D>& nodes) { return smoothness_impl(nodes); }

std::vector<double> score_candidates(const std::vector<PathMetrics>& metrics,
                                     const EvaluationWeights& weights) {
    if (metrics.empty()) throw Error(ErrorCode::EmptyCandidateSet, "no candidates to score");
    if (weights.length < 0.0 || weights.safety < 0.0 || weights.smoothness < 0.0 ||
        weights.length + weights.safety + weights.smoothness <= 0.0)
        throw std::invalid_argument("weights must be non-negative with a positive sum");

    auto normalize = [&](auto getter) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (const PathMetrics& m : metrics) {
            lo = std::min(lo, getter(m));
            hi = std::max(hi, getter(m));
        }
        std::vector<double> out(metrics.size(), 0.0);
        if (hi > lo)
            for (std::size_t i = 0; i < metrics.size(); ++i)
                out[i] = (getter(metrics[i]) - lo) / (hi - lo);
        return out;
    };

    const std::vector<double> len = normalize([](const PathMetrics& m) { return m.length; });
    const std::vector<double> clr = normalize([](const PathMetrics& m) { return m.min_clearance; });
    const std::vector<double> smo = normalize([](const PathMetrics& m) { return m.smoothness; });

    std::vector<double> scores(metrics.size());
    for (std::size_t i = 0; i < metrics.size(); ++i)
        scores[i] = weights.length * len[i] + weights.safety * (1.0 - clr[i]) +
                    weights.smoothness * smo[i];
    return scores;
}

std::vector<Point2D> densify_polyline(const std::vector<Point2D>& nodes, double spacing) {
    return densify_impl(nodes, spacing);
}

std::vector<Point3D> densify_polyline(const std::vector<Point3D>& nodes, double spacing) {
    return densify_impl(nodes, spacing);
}

namespace {

template <typename PointT>
long long node_count_impl(const std::vector<PointT>& nodes, double spacing) {
    if (nodes.size() < 2 || spacing <= 0.0) return static_cast<long long>(nodes.size());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) total += distance(nodes[i], nodes[i + 1]);
    const double steps = std::floor(total / spacing);
    const bool remainder = total - steps * spacing > 1e-9;
    return static_cast<long long>(steps) + 1 + (remainder ? 1 : 0);
}

}  // namespace

long long densified_node_count(const std::vector<Point2D>& nodes, double spacing) {
    return node_count_impl(nodes, spacing);
}

long long densified_node_count(const std::vector<Point3D>& nodes, double spacing) {
    return node_count_impl(nodes, spacing);
}

}  // namespace ilmsa
