#pragma once

#include <vector>

#include "ilmsa/environment.hpp"
#include "ilmsa/geometry.hpp"

namespace ilmsa {

struct SplineConfig {
    int degree = 3;
    int samples_per_segment = 20;
    bool clamped = true;
};

/// Clamped-uniform (or plain uniform) knot vector of length
/// n_control + degree + 1. Throws TooFewControlPoints unless n_control > degree.
std::vector<double> knot_vector(int n_control, int degree, bool clamped);

/// De Boor recursion at parameter t within [knots[degree], knots[n_control]].
Point3D de_boor(const std::vector<double>& knots, const std::vector<Point3D>& control_points,
                int degree, double t);

/// Samples every non-empty knot span with samples_per_segment points. Control
/// polygons with at most `degree` points pass through unchanged.
std::vector<Point3D> generate_bspline_3d(const std::vector<Point3D>& control_points,
                                         const SplineConfig& config = {});

/// Checks every consecutive sample segment against the obstacles inflated by e,
/// probing at 0.5 mm steps. The smoothed curve can cut corners the polyline
/// cleared, so callers fall back to the polyline when this fails.
bool validate_smoothed(const std::vector<Point3D>& samples, const std::vector<Sbbox>& obstacles,
                       double e);

/// Planar variant; obstacles are already inflated.
bool validate_smoothed_2d(const std::vector<Point2D>& samples,
                          const std::vector<Polygon2D>& inflated_obstacles);

}  // namespace ilmsa
