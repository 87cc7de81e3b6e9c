#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ilmsa/geometry.hpp"

namespace ilmsa {

/// Axis-aligned fruit bounding box. With stem_extended set, max_corner.z
/// reaches the environment ceiling so the stem is enveloped too.
struct Sbbox {
    std::string id;
    Point3D min_corner;
    Point3D max_corner;
    bool stem_extended = false;

    bool operator==(const Sbbox&) const = default;
};

struct FruitTarget {
    std::string id;
    Point3D center;

    bool operator==(const FruitTarget&) const = default;
};

struct Environment {
    Point3D bounds_min;
    Point3D bounds_max;
    Point3D start;
    Point3D end;
    std::vector<Sbbox> obstacles;
    std::vector<FruitTarget> targets;

    bool operator==(const Environment&) const = default;
};

struct Obstacle2D {
    std::string id;
    Polygon2D polygon;

    bool operator==(const Obstacle2D&) const = default;
};

struct Environment2D {
    Point2D bounds_min;
    Point2D bounds_max;
    Point2D start;
    Point2D end;
    std::vector<Obstacle2D> obstacles;

    bool operator==(const Environment2D&) const = default;
};

// --- box and polygon helpers -------------------------------------------------

Sbbox inflated(const Sbbox& box, double e);
bool point_in_box_closed(Point3D p, Point3D min_corner, Point3D max_corner);
bool point_in_box_strict(Point3D p, Point3D min_corner, Point3D max_corner);
bool boxes_intersect_closed(Point3D amin, Point3D amax, Point3D bmin, Point3D bmax);

/// True when the open interior of the box is entered by segment a-b. Contact
/// with the boundary only (grazing) does not count.
bool segment_enters_box(Point3D a, Point3D b, Point3D min_corner, Point3D max_corner);

/// Signed distance from p to the box surface: positive outside, negative inside.
double point_box_boundary_distance(Point3D p, Point3D min_corner, Point3D max_corner);

/// Minkowski dilation with the L-inf ball of radius e. Exact for rectangles;
/// a convex input yields the hull of the shifted vertices.
Polygon2D inflate_polygon(const Polygon2D& poly, double e);

std::vector<Point3D> box_corners(const Sbbox& box);

// --- validation ---------------------------------------------------------------

/// Structural and placement invariants shared by the loader and the generator.
/// Throws InvariantViolation; for a blocked start/end the Error detail carries
/// the obstacle id.
void validate_environment(const Environment& env, double clearance_e = 5.0);
void validate_environment_2d(const Environment2D& env, double clearance_e = 5.0);

/// Returns {"start"|"end", obstacle id} when an endpoint sits inside an
/// obstacle inflated by e, nothing otherwise.
std::optional<std::pair<std::string, std::string>> find_blocking_obstacle(
    const Environment& env, double e);
std::optional<std::pair<std::string, std::string>> find_blocking_obstacle(
    const Environment2D& env, double e);

// --- persistence ----------------------------------------------------------------

Environment load_environment(const std::filesystem::path& path);
void save_environment(const Environment& env, const std::filesystem::path& path);
Environment2D load_environment_2d(const std::filesystem::path& path);
void save_environment_2d(const Environment2D& env, const std::filesystem::path& path);

/// Distinguishes 2D from 3D environment files by the arity of "start".
bool environment_file_is_2d(const std::filesystem::path& path);

// --- scenario generation ---------------------------------------------------------

struct ScenarioSpec {
    std::uint64_t seed = 0;
    int n_fruits = 0;
    Point3D bounds_min;
    Point3D bounds_max;
    Point3D start;
    Point3D end;
    Point3D fruit_size{40.0, 40.0, 40.0};
    double clearance_e = 5.0;
    /// Optional placement box for the fruit centers (e.g. a hanging-fruit row
    /// between the approach positions); defaults to the full bounds.
    std::optional<Point3D> fruit_zone_min;
    std::optional<Point3D> fruit_zone_max;
};

/// Seeded rejection sampling of stem-extended fruit boxes. Inflated boxes are
/// pairwise disjoint and keep the start/end free. Deterministic per seed.
Environment generate_scenario(const ScenarioSpec& spec);

Sbbox extend_stem(const Sbbox& box, double z_top);

/// Orthographic projection onto the xoz plane; boxes become rectangles.
Environment2D project_to_xoz(const Environment& env);

/// Bottom-to-top harvesting order: ascending z, ties by x then y.
std::vector<Point3D> harvest_sequence(std::vector<Point3D> targets);

}  // namespace ilmsa
