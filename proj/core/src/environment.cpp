#include "ilmsa/environment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ilmsa/io_util.hpp"
#include "ilmsa/rng.hpp"

namespace ilmsa {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kStemTol = 1e-9;

}  // namespace

Sbbox inflated(const Sbbox& box, double e) {
    Sbbox out = box;
    out.min_corner = {box.min_corner.x - e, box.min_corner.y - e, box.min_corner.z - e};
    out.max_corner = {box.max_corner.x + e, box.max_corner.y + e, box.max_corner.z + e};
    return out;
}

bool point_in_box_closed(Point3D p, Point3D min_corner, Point3D max_corner) {
    return p.x >= min_corner.x && p.x <= max_corner.x && p.y >= min_corner.y &&
           p.y <= max_corner.y && p.z >= min_corner.z && p.z <= max_corner.z;
}

bool point_in_box_strict(Point3D p, Point3D min_corner, Point3D max_corner) {
    return p.x > min_corner.x && p.x < max_corner.x && p.y > min_corner.y &&
           p.y < max_corner.y && p.z > min_corner.z && p.z < max_corner.z;
}

bool boxes_intersect_closed(Point3D amin, Point3D amax, Point3D bmin, Point3D bmax) {
    return amin.x <= bmax.x && amax.x >= bmin.x && amin.y <= bmax.y && amax.y >= bmin.y &&
           amin.z <= bmax.z && amax.z >= bmin.z;
}

bool segment_enters_box(Point3D a, Point3D b, Point3D min_corner, Point3D max_corner) {
    // Slab clipping against the open box: boundary contact is not a hit.
    double t_lo = 0.0;
    double t_hi = 1.0;
    const double dir[3] = {b.x - a.x, b.y - a.y, b.z - a.z};
    const double org[3] = {a.x, a.y, a.z};
    const double lo[3] = {min_corner.x, min_corner.y, min_corner.z};
    const double hi[3] = {max_corner.x, max_corner.y, max_corner.z};

    for (int i = 0; i < 3; ++i) {
        if (dir[i] == 0.0) {
            if (org[i] <= lo[i] || org[i] >= hi[i]) return false;
            continue;
        }
        double t1 = (lo[i] - org[i]) / dir[i];
        double t2 = (hi[i] - org[i]) / dir[i];
        if (t1 > t2) std::swap(t1, t2);
        t_lo = std::max(t_lo, t1);
        t_hi = std::min(t_hi, t2);
        if (t_lo >= t_hi) return false;
    }
    return true;
}

double point_box_boundary_distance(Point3D p, Point3D min_corner, Point3D max_corner) {
    const double dx = std::max({min_corner.x - p.x, 0.0, p.x - max_corner.x});
    const double dy = std::max({min_corner.y - p.y, 0.0, p.y - max_corner.y});
    const double dz = std::max({min_corner.z - p.z, 0.0, p.z - max_corner.z});
    if (dx > 0.0 || dy > 0.0 || dz > 0.0) return std::sqrt(dx * dx + dy * dy + dz * dz);
    // Inside: negative depth to the nearest face.
    const double depth = std::min({p.x - min_corner.x, max_corner.x - p.x, p.y - min_corner.y,
                                   max_corner.y - p.y, p.z - min_corner.z, max_corner.z - p.z});
    return -depth;
}

Polygon2D inflate_polygon(const Polygon2D& poly, double e) {
    std::vector<Point2D> shifted;
    shifted.reserve(poly.vertices.size() * 4);
    for (const Point2D& v : poly.vertices) {
        shifted.push_back({v.x - e, v.z - e});
        shifted.push_back({v.x + e, v.z - e});
        shifted.push_back({v.x - e, v.z + e});
        shifted.push_back({v.x + e, v.z + e});
    }
    return convex_hull_2d(std::move(shifted));
}

std::vector<Point3D> box_corners(const Sbbox& box) {
    const Point3D& lo = box.min_corner;
    const Point3D& hi = box.max_corner;
    return {
        {lo.x, lo.y, lo.z}, {hi.x, lo.y, lo.z}, {lo.x, hi.y, lo.z}, {hi.x, hi.y, lo.z},
        {lo.x, lo.y, hi.z}, {hi.x, lo.y, hi.z}, {lo.x, hi.y, hi.z}, {hi.x, hi.y, hi.z},
    };
}

// --- validation ----------------------------------------------------------------

void validate_environment(const Environment& env, double clearance_e) {
    auto finite3 = [](Point3D p) { return is_finite(p); };
    if (!finite3(env.bounds_min) || !finite3(env.bounds_max) || !finite3(env.start) ||
        !finite3(env.end))
        throw Error(ErrorCode::InvariantViolation, "non-finite coordinate in environment");
    if (!(env.bounds_min.x < env.bounds_max.x && env.bounds_min.y < env.bounds_max.y &&
          env.bounds_min.z < env.bounds_max.z))
        throw Error(ErrorCode::InvariantViolation, "bounds_min must be below bounds_max");
    if (!point_in_box_closed(env.start, env.bounds_min, env.bounds_max))
        throw Error(ErrorCode::InvariantViolation, "start outside bounds");
    if (!point_in_box_closed(env.end, env.bounds_min, env.bounds_max))
        throw Error(ErrorCode::InvariantViolation, "end outside bounds");

    for (const Sbbox& box : env.obstacles) {
        if (!finite3(box.min_corner) || !finite3(box.max_corner))
            throw Error(ErrorCode::InvariantViolation, "non-finite obstacle " + box.id);
        if (!(box.min_corner.x < box.max_corner.x && box.min_corner.y < box.max_corner.y &&
              box.min_corner.z < box.max_corner.z))
            throw Error(ErrorCode::InvariantViolation,
                        "obstacle " + box.id + ": min_corner must be below max_corner", box.id);
        if (box.stem_extended && std::abs(box.max_corner.z - env.bounds_max.z) > kStemTol)
            throw Error(ErrorCode::InvariantViolation,
                        "obstacle " + box.id + ": stem_extended but not reaching the z bound",
                        box.id);
    }
    if (auto blocked = find_blocking_obstacle(env, clearance_e))
        throw Error(ErrorCode::InvariantViolation,
                    blocked->first + " inside inflated obstacle " + blocked->second,
                    blocked->second);
    for (const FruitTarget& t : env.targets)
        if (!finite3(t.center))
            throw Error(ErrorCode::InvariantViolation, "non-finite target " + t.id);
}

namespace {

double polygon_signed_area(const Polygon2D& poly) {
    double acc = 0.0;
    const auto& v = poly.vertices;
    for (std::size_t i = 0, n = v.size(); i < n; ++i) acc += cross(v[i], v[(i + 1) % n]);
    return 0.5 * acc;
}

bool polygon_is_simple(const Polygon2D& poly) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    if (n < 3) return true;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;  // shared vertex
            if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) return false;
        }
    }
    return true;
}

}  // namespace

void validate_environment_2d(const Environment2D& env, double clearance_e) {
    if (!is_finite(env.bounds_min) || !is_finite(env.bounds_max) || !is_finite(env.start) ||
        !is_finite(env.end))
        throw Error(ErrorCode::InvariantViolation, "non-finite coordinate in environment");
    if (!(env.bounds_min.x < env.bounds_max.x && env.bounds_min.z < env.bounds_max.z))
        throw Error(ErrorCode::InvariantViolation, "bounds_min must be below bounds_max");
    for (const Obstacle2D& obs : env.obstacles) {
        if (obs.polygon.vertices.size() < 3)
            throw Error(ErrorCode::InvariantViolation,
                        "obstacle " + obs.id + ": needs at least 3 vertices", obs.id);
        for (const Point2D& p : obs.polygon.vertices)
            if (!is_finite(p))
                throw Error(ErrorCode::InvariantViolation, "non-finite vertex in " + obs.id,
                            obs.id);
        if (polygon_signed_area(obs.polygon) <= 0.0)
            throw Error(ErrorCode::InvariantViolation,
                        "obstacle " + obs.id + ": vertices must be counter-clockwise", obs.id);
        if (!polygon_is_simple(obs.polygon))
            throw Error(ErrorCode::InvariantViolation,
                        "obstacle " + obs.id + ": polygon self-intersects", obs.id);
    }
    if (auto blocked = find_blocking_obstacle(env, clearance_e))
        throw Error(ErrorCode::InvariantViolation,
                    blocked->first + " inside inflated obstacle " + blocked->second,
                    blocked->second);
}

std::optional<std::pair<std::string, std::string>> find_blocking_obstacle(const Environment& env,
                                                                          double e) {
    for (const Sbbox& box : env.obstacles) {
        const Sbbox grown = inflated(box, e);
        if (point_in_box_closed(env.start, grown.min_corner, grown.max_corner))
            return std::make_pair(std::string("start"), box.id);
        if (point_in_box_closed(env.end, grown.min_corner, grown.max_corner))
            return std::make_pair(std::string("end"), box.id);
    }
    return std::nullopt;
}

std::optional<std::pair<std::string, std::string>> find_blocking_obstacle(
    const Environment2D& env, double e) {
    for (const Obstacle2D& obs : env.obstacles) {
        const Polygon2D grown = inflate_polygon(obs.polygon, e);
        if (locate_point_in_polygon(env.start, grown) != PointLocation::Outside)
            return std::make_pair(std::string("start"), obs.id);
        if (locate_point_in_polygon(env.end, grown) != PointLocation::Outside)
            return std::make_pair(std::string("end"), obs.id);
    }
    return std::nullopt;
}

// --- JSON ------------------------------------------------------------------------

namespace {

const ordered_json& require_field(const ordered_json& j, const char* key,
                                  const std::string& path) {
    auto it = j.find(key);
    if (it == j.end())
        throw Error(ErrorCode::SchemaViolation, path + "." + key + ": missing field");
    return *it;
}

double require_number(const ordered_json& j, const std::string& path) {
    if (!j.is_number())
        throw Error(ErrorCode::SchemaViolation, path + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw Error(ErrorCode::SchemaViolation, path + ": non-finite number");
    return v;
}

Point3D parse_point3(const ordered_json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3)
        throw Error(ErrorCode::SchemaViolation, path + ": expected [x, y, z]");
    return {require_number(j[0], path + "[0]"), require_number(j[1], path + "[1]"),
            require_number(j[2], path + "[2]")};
}

Point2D parse_point2(const ordered_json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2)
        throw Error(ErrorCode::SchemaViolation, path + ": expected [x, z]");
    return {require_number(j[0], path + "[0]"), require_number(j[1], path + "[1]")};
}

std::string require_string(const ordered_json& j, const std::string& path) {
    if (!j.is_string()) throw Error(ErrorCode::SchemaViolation, path + ": expected a string");
    return j.get<std::string>();
}

ordered_json parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::SchemaViolation, path.string() + ": " + e.what());
    }
    return j;
}

void check_header(const ordered_json& j, const std::string& file) {
    const auto& version = require_field(j, "version", file);
    if (!version.is_number_integer() || version.get<int>() != 1)
        throw Error(ErrorCode::SchemaViolation, file + ".version: expected 1");
    if (require_string(require_field(j, "units", file), file + ".units") != "mm")
        throw Error(ErrorCode::SchemaViolation, file + ".units: expected \"mm\"");
}

ordered_json point_json(Point3D p) { return ordered_json::array({p.x, p.y, p.z}); }
ordered_json point_json(Point2D p) { return ordered_json::array({p.x, p.z}); }

}  // namespace

Environment load_environment(const std::filesystem::path& path) {
    const ordered_json j = parse_file(path);
    check_header(j, "$");

    Environment env;
    const auto& bounds = require_field(j, "bounds", "$");
    env.bounds_min = parse_point3(require_field(bounds, "min", "$.bounds"), "$.bounds.min");
    env.bounds_max = parse_point3(require_field(bounds, "max", "$.bounds"), "$.bounds.max");
    env.start = parse_point3(require_field(j, "start", "$"), "$.start");
    env.end = parse_point3(require_field(j, "end", "$"), "$.end");

    const auto& obstacles = require_field(j, "obstacles", "$");
    if (!obstacles.is_array())
        throw Error(ErrorCode::SchemaViolation, "$.obstacles: expected an array");
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
        const std::string path_i = "$.obstacles[" + std::to_string(i) + "]";
        const auto& o = obstacles[i];
        Sbbox box;
        box.id = require_string(require_field(o, "id", path_i), path_i + ".id");
        box.min_corner = parse_point3(require_field(o, "min", path_i), path_i + ".min");
        box.max_corner = parse_point3(require_field(o, "max", path_i), path_i + ".max");
        const auto& ext = require_field(o, "stem_extended", path_i);
        if (!ext.is_boolean())
            throw Error(ErrorCode::SchemaViolation, path_i + ".stem_extended: expected a bool");
        box.stem_extended = ext.get<bool>();
        env.obstacles.push_back(std::move(box));
    }

    const auto& targets = require_field(j, "targets", "$");
    if (!targets.is_array())
        throw Error(ErrorCode::SchemaViolation, "$.targets: expected an array");
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const std::string path_i = "$.targets[" + std::to_string(i) + "]";
        const auto& t = targets[i];
        FruitTarget target;
        target.id = require_string(require_field(t, "id", path_i), path_i + ".id");
        target.center = parse_point3(require_field(t, "center", path_i), path_i + ".center");
        env.targets.push_back(std::move(target));
    }

    validate_environment(env);
    return env;
}

void save_environment(const Environment& env, const std::filesystem::path& path) {
    ordered_json j;
    j["version"] = 1;
    j["units"] = "mm";
    j["bounds"] = {{"min", point_json(env.bounds_min)}, {"max", point_json(env.bounds_max)}};
    j["start"] = point_json(env.start);
    j["end"] = point_json(env.end);
    j["obstacles"] = ordered_json::array();
    for (const Sbbox& box : env.obstacles)
        j["obstacles"].push_back({{"id", box.id},
                                  {"min", point_json(box.min_corner)},
                                  {"max", point_json(box.max_corner)},
                                  {"stem_extended", box.stem_extended}});
    j["targets"] = ordered_json::array();
    for (const FruitTarget& t : env.targets)
        j["targets"].push_back({{"id", t.id}, {"center", point_json(t.center)}});
    write_text_atomic(path, j.dump(2) + "\n");
}

Environment2D load_environment_2d(const std::filesystem::path& path) {
    const ordered_json j = parse_file(path);
    check_header(j, "$");

    Environment2D env;
    const auto& bounds = require_field(j, "bounds", "$");
    env.bounds_min = parse_point2(require_field(bounds, "min", "$.bounds"), "$.bounds.min");
    env.bounds_max = parse_point2(require_field(bounds, "max", "$.bounds"), "$.bounds.max");
    env.start = parse_point2(require_field(j, "start", "$"), "$.start");
    env.end = parse_point2(require_field(j, "end", "$"), "$.end");

    const auto& obstacles = require_field(j, "obstacles", "$");
    if (!obstacles.is_array())
        throw Error(ErrorCode::SchemaViolation, "$.obstacles: expected an array");
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
        const std::string path_i = "$.obstacles[" + std::to_string(i) + "]";
        const auto& o = obstacles[i];
        Obstacle2D obs;
        obs.id = require_string(require_field(o, "id", path_i), path_i + ".id");
        const auto& verts = require_field(o, "vertices", path_i);
        if (!verts.is_array())
            throw Error(ErrorCode::SchemaViolation, path_i + ".vertices: expected an array");
        for (std::size_t k = 0; k < verts.size(); ++k)
            obs.polygon.vertices.push_back(
                parse_point2(verts[k], path_i + ".vertices[" + std::to_string(k) + "]"));
        env.obstacles.push_back(std::move(obs));
    }

    validate_environment_2d(env);
    return env;
}

void save_environment_2d(const Environment2D& env, const std::filesystem::path& path) {
    ordered_json j;
    j["version"] = 1;
    j["units"] = "mm";
    j["bounds"] = {{"min", point_json(env.bounds_min)}, {"max", point_json(env.bounds_max)}};
    j["start"] = point_json(env.start);
    j["end"] = point_json(env.end);
    j["obstacles"] = ordered_json::array();
    for (const Obstacle2D& obs : env.obstacles) {
        ordered_json verts = ordered_json::array();
        for (const Point2D& v : obs.polygon.vertices) verts.push_back(point_json(v));
        j["obstacles"].push_back({{"id", obs.id}, {"vertices", std::move(verts)}});
    }
    write_text_atomic(path, j.dump(2) + "\n");
}

bool environment_file_is_2d(const std::filesystem::path& path) {
    const ordered_json j = parse_file(path);
    const auto& start = require_field(j, "start", "$");
    if (!start.is_array() || (start.size() != 2 && start.size() != 3))
        throw Error(ErrorCode::SchemaViolation, "$.start: expected [x, z] or [x, y, z]");
    return start.size() == 2;
}

// --- generation -------------------------------------------------------------------

Sbbox extend_stem(const Sbbox& box, double z_top) {
    if (z_top < box.max_corner.z)
        throw Error(ErrorCode::InvalidExtension, "z_top below the obstacle top");
    Sbbox out = box;
    out.max_corner.z = z_top;
    out.stem_extended = true;
    return out;
}

Environment generate_scenario(const ScenarioSpec& spec) {
    constexpr int kMaxAttempts = 10000;

    Environment env;
    env.bounds_min = spec.bounds_min;
    env.bounds_max = spec.bounds_max;
    env.start = spec.start;
    env.end = spec.end;

    const Point3D half = 0.5 * spec.fruit_size;
    double lo_x = spec.bounds_min.x + half.x, hi_x = spec.bounds_max.x - half.x;
    double lo_y = spec.bounds_min.y + half.y, hi_y = spec.bounds_max.y - half.y;
    double lo_z = spec.bounds_min.z + half.z, hi_z = spec.bounds_max.z - half.z;
    if (spec.fruit_zone_min) {
        lo_x = std::max(lo_x, spec.fruit_zone_min->x);
        lo_y = std::max(lo_y, spec.fruit_zone_min->y);
        lo_z = std::max(lo_z, spec.fruit_zone_min->z);
    }
    if (spec.fruit_zone_max) {
        hi_x = std::min(hi_x, spec.fruit_zone_max->x);
        hi_y = std::min(hi_y, spec.fruit_zone_max->y);
        hi_z = std::min(hi_z, spec.fruit_zone_max->z);
    }
    if (spec.n_fruits > 0 && (lo_x > hi_x || lo_y > hi_y || lo_z > hi_z))
        throw Error(ErrorCode::PlacementFailure, "fruit size exceeds bounds or zone");

    Rng rng(spec.seed);
    std::vector<Point3D> centers;
    std::vector<Sbbox> placed_inflated;
    int attempts = 0;
    while (static_cast<int>(centers.size()) < spec.n_fruits) {
        if (++attempts > kMaxAttempts)
            throw Error(ErrorCode::PlacementFailure,
                        "could not place " + std::to_string(spec.n_fruits) + " fruits in " +
                            std::to_string(kMaxAttempts) + " attempts");
        const Point3D center{rng.uniform(lo_x, hi_x), rng.uniform(lo_y, hi_y),
                             rng.uniform(lo_z, hi_z)};
        Sbbox body;
        body.min_corner = center - half;
        body.max_corner = center + half;
        const Sbbox grown = inflated(extend_stem(body, spec.bounds_max.z), spec.clearance_e);
        if (point_in_box_closed(spec.start, grown.min_corner, grown.max_corner)) continue;
        if (point_in_box_closed(spec.end, grown.min_corner, grown.max_corner)) continue;
        bool overlaps = false;
        for (const Sbbox& other : placed_inflated)
            if (boxes_intersect_closed(grown.min_corner, grown.max_corner, other.min_corner,
                                       other.max_corner)) {
                overlaps = true;
                break;
            }
        if (overlaps) continue;
        centers.push_back(center);
        placed_inflated.push_back(grown);
    }

    // Harvest order assigns the ids: f01 is the bottom-most fruit.
    std::sort(centers.begin(), centers.end(), [](Point3D a, Point3D b) {
        if (a.z != b.z) return a.z < b.z;
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    for (std::size_t i = 0; i < centers.size(); ++i) {
        char id[24];
        std::snprintf(id, sizeof id, "f%02zu", i + 1);
        Sbbox body;
        body.id = id;
        body.min_corner = centers[i] - half;
        body.max_corner = centers[i] + half;
        env.obstacles.push_back(extend_stem(body, spec.bounds_max.z));
        env.targets.push_back({id, centers[i]});
    }

    validate_environment(env, spec.clearance_e);
    return env;
}

Environment2D project_to_xoz(const Environment& env) {
    Environment2D out;
    out.bounds_min = {env.bounds_min.x, env.bounds_min.z};
    out.bounds_max = {env.bounds_max.x, env.bounds_max.z};
    out.start = {env.start.x, env.start.z};
    out.end = {env.end.x, env.end.z};
    for (const Sbbox& box : env.obstacles) {
        Polygon2D rect;
        rect.vertices = {{box.min_corner.x, box.min_corner.z},
                         {box.max_corner.x, box.min_corner.z},
                         {box.max_corner.x, box.max_corner.z},
                         {box.min_corner.x, box.max_corner.z}};
        out.obstacles.push_back({box.id, std::move(rect)});
    }
    return out;
}

std::vector<Point3D> harvest_sequence(std::vector<Point3D> targets) {
    std::sort(targets.begin(), targets.end(), [](Point3D a, Point3D b) {
        if (a.z != b.z) return a.z < b.z;
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    return targets;
}

}  // namespace ilmsa
