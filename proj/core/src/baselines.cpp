#include "ilmsa/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "ilmsa/evaluation.hpp"
#include "ilmsa/rng.hpp"

namespace ilmsa {

namespace {

std::vector<Polygon2D> inflate_obstacles(const Environment2D& env, double e) {
    std::vector<Polygon2D> out;
    out.reserve(env.obstacles.size());
    for (const Obstacle2D& obs : env.obstacles) out.push_back(inflate_polygon(obs.polygon, e));
    return out;
}

void require_endpoints_free_2d(const Environment2D& env, double e) {
    if (env.start == env.end)
        throw Error(ErrorCode::DegenerateSegment, "start equals end");
    if (auto blocked = find_blocking_obstacle(env, e))
        throw Error(ErrorCode::StartOrGoalBlocked,
                    blocked->first + " inside inflated obstacle " + blocked->second,
                    blocked->second);
}

void require_endpoints_free_3d(const Environment& env, double e) {
    if (env.start == env.end)
        throw Error(ErrorCode::DegenerateSegment, "start equals end");
    if (auto blocked = find_blocking_obstacle(env, e))
        throw Error(ErrorCode::StartOrGoalBlocked,
                    blocked->first + " inside inflated obstacle " + blocked->second,
                    blocked->second);
}

}  // namespace

// --- grid A* ---------------------------------------------------------------------

GridModel::GridModel(const Environment2D& env, const BaselineConfig& config)
    : res_(config.grid_resolution), origin_(env.bounds_min) {
    if (res_ <= 0.0) throw std::invalid_argument("grid_resolution must be positive");
    nx_ = std::max(1, static_cast<int>(std::floor((env.bounds_max.x - env.bounds_min.x) / res_)));
    nz_ = std::max(1, static_cast<int>(std::floor((env.bounds_max.z - env.bounds_min.z) / res_)));
    inflated_ = inflate_obstacles(env, config.clearance_e);
    free_cache_.assign(static_cast<std::size_t>(nx_) * nz_, -1);
}

Point2D GridModel::cell_center(int ix, int iz) const {
    return {origin_.x + (ix + 0.5) * res_, origin_.z + (iz + 0.5) * res_};
}

std::pair<int, int> GridModel::cell_of(Point2D p) const {
    int ix = static_cast<int>(std::floor((p.x - origin_.x) / res_));
    int iz = static_cast<int>(std::floor((p.z - origin_.z) / res_));
    ix = std::clamp(ix, 0, nx_ - 1);
    iz = std::clamp(iz, 0, nz_ - 1);
    return {ix, iz};
}

bool GridModel::cell_free(int ix, int iz) const {
    if (ix < 0 || ix >= nx_ || iz < 0 || iz >= nz_) return false;
    signed char& cached = free_cache_[static_cast<std::size_t>(iz) * nx_ + ix];
    if (cached < 0) {
        const Point2D c = cell_center(ix, iz);
        bool free = true;
        for (const Polygon2D& poly : inflated_)
            if (locate_point_in_polygon(c, poly) != PointLocation::Outside) {
                free = false;
                break;
            }
        cached = free ? 1 : 0;
    }
    return cached == 1;
}

bool GridModel::segment_free(Point2D a, Point2D b) const {
    return !collision_detected(a, b, inflated_);
}

bool GridModel::edge_free(int ax, int az, int bx, int bz) const {
    if (!cell_free(ax, az) || !cell_free(bx, bz)) return false;
    return segment_free(cell_center(ax, az), cell_center(bx, bz));
}

Path2D astar_2d(const Environment2D& env, const BaselineConfig& config) {
    require_endpoints_free_2d(env, config.clearance_e);
    const GridModel grid(env, config);

    const auto [sx, sz] = grid.cell_of(env.start);
    const auto [gx, gz] = grid.cell_of(env.end);
    if (!grid.cell_free(sx, sz) || !grid.segment_free(env.start, grid.cell_center(sx, sz)))
        throw Error(ErrorCode::StartOrGoalBlocked, "start cell blocked on the grid");
    if (!grid.cell_free(gx, gz) || !grid.segment_free(env.end, grid.cell_center(gx, gz)))
        throw Error(ErrorCode::StartOrGoalBlocked, "goal cell blocked on the grid");

    const int nx = grid.nx();
    const int nz = grid.nz();
    const auto idx = [nx](int ix, int iz) { return static_cast<std::size_t>(iz) * nx + ix; };
    const std::size_t n_cells = static_cast<std::size_t>(nx) * nz;
    std::vector<double> g(n_cells, std::numeric_limits<double>::infinity());
    std::vector<std::int64_t> parent(n_cells, -1);
    std::vector<bool> closed(n_cells, false);

    const Point2D goal_center = grid.cell_center(gx, gz);
    auto heuristic = [&](int ix, int iz) { return distance(grid.cell_center(ix, iz), goal_center); };

    using QueueEntry = std::pair<double, std::size_t>;  // (f, cell index)
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> open;
    g[idx(sx, sz)] = 0.0;
    open.emplace(heuristic(sx, sz), idx(sx, sz));

    const int dx8[] = {1, -1, 0, 0, 1, 1, -1, -1};
    const int dz8[] = {0, 0, 1, -1, 1, -1, 1, -1};

    const std::size_t goal_idx = idx(gx, gz);
    bool found = false;
    while (!open.empty()) {
        const auto [f, current] = open.top();
        open.pop();
        if (closed[current]) continue;
        closed[current] = true;
        if (current == goal_idx) {
            found = true;
            break;
        }
        const int cx = static_cast<int>(current % nx);
        const int cz = static_cast<int>(current / nx);
        for (int k = 0; k < 8; ++k) {
            const int tx = cx + dx8[k];
            const int tz = cz + dz8[k];
            if (tx < 0 || tx >= nx || tz < 0 || tz >= nz) continue;
            const std::size_t target = idx(tx, tz);
            if (closed[target]) continue;
            if (!grid.edge_free(cx, cz, tx, tz)) continue;
            const double cost = distance(grid.cell_center(cx, cz), grid.cell_center(tx, tz));
            const double candidate = g[current] + cost;
            if (candidate < g[target]) {
                g[target] = candidate;
                parent[target] = static_cast<std::int64_t>(current);
                open.emplace(candidate + heuristic(tx, tz), target);
            }
        }
    }
    if (!found) throw Error(ErrorCode::NoPath, "goal unreachable on the grid");

    std::vector<Point2D> centers;
    for (std::int64_t at = static_cast<std::int64_t>(goal_idx); at >= 0; at = parent[at])
        centers.push_back(grid.cell_center(static_cast<int>(at % nx), static_cast<int>(at / nx)));
    std::reverse(centers.begin(), centers.end());

    Path2D path;
    path.nodes.push_back(env.start);
    for (const Point2D& c : centers)
        if (c != path.nodes.back()) path.nodes.push_back(c);
    if (env.end != path.nodes.back()) path.nodes.push_back(env.end);
    for (std::size_t i = 1; i + 1 < path.nodes.size(); ++i) path.key_nodes.push_back(i);
    return path;
}

// --- RRT family -------------------------------------------------------------------

namespace {

template <typename PointT>
struct Tree {
    std::vector<PointT> nodes;
    std::vector<std::size_t> parent;

    std::size_t nearest(const PointT& q) const {
        std::size_t best = 0;
        double best_d = distance(nodes[0], q);
        for (std::size_t i = 1; i < nodes.size(); ++i) {
            const double d = distance(nodes[i], q);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        return best;
    }

    std::size_t add(const PointT& q, std::size_t from) {
        nodes.push_back(q);
        parent.push_back(from);
        return nodes.size() - 1;
    }

    std::vector<PointT> chain_to_root(std::size_t i) const {
        std::vector<PointT> out;
        while (true) {
            out.push_back(nodes[i]);
            if (parent[i] == i) break;
            i = parent[i];
        }
        return out;
    }
};

template <typename PointT>
PointT steer(const PointT& from, const PointT& to, double step) {
    const double d = distance(from, to);
    if (d <= step) return to;
    return from + (step / d) * (to - from);
}

}  // namespace

Path2D rrt_2d(const Environment2D& env, const BaselineConfig& config) {
    require_endpoints_free_2d(env, config.clearance_e);
    const std::vector<Polygon2D> obstacles = inflate_obstacles(env, config.clearance_e);
    auto edge_free = [&](Point2D a, Point2D b) { return !collision_detected(a, b, obstacles); };

    Rng rng(config.rng_seed);
    Tree<Point2D> tree;
    tree.add(env.start, 0);

    for (int it = 0; it < config.max_samples; ++it) {
        const Point2D sample = rng.uniform() < config.goal_bias
                                   ? env.end
                                   : Point2D{rng.uniform(env.bounds_min.x, env.bounds_max.x),
                                             rng.uniform(env.bounds_min.z, env.bounds_max.z)};
        const std::size_t near = tree.nearest(sample);
        if (tree.nodes[near] == sample) continue;
        const Point2D fresh = steer(tree.nodes[near], sample, config.step_size);
        if (!edge_free(tree.nodes[near], fresh)) continue;
        const std::size_t added = tree.add(fresh, near);

        if (distance(fresh, env.end) <= config.step_size && edge_free(fresh, env.end)) {
            std::size_t goal = added;
            if (fresh != env.end) goal = tree.add(env.end, added);
            Path2D path;
            path.nodes = tree.chain_to_root(goal);
            std::reverse(path.nodes.begin(), path.nodes.end());
            for (std::size_t i = 1; i + 1 < path.nodes.size(); ++i) path.key_nodes.push_back(i);
            return path;
        }
    }
    throw Error(ErrorCode::NoPath, "sample budget exhausted");
}

Path2D rrt_connect_2d(const Environment2D& env, const BaselineConfig& config) {
    require_endpoints_free_2d(env, config.clearance_e);
    const std::vector<Polygon2D> obstacles = inflate_obstacles(env, config.clearance_e);
    auto edge_free = [&](Point2D a, Point2D b) { return !collision_detected(a, b, obstacles); };

    Rng rng(config.rng_seed);
    Tree<Point2D> start_tree, goal_tree;
    start_tree.add(env.start, 0);
    goal_tree.add(env.end, 0);
    Tree<Point2D>* grow = &start_tree;
    Tree<Point2D>* connect = &goal_tree;

    for (int it = 0; it < config.max_samples; ++it) {
        const Point2D sample{rng.uniform(env.bounds_min.x, env.bounds_max.x),
                             rng.uniform(env.bounds_min.z, env.bounds_max.z)};
        const std::size_t near = grow->nearest(sample);
        if (grow->nodes[near] == sample) continue;
        const Point2D fresh = steer(grow->nodes[near], sample, config.step_size);
        if (!edge_free(grow->nodes[near], fresh)) {
            std::swap(grow, connect);
            continue;
        }
        const std::size_t grown = grow->add(fresh, near);

        // Greedy connect: march the other tree towards the new node.
        std::size_t tip = connect->nearest(fresh);
        bool reached = false;
        while (true) {
            const Point2D next = steer(connect->nodes[tip], fresh, config.step_size);
            if (next == connect->nodes[tip] || !edge_free(connect->nodes[tip], next)) break;
            tip = connect->add(next, tip);
            if (next == fresh) {
                reached = true;
                break;
            }
        }

        if (reached) {
            std::vector<Point2D> a = grow->chain_to_root(grown);      // fresh .. tree root
            std::vector<Point2D> b = connect->chain_to_root(tip);     // fresh .. other root
            std::reverse(a.begin(), a.end());                         // root .. fresh
            a.insert(a.end(), b.begin() + 1, b.end());                // append other side
            if (a.front() != env.start) std::reverse(a.begin(), a.end());
            Path2D path;
            path.nodes = std::move(a);
            for (std::size_t i = 1; i + 1 < path.nodes.size(); ++i) path.key_nodes.push_back(i);
            return path;
        }
        std::swap(grow, connect);
    }
    throw Error(ErrorCode::NoPath, "sample budget exhausted");
}

Path3D rrt_3d(const Environment& env, const BaselineConfig& config) {
    require_endpoints_free_3d(env, config.clearance_e);
    std::vector<Sbbox> grown;
    grown.reserve(env.obstacles.size());
    for (const Sbbox& box : env.obstacles) grown.push_back(inflated(box, config.clearance_e));
    auto edge_free = [&](Point3D a, Point3D b) {
        for (const Sbbox& box : grown)
            if (segment_enters_box(a, b, box.min_corner, box.max_corner)) return false;
        return true;
    };

    Rng rng(config.rng_seed);
    Tree<Point3D> tree;
    tree.add(env.start, 0);

    for (int it = 0; it < config.max_samples; ++it) {
        const Point3D sample = rng.uniform() < config.goal_bias
                                   ? env.end
                                   : Point3D{rng.uniform(env.bounds_min.x, env.bounds_max.x),
                                             rng.uniform(env.bounds_min.y, env.bounds_max.y),
                                             rng.uniform(env.bounds_min.z, env.bounds_max.z)};
        const std::size_t near = tree.nearest(sample);
        if (tree.nodes[near] == sample) continue;
        const Point3D fresh = steer(tree.nodes[near], sample, config.step_size_3d);
        if (!edge_free(tree.nodes[near], fresh)) continue;
        const std::size_t added = tree.add(fresh, near);

        if (distance(fresh, env.end) <= config.step_size_3d && edge_free(fresh, env.end)) {
            std::size_t goal = added;
            if (fresh != env.end) goal = tree.add(env.end, added);
            Path3D path;
            path.nodes = tree.chain_to_root(goal);
            std::reverse(path.nodes.begin(), path.nodes.end());
            for (std::size_t i = 1; i + 1 < path.nodes.size(); ++i) path.key_nodes.push_back(i);
            return path;
        }
    }
    throw Error(ErrorCode::NoPath, "sample budget exhausted");
}

// --- LPS --------------------------------------------------------------------------

namespace {

// Distance in the x-y plane between a segment and a box footprint.
double footprint_segment_distance(Point2D a, Point2D b, Point2D rect_min, Point2D rect_max) {
    const Polygon2D rect{{{rect_min.x, rect_min.z},
                          {rect_max.x, rect_min.z},
                          {rect_max.x, rect_max.z},
                          {rect_min.x, rect_max.z}}};
    if (locate_point_in_polygon(a, rect) != PointLocation::Outside ||
        locate_point_in_polygon(b, rect) != PointLocation::Outside)
        return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < 4; ++i) {
        const Point2D c = rect.vertices[i];
        const Point2D d = rect.vertices[(i + 1) % 4];
        if (a != b && segments_intersect(a, b, c, d)) return 0.0;
        best = std::min({best, point_segment_distance(c, a, b), point_segment_distance(d, a, b),
                         point_segment_distance(a, c, d), point_segment_distance(b, c, d)});
    }
    return best;
}

}  // namespace

Path3D lps_3d(const Environment& env, const BaselineConfig& config) {
    require_endpoints_free_3d(env, config.clearance_e);

    const Point2D s_xy{env.start.x, env.start.y};
    const Point2D g_xy{env.end.x, env.end.y};

    double min_bottom = std::numeric_limits<double>::infinity();
    for (const Sbbox& box : env.obstacles) {
        const double d = footprint_segment_distance(s_xy, g_xy,
                                                    {box.min_corner.x, box.min_corner.y},
                                                    {box.max_corner.x, box.max_corner.y});
        if (d <= config.corridor_radius) min_bottom = std::min(min_bottom, box.min_corner.z);
    }

    const double h = std::isfinite(min_bottom) ? min_bottom - config.clearance_e
                                               : std::min(env.start.z, env.end.z);
    if (h < env.bounds_min.z)
        throw Error(ErrorCode::CorridorBlocked, "safe height below the environment floor");

    // Descend only; a start already below the safe height traverses at its own z.
    const double traverse_z = std::min(env.start.z, h);
    std::vector<Point3D> corners;
    corners.push_back(env.start);
    const Point3D down{env.start.x, env.start.y, traverse_z};
    if (down != corners.back()) corners.push_back(down);
    const Point3D across{env.end.x, env.end.y, traverse_z};
    if (across != corners.back()) corners.push_back(across);
    if (env.end != corners.back()) corners.push_back(env.end);
    if (corners.size() < 2) corners.push_back(env.end);

    std::vector<Sbbox> grown;
    grown.reserve(env.obstacles.size());
    for (const Sbbox& box : env.obstacles) grown.push_back(inflated(box, config.clearance_e));
    for (std::size_t i = 0; i + 1 < corners.size(); ++i)
        for (const Sbbox& box : grown)
            if (segment_enters_box(corners[i], corners[i + 1], box.min_corner, box.max_corner))
                throw Error(ErrorCode::CorridorBlocked,
                            "phase " + std::to_string(i + 1) + " blocked by obstacle " + box.id,
                            box.id);

    Path3D path;
    path.nodes = densify_polyline(corners, 1.0);
    for (const Point3D& c : corners) {
        for (std::size_t i = 0; i < path.nodes.size(); ++i)
            if (path.nodes[i] == c) {
                path.key_nodes.push_back(i);
                break;
            }
    }
    return path;
}

}  // namespace ilmsa
