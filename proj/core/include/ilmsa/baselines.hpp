#pragma once

#include <cstdint>
#include <vector>

#include "ilmsa/environment.hpp"
#include "ilmsa/planner2d.hpp"
#include "ilmsa/planner3d.hpp"

namespace ilmsa {

struct BaselineConfig {
    double grid_resolution = 5.0;   // A* cell size, mm
    double step_size = 10.0;        // planar RRT extension step, mm
    double step_size_3d = 2.5;      // spatial RRT extension step, mm
    double goal_bias = 0.05;
    int max_samples = 10000;
    std::uint64_t rng_seed = 0;
    double clearance_e = 5.0;
    double corridor_radius = 20.0;  // LPS end-effector radius, mm
};

/// Occupancy grid shared by the A* search and by oracle re-runs: cells are
/// res-sized squares over the bounds, a cell is free when its center clears
/// every inflated obstacle, and moves are valid when the center-to-center
/// segment does too.
class GridModel {
  public:
    GridModel(const Environment2D& env, const BaselineConfig& config);

    int nx() const { return nx_; }
    int nz() const { return nz_; }
    double resolution() const { return res_; }
    Point2D cell_center(int ix, int iz) const;
    std::pair<int, int> cell_of(Point2D p) const;
    bool cell_free(int ix, int iz) const;
    bool edge_free(int ax, int az, int bx, int bz) const;
    bool segment_free(Point2D a, Point2D b) const;

  private:
    double res_;
    Point2D origin_;
    int nx_;
    int nz_;
    std::vector<Polygon2D> inflated_;
    mutable std::vector<signed char> free_cache_;  // -1 unknown, 0 blocked, 1 free
};

/// 8-connected grid search with the Euclidean heuristic; diagonal moves cost
/// sqrt(2) x resolution. The polyline runs start -> cell centers -> goal.
Path2D astar_2d(const Environment2D& env, const BaselineConfig& config);

/// Goal-biased RRT with fixed-step extension. Deterministic per rng_seed.
Path2D rrt_2d(const Environment2D& env, const BaselineConfig& config);

/// Bidirectional RRT-Connect with greedy connection.
Path2D rrt_connect_2d(const Environment2D& env, const BaselineConfig& config);

/// Goal-biased uniform-sampling RRT in the 3D bounds box. The plane-directed
/// variant from the literature is approximated by goal biasing, hence the
/// report label "rrt3d-goalbias".
Path3D rrt_3d(const Environment& env, const BaselineConfig& config);

/// Lowest-point heuristic: sink below every obstacle whose footprint meets
/// the start-goal corridor, traverse horizontally, rise to the goal. Nodes
/// are densified at 1 mm; key_nodes marks the phase corners.
Path3D lps_3d(const Environment& env, const BaselineConfig& config);

}  // namespace ilmsa
