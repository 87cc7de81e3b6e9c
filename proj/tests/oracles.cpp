#include "oracles.hpp"

#include <limits>
#include <queue>

namespace oracles {

double dijkstra_grid_cost(const ilmsa::GridModel& grid, std::pair<int, int> from,
                          std::pair<int, int> to) {
    const int nx = grid.nx();
    const int nz = grid.nz();
    const auto idx = [nx](int ix, int iz) { return static_cast<std::size_t>(iz) * nx + ix; };
    std::vector<double> dist(static_cast<std::size_t>(nx) * nz,
                             std::numeric_limits<double>::infinity());
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    dist[idx(from.first, from.second)] = 0.0;
    queue.emplace(0.0, idx(from.first, from.second));

    const int dx8[] = {1, -1, 0, 0, 1, 1, -1, -1};
    const int dz8[] = {0, 0, 1, -1, 1, -1, 1, -1};
    while (!queue.empty()) {
        const auto [d, at] = queue.top();
        queue.pop();
        if (d > dist[at]) continue;
        const int cx = static_cast<int>(at % nx);
        const int cz = static_cast<int>(at / nx);
        for (int k = 0; k < 8; ++k) {
            const int tx = cx + dx8[k];
            const int tz = cz + dz8[k];
            if (tx < 0 || tx >= nx || tz < 0 || tz >= nz) continue;
            if (!grid.edge_free(cx, cz, tx, tz)) continue;
            const double step =
                ilmsa::distance(grid.cell_center(cx, cz), grid.cell_center(tx, tz));
            const std::size_t target = idx(tx, tz);
            if (d + step < dist[target]) {
                dist[target] = d + step;
                queue.emplace(dist[target], target);
            }
        }
    }
    return dist[idx(to.first, to.second)];
}

}  // namespace oracles
