// Independent reference implementations used to cross-check the library.
// Everything here is deliberately brute force and shares no code with the
// implementations under test.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "ilmsa/baselines.hpp"
#include "ilmsa/environment.hpp"
#include "ilmsa/geometry.hpp"

namespace oracles {

// --- point containment (crossing number, written from scratch) -------------------

inline bool point_in_polygon_strict(ilmsa::Point2D p, const ilmsa::Polygon2D& poly) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    if (n < 3) return false;
    // Off-boundary assumption is fine for sampling oracles: boundary hits are
    // measure zero and count as safe (grazing) anyway.
    int crossings = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const ilmsa::Point2D a = v[i];
        const ilmsa::Point2D b = v[(i + 1) % n];
        if ((a.z <= p.z) == (b.z <= p.z)) continue;
        const double t = (p.z - a.z) / (b.z - a.z);
        const double x_at = a.x + t * (b.x - a.x);
        if (x_at > p.x) ++crossings;
    }
    return (crossings % 2) == 1;
}

inline bool point_in_box_strict(ilmsa::Point3D p, const ilmsa::Sbbox& box) {
    return p.x > box.min_corner.x && p.x < box.max_corner.x && p.y > box.min_corner.y &&
           p.y < box.max_corner.y && p.z > box.min_corner.z && p.z < box.max_corner.z;
}

// --- dense-sampling collision oracles (0.1 mm step) --------------------------------

inline bool segment_collides_sampled(ilmsa::Point2D a, ilmsa::Point2D b,
                                     const std::vector<ilmsa::Polygon2D>& obstacles,
                                     double step = 0.1) {
    const double len = ilmsa::distance(a, b);
    const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        const ilmsa::Point2D p{a.x + t * (b.x - a.x), a.z + t * (b.z - a.z)};
        for (const ilmsa::Polygon2D& poly : obstacles)
            if (point_in_polygon_strict(p, poly)) return true;
    }
    return false;
}

inline bool path_collides_sampled(const std::vector<ilmsa::Point2D>& nodes,
                                  const std::vector<ilmsa::Polygon2D>& obstacles,
                                  double step = 0.1) {
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (segment_collides_sampled(nodes[i], nodes[i + 1], obstacles, step)) return true;
    return false;
}

inline bool path_collides_sampled_3d(const std::vector<ilmsa::Point3D>& nodes,
                                     const std::vector<ilmsa::Sbbox>& inflated_obstacles,
                                     double step = 0.1) {
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const ilmsa::Point3D a = nodes[i];
        const ilmsa::Point3D b = nodes[i + 1];
        const double len = ilmsa::distance(a, b);
        const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
        for (int k = 0; k <= n; ++k) {
            const double t = static_cast<double>(k) / n;
            const ilmsa::Point3D p = a + t * (b - a);
            for (const ilmsa::Sbbox& box : inflated_obstacles)
                if (point_in_box_strict(p, box)) return true;
        }
    }
    return false;
}

// --- convex hull check: every input point left of (or on) every hull edge ----------

inline bool hull_is_valid(const std::vector<ilmsa::Point2D>& input,
                          const ilmsa::Polygon2D& hull) {
    const auto& h = hull.vertices;
    if (h.size() < 3) return false;
    for (const ilmsa::Point2D& v : h)  // hull vertices must come from the input
        if (std::find(input.begin(), input.end(), v) == input.end()) return false;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const ilmsa::Point2D a = h[i];
        const ilmsa::Point2D b = h[(i + 1) % h.size()];
        for (const ilmsa::Point2D& p : input) {
            const double side = (b.x - a.x) * (p.z - a.z) - (b.z - a.z) * (p.x - a.x);
            if (side < -1e-9) return false;  // right of the edge: not a hull
        }
    }
    return true;
}

// --- Cox-de Boor basis functions ----------------------------------------------------

inline double basis_function(const std::vector<double>& knots, std::size_t i, int p, double t) {
    if (p == 0) {
        // Half-open spans, closed at the domain end.
        const bool last = knots[i + 1] == knots.back();
        if (last) return t >= knots[i] && t <= knots[i + 1] ? 1.0 : 0.0;
        return t >= knots[i] && t < knots[i + 1] ? 1.0 : 0.0;
    }
    double left = 0.0, right = 0.0;
    const double dl = knots[i + p] - knots[i];
    if (dl > 0.0) left = (t - knots[i]) / dl * basis_function(knots, i, p - 1, t);
    const double dr = knots[i + p + 1] - knots[i + 1];
    if (dr > 0.0) right = (knots[i + p + 1] - t) / dr * basis_function(knots, i + 1, p - 1, t);
    return left + right;
}

inline ilmsa::Point3D spline_point_by_basis(const std::vector<double>& knots,
                                            const std::vector<ilmsa::Point3D>& control, int p,
                                            double t) {
    ilmsa::Point3D acc{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < control.size(); ++i)
        acc = acc + basis_function(knots, i, p, t) * control[i];
    return acc;
}

// --- Mann-Whitney exact p by explicit subset enumeration ----------------------------

struct MwEnumeration {
    double u1 = 0.0;
    double p_two_sided = 1.0;
};

inline MwEnumeration mann_whitney_enumerate(const std::vector<double>& a,
                                            const std::vector<double>& b) {
    const std::size_t n1 = a.size();
    const std::size_t n2 = b.size();
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());

    auto rank_of = [&](double v) {
        return static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), v) -
                                   sorted.begin()) +
               1.0;
    };
    double rank_sum = 0.0;
    for (double v : a) rank_sum += rank_of(v);
    const double u_obs = rank_sum - 0.5 * n1 * (n1 + 1);

    // every subset of size n1 out of the N rank positions
    const std::size_t n = n1 + n2;
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + n1, true);
    std::sort(mask.begin(), mask.end());  // lowest permutation for next_permutation

    double count_le = 0.0, count_ge = 0.0, total = 0.0;
    const double u_lo = std::min(u_obs, static_cast<double>(n1 * n2) - u_obs);
    const double u_hi = static_cast<double>(n1 * n2) - u_lo;
    do {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask[i]) sum += static_cast<double>(i) + 1.0;
        const double u = sum - 0.5 * n1 * (n1 + 1);
        total += 1.0;
        if (u <= u_lo) count_le += 1.0;
        if (u >= u_hi) count_ge += 1.0;
    } while (std::next_permutation(mask.begin(), mask.end()));

    MwEnumeration out;
    out.u1 = u_obs;
    out.p_two_sided = std::min(1.0, (count_le + count_ge) / total);
    return out;
}

// --- Kruskal-Wallis permutation oracle ------------------------------------------------

inline double kw_h_from_ranks(const std::vector<double>& ranks,
                              const std::vector<std::size_t>& sizes, double correction) {
    const double n = static_cast<double>(ranks.size());
    double h = 0.0;
    std::size_t offset = 0;
    for (std::size_t g = 0; g < sizes.size(); ++g) {
        double sum = 0.0;
        for (std::size_t i = 0; i < sizes[g]; ++i) sum += ranks[offset + i];
        h += sum * sum / static_cast<double>(sizes[g]);
        offset += sizes[g];
    }
    h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);
    return correction > 0.0 ? h / correction : 0.0;
}

/// Monte-Carlo permutation p-value for the Kruskal-Wallis H statistic.
inline double kw_permutation_p(const std::vector<std::vector<double>>& groups, int n_shuffles,
                               std::uint64_t seed) {
    std::vector<double> pooled;
    std::vector<std::size_t> sizes;
    for (const auto& g : groups) {
        pooled.insert(pooled.end(), g.begin(), g.end());
        sizes.push_back(g.size());
    }
    const std::size_t n = pooled.size();

    // midranks, computed locally
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    double tie_sum = 0.0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        const double t = static_cast<double>(j - i + 1);
        tie_sum += t * t * t - t;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    const double nn = static_cast<double>(n);
    const double correction = 1.0 - tie_sum / (nn * nn * nn - nn);

    const double h_obs = kw_h_from_ranks(ranks, sizes, correction);

    std::mt19937_64 engine(seed);
    auto uniform_index = [&](std::size_t bound) {
        return static_cast<std::size_t>((static_cast<double>(engine() >> 11) * 0x1.0p-53) *
                                        static_cast<double>(bound)) %
               bound;
    };
    int at_least = 0;
    std::vector<double> shuffled = ranks;
    for (int s = 0; s < n_shuffles; ++s) {
        for (std::size_t k = n - 1; k > 0; --k)
            std::swap(shuffled[k], shuffled[uniform_index(k + 1)]);
        if (kw_h_from_ranks(shuffled, sizes, correction) >= h_obs - 1e-12) ++at_least;
    }
    return static_cast<double>(at_least) / n_shuffles;
}

// --- Dijkstra over the same grid as A* --------------------------------------------------

double dijkstra_grid_cost(const ilmsa::GridModel& grid, std::pair<int, int> from,
                          std::pair<int, int> to);

}  // namespace oracles
