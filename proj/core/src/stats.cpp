#include "ilmsa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ilmsa/errors.hpp"

namespace ilmsa {

std::vector<double> midranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double shared = 0.5 * static_cast<double>(i + j) + 1.0;  // average of ranks i+1..j+1
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

namespace {

// Sum over tie groups of t^3 - t in the pooled sample.
double tie_term(std::vector<double> pooled) {
    std::sort(pooled.begin(), pooled.end());
    double acc = 0.0;
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j + 1 < pooled.size() && pooled[j + 1] == pooled[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        acc += t * t * t - t;
        i = j + 1;
    }
    return acc;
}

bool has_ties(std::vector<double> pooled) {
    std::sort(pooled.begin(), pooled.end());
    return std::adjacent_find(pooled.begin(), pooled.end()) != pooled.end();
}

// Null distribution of U for sample sizes (n1, n2): counts[u] = number of
// n1-subsets of ranks 1..N whose U statistic equals u. Subset-sum recurrence;
// counts stay far below 2^53 for N <= 16.
std::vector<double> exact_u_counts(std::size_t n1, std::size_t n2) {
    const std::size_t n = n1 + n2;
    const std::size_t u_max = n1 * n2;
    // ways[k][u] after considering items 1..m
    std::vector<std::vector<double>> ways(n1 + 1, std::vector<double>(u_max + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t m = 1; m <= n; ++m) {
        // picking rank m as the k-th smallest element adds (m - k) to U
        for (std::size_t k = std::min(m, n1); k >= 1; --k) {
            const std::size_t add = m - k;
            for (std::size_t u = u_max + 1; u-- > add;)
                ways[k][u] += ways[k - 1][u - add];
        }
    }
    return ways[n1];
}

double one_sided_exact(const std::vector<double>& counts, double total, double u_obs,
                       bool lower_tail) {
    double acc = 0.0;
    for (std::size_t u = 0; u < counts.size(); ++u) {
        const double uu = static_cast<double>(u);
        if (lower_tail ? uu <= u_obs : uu >= u_obs) acc += counts[u];
    }
    return acc / total;
}

}  // namespace

StatResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b,
                          Alternative alternative) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySample, "empty sample");
    const std::size_t n1 = a.size();
    const std::size_t n2 = b.size();

    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = midranks(pooled);
    double rank_sum_a = 0.0;
    for (std::size_t i = 0; i < n1; ++i) rank_sum_a += ranks[i];

    const double u1 = rank_sum_a - 0.5 * static_cast<double>(n1) * (n1 + 1);
    const double u2 = static_cast<double>(n1) * n2 - u1;

    StatResult result;
    result.test_name = "mann-whitney";
    result.statistic = u1;
    result.group_labels = {"group1", "group2"};
    result.n_per_group = {n1, n2};

    const bool exact = (n1 + n2 <= 16) && !has_ties(pooled);
    if (exact) {
        const std::vector<double> counts = exact_u_counts(n1, n2);
        const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
        switch (alternative) {
            case Alternative::Less:
                result.p_value = one_sided_exact(counts, total, u1, true);
                break;
            case Alternative::Greater:
                result.p_value = one_sided_exact(counts, total, u1, false);
                break;
            case Alternative::TwoSided: {
                const double u_lo = std::min(u1, u2);
                const double u_hi = static_cast<double>(n1) * n2 - u_lo;
                result.p_value = one_sided_exact(counts, total, u_lo, true) +
                                 one_sided_exact(counts, total, u_hi, false);
                break;
            }
        }
        result.p_value = std::min(result.p_value, 1.0);
        return result;
    }

    const double n_total = static_cast<double>(n1 + n2);
    const double mu = 0.5 * static_cast<double>(n1) * n2;
    const double tie_correction =
        tie_term(pooled) / (n_total * (n_total - 1.0));
    const double sigma2 =
        (static_cast<double>(n1) * n2 / 12.0) * ((n_total + 1.0) - tie_correction);
    if (sigma2 <= 0.0) {  // every observation tied
        result.p_value = 1.0;
        return result;
    }
    const double sigma = std::sqrt(sigma2);

    auto tail = [&](double u, bool upper) {
        // continuity correction shifts half a unit towards the mean
        const double z = upper ? (u - mu - 0.5) / sigma : (u - mu + 0.5) / sigma;
        return upper ? normal_sf(z) : normal_sf(-z);
    };
    switch (alternative) {
        case Alternative::Less:
            result.p_value = tail(u1, false);
            break;
        case Alternative::Greater:
            result.p_value = tail(u1, true);
            break;
        case Alternative::TwoSided:
            result.p_value = 2.0 * tail(std::max(u1, u2), true);
            break;
    }
    result.p_value = std::min(result.p_value, 1.0);
    return result;
}

StatResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2)
        throw Error(ErrorCode::InsufficientGroups, "need at least 2 groups");
    for (const auto& g : groups)
        if (g.empty()) throw Error(ErrorCode::EmptySample, "empty group");

    std::vector<double> pooled;
    for (const auto& g : groups) pooled.insert(pooled.end(), g.begin(), g.end());
    const double n = static_cast<double>(pooled.size());
    const std::vector<double> ranks = midranks(pooled);

    double h = 0.0;
    std::size_t offset = 0;
    for (const auto& g : groups) {
        double rank_sum = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) rank_sum += ranks[offset + i];
        h += rank_sum * rank_sum / static_cast<double>(g.size());
        offset += g.size();
    }
    h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);

    const double correction = 1.0 - tie_term(pooled) / (n * n * n - n);
    StatResult result;
    result.test_name = "kruskal-wallis";
    for (const auto& g : groups) result.n_per_group.push_back(g.size());
    for (std::size_t i = 0; i < groups.size(); ++i)
        result.group_labels.push_back("group" + std::to_string(i + 1));

    if (correction <= 0.0) {  // all observations identical
        result.statistic = 0.0;
        result.p_value = 1.0;
        return result;
    }
    result.statistic = h / correction;
    result.p_value = chi_squared_sf(result.statistic, static_cast<int>(groups.size()) - 1);
    return result;
}

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw Error(ErrorCode::EmptySample, "need two equally sized samples");
    const std::vector<double> rx = midranks(x);
    const std::vector<double> ry = midranks(y);
    const double n = static_cast<double>(x.size());
    double mean = (n + 1.0) / 2.0;
    double num = 0.0, dx = 0.0, dy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (rx[i] - mean) * (ry[i] - mean);
        dx += (rx[i] - mean) * (rx[i] - mean);
        dy += (ry[i] - mean) * (ry[i] - mean);
    }
    if (dx == 0.0 || dy == 0.0) return 0.0;
    return num / std::sqrt(dx * dy);
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double chi_squared_sf(double x, int dof) {
    if (dof < 1) throw std::invalid_argument("dof must be positive");
    if (x <= 0.0) return 1.0;
    // Q(a, x/2) built up from the half-integer base cases:
    //   Q(1/2, y) = erfc(sqrt(y)),  Q(1, y) = exp(-y)
    //   Q(a+1, y) = Q(a, y) + y^a e^{-y} / Gamma(a+1)
    const double y = 0.5 * x;
    double a, q, term;
    if (dof % 2 == 1) {
        a = 0.5;
        q = std::erfc(std::sqrt(y));
        term = std::exp(-y) * std::sqrt(y) / std::tgamma(1.5);  // y^a e^-y / Gamma(a+1)
    } else {
        a = 1.0;
        q = std::exp(-y);
        term = std::exp(-y) * y;  // y^1 e^-y / Gamma(2)
    }
    while (a + 1.0 <= 0.5 * dof) {
        q += term;
        a += 1.0;
        term *= y / (a + 0.0);  // next y^a e^-y / Gamma(a+1)
    }
    return std::min(1.0, q);
}

}  // namespace ilmsa
