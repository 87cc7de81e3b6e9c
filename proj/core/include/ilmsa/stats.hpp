#pragma once

#include <string>
#include <vector>

namespace ilmsa {

enum class Alternative { TwoSided, Less, Greater };

struct StatResult {
    std::string test_name;
    double statistic = 0.0;
    double p_value = 1.0;
    std::vector<std::string> group_labels;
    std::vector<std::size_t> n_per_group;
};

/// Midranks of the pooled values, in input order.
std::vector<double> midranks(const std::vector<double>& values);

/// Mann-Whitney U test. The statistic is U of the first sample. Exact p by
/// null-distribution enumeration when n1+n2 <= 16 and there are no ties,
/// otherwise the normal approximation with tie and continuity corrections.
StatResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b,
                          Alternative alternative = Alternative::TwoSided);

/// Kruskal-Wallis H test with tie correction; p from chi-squared with k-1 dof.
StatResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

/// Spearman rank correlation (midranks, Pearson on ranks).
double spearman_rho(const std::vector<double>& x, const std::vector<double>& y);

/// Upper tail of the chi-squared distribution (half-integer recurrence).
double chi_squared_sf(double x, int dof);

/// Upper tail of the standard normal.
double normal_sf(double z);

}  // namespace ilmsa
