#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ilmsa/bench.hpp"

namespace ilmsa {

enum class PlotStyle { Bars, Sweep };

/// Bars: per-algorithm mean with a standard-deviation whisker. Sweep: one
/// polyline per algorithm of the per-scenario mean, scenarios on the x axis.
/// Failed trials are skipped. Throws EmptyInput / IoError.
void emit_svg_plot(const std::vector<TrialRecord>& records, const std::string& metric,
                   const std::filesystem::path& path, PlotStyle style = PlotStyle::Bars);

/// x-z elevation view of an environment with an optional planned path.
void write_environment_svg(const Environment& env, const std::vector<Point3D>& nodes,
                           const std::vector<Point3D>& smoothed,
                           const std::filesystem::path& path);
void write_environment_svg_2d(const Environment2D& env, const std::vector<Point2D>& nodes,
                              const std::vector<Point2D>& smoothed,
                              const std::filesystem::path& path);

}  // namespace ilmsa
