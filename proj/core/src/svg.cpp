#include "ilmsa/svg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "ilmsa/io_util.hpp"

namespace ilmsa {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 520.0;
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 70.0;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#17becf"};

std::string metric_axis_label(const std::string& metric) {
    if (metric == "length" || metric == "length_mm") return "path length (mm)";
    if (metric == "time" || metric == "planning_time_ms") return "planning time (ms)";
    if (metric == "nodes" || metric == "node_count") return "trajectory nodes (count)";
    if (metric == "key_nodes" || metric == "key_node_count") return "key nodes (count)";
    if (metric == "clearance" || metric == "clearance_mm") return "min clearance (mm)";
    if (metric == "smoothness" || metric == "smoothness_rad") return "smoothness (rad)";
    if (metric == "score") return "score";
    return metric;
}

struct Series {
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t n = 0;
};

Series summarize(const std::vector<double>& values) {
    Series s;
    s.n = values.size();
    if (values.empty()) return s;
    for (double v : values) s.mean += v;
    s.mean /= static_cast<double>(values.size());
    if (values.size() > 1) {
        double acc = 0.0;
        for (double v : values) acc += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(acc / static_cast<double>(values.size() - 1));
    }
    return s;
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

void open_svg(std::ostringstream& out) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void draw_axes(std::ostringstream& out, const std::string& x_label, const std::string& y_label,
               double y_min, double y_max) {
    const double x0 = kMarginLeft, x1 = kWidth - kMarginRight;
    const double y0 = kHeight - kMarginBottom, y1 = kMarginTop;
    out << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 15
        << "\" text-anchor=\"middle\" font-size=\"14\">" << x_label << "</text>\n";
    out << "<text x=\"20\" y=\"" << (y0 + y1) / 2
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 20 "
        << (y0 + y1) / 2 << ")\">" << y_label << "</text>\n";
    for (int i = 0; i <= 4; ++i) {
        const double frac = i / 4.0;
        const double y = y0 - frac * (y0 - y1);
        const double value = y_min + frac * (y_max - y_min);
        out << "<line x1=\"" << x0 - 4 << "\" y1=\"" << y << "\" x2=\"" << x0 << "\" y2=\"" << y
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << x0 - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-size=\"12\">" << fmt(value) << "</text>\n";
    }
}

}  // namespace

void emit_svg_plot(const std::vector<TrialRecord>& records, const std::string& metric,
                   const std::filesystem::path& path, PlotStyle style) {
    if (records.empty()) throw Error(ErrorCode::EmptyInput, "no records to plot");

    // label -> (scenario -> values); map keeps label order stable
    std::map<std::string, std::map<std::string, std::vector<double>>> data;
    std::vector<std::string> scenario_order;
    for (const TrialRecord& r : records) {
        if (!r.success) continue;
        if (std::find(scenario_order.begin(), scenario_order.end(), r.scenario_id) ==
            scenario_order.end())
            scenario_order.push_back(r.scenario_id);
        data[r.algorithm][r.scenario_id].push_back(record_metric(r, metric));
    }
    if (data.empty()) throw Error(ErrorCode::EmptyInput, "no successful records to plot");

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& [label, per_scenario] : data)
        for (const auto& [sid, values] : per_scenario) {
            const Series s = summarize(values);
            lo = std::min(lo, s.mean - s.stddev);
            hi = std::max(hi, s.mean + s.stddev);
        }
    if (lo > 0.0 && lo < 0.25 * hi) lo = 0.0;
    if (hi == lo) hi = lo + 1.0;

    const double x0 = kMarginLeft, x1 = kWidth - kMarginRight;
    const double y0 = kHeight - kMarginBottom, y1 = kMarginTop;
    auto y_of = [&](double v) { return y0 - (v - lo) / (hi - lo) * (y0 - y1); };

    std::ostringstream out;
    open_svg(out);

    if (style == PlotStyle::Bars) {
        draw_axes(out, "algorithm", metric_axis_label(metric), lo, hi);
        const std::size_t n = data.size();
        const double slot = (x1 - x0) / static_cast<double>(n);
        std::size_t i = 0;
        for (const auto& [label, per_scenario] : data) {
            std::vector<double> all;
            for (const auto& [sid, values] : per_scenario)
                all.insert(all.end(), values.begin(), values.end());
            const Series s = summarize(all);
            const double cx = x0 + (i + 0.5) * slot;
            const double bar_w = slot * 0.5;
            const char* color = kPalette[i % 7];
            out << "<rect x=\"" << cx - bar_w / 2 << "\" y=\"" << y_of(s.mean) << "\" width=\""
                << bar_w << "\" height=\"" << y0 - y_of(s.mean) << "\" fill=\"" << color
                << "\" fill-opacity=\"0.8\"/>\n";
            out << "<line x1=\"" << cx << "\" y1=\"" << y_of(s.mean - s.stddev) << "\" x2=\""
                << cx << "\" y2=\"" << y_of(s.mean + s.stddev)
                << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
            out << "<text x=\"" << cx << "\" y=\"" << y0 + 18
                << "\" text-anchor=\"middle\" font-size=\"12\">" << label << "</text>\n";
            ++i;
        }
    } else {
        draw_axes(out, "scenario", metric_axis_label(metric), lo, hi);
        const std::size_t n = scenario_order.size();
        auto x_of = [&](std::size_t idx) {
            return n == 1 ? (x0 + x1) / 2
                          : x0 + static_cast<double>(idx) / (n - 1) * (x1 - x0);
        };
        std::size_t color_i = 0;
        for (const auto& [label, per_scenario] : data) {
            const char* color = kPalette[color_i % 7];
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
            for (std::size_t i = 0; i < n; ++i) {
                auto it = per_scenario.find(scenario_order[i]);
                if (it == per_scenario.end()) continue;
                out << fmt(x_of(i)) << "," << fmt(y_of(summarize(it->second).mean)) << " ";
            }
            out << "\"/>\n";
            out << "<text x=\"" << x1 - 120 << "\" y=\"" << y1 + 16 * (color_i + 1)
                << "\" font-size=\"12\" fill=\"" << color << "\">" << label << "</text>\n";
            ++color_i;
        }
        for (std::size_t i = 0; i < n; ++i)
            out << "<text x=\"" << fmt(x_of(i)) << "\" y=\"" << y0 + 18
                << "\" text-anchor=\"middle\" font-size=\"10\">" << scenario_order[i]
                << "</text>\n";
    }
    out << "</svg>\n";
    write_text_atomic(path, out.str());
}

namespace {

void draw_scene(std::ostringstream& out, Point2D lo, Point2D hi,
                const std::vector<Polygon2D>& polygons,
                const std::vector<Point2D>& nodes, const std::vector<Point2D>& smoothed) {
    const double x0 = kMarginLeft, x1 = kWidth - kMarginRight;
    const double y0 = kHeight - kMarginBottom, y1 = kMarginTop;
    auto sx = [&](double x) { return x0 + (x - lo.x) / (hi.x - lo.x) * (x1 - x0); };
    auto sz = [&](double z) { return y0 - (z - lo.z) / (hi.z - lo.z) * (y0 - y1); };

    out << "<rect x=\"" << sx(lo.x) << "\" y=\"" << sz(hi.z) << "\" width=\""
        << sx(hi.x) - sx(lo.x) << "\" height=\"" << sz(lo.z) - sz(hi.z)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (const Polygon2D& poly : polygons) {
        out << "<polygon fill=\"#c44e52\" fill-opacity=\"0.5\" stroke=\"#c44e52\" points=\"";
        for (const Point2D& v : poly.vertices) out << fmt(sx(v.x)) << "," << fmt(sz(v.z)) << " ";
        out << "\"/>\n";
    }
    auto polyline = [&](const std::vector<Point2D>& pts, const char* color, double width) {
        if (pts.size() < 2) return;
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
            << "\" points=\"";
        for (const Point2D& p : pts) out << fmt(sx(p.x)) << "," << fmt(sz(p.z)) << " ";
        out << "\"/>\n";
    };
    polyline(nodes, "#1f77b4", 1.5);
    polyline(smoothed, "#e8b810", 2.5);
    for (const Point2D& p : nodes)
        out << "<circle cx=\"" << fmt(sx(p.x)) << "\" cy=\"" << fmt(sz(p.z))
            << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    out << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 15
        << "\" text-anchor=\"middle\" font-size=\"14\">x (mm)</text>\n";
    out << "<text x=\"20\" y=\"" << (y0 + y1) / 2
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 20 "
        << (y0 + y1) / 2 << ")\">z (mm)</text>\n";
}

}  // namespace

void write_environment_svg(const Environment& env, const std::vector<Point3D>& nodes,
                           const std::vector<Point3D>& smoothed,
                           const std::filesystem::path& path) {
    const Environment2D flat = project_to_xoz(env);
    std::vector<Point2D> nodes2, smoothed2;
    for (const Point3D& p : nodes) nodes2.push_back({p.x, p.z});
    for (const Point3D& p : smoothed) smoothed2.push_back({p.x, p.z});
    std::vector<Polygon2D> polys;
    for (const Obstacle2D& o : flat.obstacles) polys.push_back(o.polygon);

    std::ostringstream out;
    open_svg(out);
    draw_scene(out, flat.bounds_min, flat.bounds_max, polys, nodes2, smoothed2);
    out << "</svg>\n";
    write_text_atomic(path, out.str());
}

void write_environment_svg_2d(const Environment2D& env, const std::vector<Point2D>& nodes,
                              const std::vector<Point2D>& smoothed,
                              const std::filesystem::path& path) {
    std::vector<Polygon2D> polys;
    for (const Obstacle2D& o : env.obstacles) polys.push_back(o.polygon);
    std::ostringstream out;
    open_svg(out);
    draw_scene(out, env.bounds_min, env.bounds_max, polys, nodes, smoothed);
    out << "</svg>\n";
    write_text_atomic(path, out.str());
}

}  // namespace ilmsa
