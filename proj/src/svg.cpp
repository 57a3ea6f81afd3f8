// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "flowlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "flowlab/error.hpp"

namespace flowlab {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;  // data coordinates
};

void begin_svg(std::ostringstream& out, const PlotOptions& options) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
        << options.height << "\" viewBox=\"0 0 " << options.width << " " << options.height
        << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
        << "\" fill=\"white\"/>\n";
    if (!options.title.empty()) {
        out << "<text x=\"" << options.width / 2
            << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">"
            << options.title << "</text>\n";
    }
}

void draw_frame_and_axes(std::ostringstream& out, const PlotFrame& frame, double x_step,
                         double y_step, const std::string& x_label, const std::string& y_label) {
    const double plot_right = static_cast<double>(frame.width) - frame.right;
    const double plot_bottom = static_cast<double>(frame.height) - frame.bottom;
    out << "<rect x=\"" << svg_coord(frame.left) << "\" y=\"" << svg_coord(frame.top)
        << "\" width=\"" << svg_coord(plot_right - frame.left) << "\" height=\""
        << svg_coord(plot_bottom - frame.top)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    char label[64];
    for (double x = std::ceil(frame.x0 / x_step) * x_step; x <= frame.x1 + 1e-9 * x_step;
         x += x_step) {
        const double px = frame.px(x);
        out << "<line x1=\"" << svg_coord(px) << "\" y1=\"" << svg_coord(plot_bottom) << "\" x2=\""
            << svg_coord(px) << "\" y2=\"" << svg_coord(plot_bottom + 5)
            << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        std::snprintf(label, sizeof(label), "%.6g", x + 0.0);  // +0.0 avoids "-0"
        out << "<text x=\"" << svg_coord(px) << "\" y=\"" << svg_coord(plot_bottom + 20)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << label
            << "</text>\n";
    }
    for (double y = std::ceil(frame.y0 / y_step) * y_step; y <= frame.y1 + 1e-9 * y_step;
         y += y_step) {
        const double py = frame.py(y);
        out << "<line x1=\"" << svg_coord(frame.left - 5) << "\" y1=\"" << svg_coord(py)
            << "\" x2=\"" << svg_coord(frame.left) << "\" y2=\"" << svg_coord(py)
            << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        std::snprintf(label, sizeof(label), "%.6g", y + 0.0);
        out << "<text x=\"" << svg_coord(frame.left - 9) << "\" y=\"" << svg_coord(py + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << label
            << "</text>\n";
    }
    out << "<text x=\"" << svg_coord((frame.left + plot_right) / 2) << "\" y=\""
        << svg_coord(static_cast<double>(frame.height) - 12)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" << x_label
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << svg_coord((frame.top + plot_bottom) / 2)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << svg_coord((frame.top + plot_bottom) / 2) << ")\">" << y_label << "</text>\n";
}

void draw_no_data(std::ostringstream& out, const PlotOptions& options) {
    out << "<text x=\"" << options.width / 2 << "\" y=\"" << options.height / 2
        << "\" font-family=\"sans-serif\" font-size=\"18\" text-anchor=\"middle\" fill=\"#888888\">no data</text>\n";
}

void draw_series(std::ostringstream& out, const PlotFrame& frame, const std::vector<Series>& all) {
    for (std::size_t si = 0; si < all.size(); ++si) {
        const auto& series = all[si];
        const char* color = kPalette[si % kPaletteSize];
        if (series.points.size() > 1) {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < series.points.size(); ++i) {
                if (i) out << ' ';
                out << svg_coord(frame.px(series.points[i].first)) << ','
                    << svg_coord(frame.py(series.points[i].second));
            }
            out << "\"/>\n";
        }
        for (const auto& [x, y] : series.points) {
            out << "<circle cx=\"" << svg_coord(frame.px(x)) << "\" cy=\"" << svg_coord(frame.py(y))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
    }
    // Legend, top-right inside the frame.
    const double lx = static_cast<double>(frame.width) - frame.right - 150.0;
    double ly = frame.top + 14.0;
    for (std::size_t si = 0; si < all.size(); ++si) {
        const char* color = kPalette[si % kPaletteSize];
        out << "<rect x=\"" << svg_coord(lx) << "\" y=\"" << svg_coord(ly - 8)
            << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << svg_coord(lx + 15) << "\" y=\"" << svg_coord(ly + 1)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << all[si].name << "</text>\n";
        ly += 16.0;
    }
}

std::string render_histogram(const CsvTable& data, const PlotOptions& options) {
    const std::size_t theta_col = data.column_index("theta_deg");
    constexpr std::size_t kBins = 36;
    std::vector<std::size_t> bins(kBins, 0);
    std::size_t total = 0;
    for (const auto& row : data.rows) {
        if (row[theta_col].empty()) continue;
        const double theta = parse_double(row[theta_col]);
        const auto bin = std::min(kBins - 1, static_cast<std::size_t>(theta / (180.0 / kBins)));
        ++bins[bin];
        ++total;
    }

    std::ostringstream out;
    begin_svg(out, options);
    if (total == 0) {
        PlotFrame frame;
        frame.width = options.width;
        frame.height = options.height;
        frame.x0 = 0.0;
        frame.x1 = 180.0;
        frame.y0 = 0.0;
        frame.y1 = 1.0;
        draw_frame_and_axes(out, frame, 30.0, 0.25, "theta (deg)", "count");
        draw_no_data(out, options);
        out << "</svg>\n";
        return out.str();
    }

    const double max_count = static_cast<double>(*std::max_element(bins.begin(), bins.end()));
    double y1, y_lo, y_step;
    nice_axis(0.0, max_count, y_lo, y1, y_step);
    PlotFrame frame;
    frame.width = options.width;
    frame.height = options.height;
    frame.x0 = 0.0;
    frame.x1 = 180.0;
    frame.y0 = 0.0;
    frame.y1 = y1;
    draw_frame_and_axes(out, frame, 30.0, y_step, "theta (deg)", "count");
    const double bin_width_deg = 180.0 / kBins;
    for (std::size_t b = 0; b < kBins; ++b) {
        if (bins[b] == 0) continue;
        const double x_lo = static_cast<double>(b) * bin_width_deg;
        const double x_hi = x_lo + bin_width_deg;
        const double y = static_cast<double>(bins[b]);
        out << "<rect x=\"" << svg_coord(frame.px(x_lo)) << "\" y=\"" << svg_coord(frame.py(y))
            << "\" width=\"" << svg_coord(frame.px(x_hi) - frame.px(x_lo)) << "\" height=\""
            << svg_coord(frame.py(0.0) - frame.py(y))
            << "\" fill=\"#1f77b4\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_xy(const CsvTable& data, const PlotOptions& options, bool tradeoff) {
    std::vector<Series> all;
    std::string x_label;
    std::string y_label;
    if (tradeoff) {
        const std::size_t series_col = data.column_index("series");
        const std::size_t s_col = data.column_index("s");
        const std::size_t y_col = data.column_index("edit_effect");
        const std::size_t x_col = data.column_index(options.x_column);
        x_label = options.x_column;
        y_label = "edit_effect";
        std::map<std::string, std::size_t> index;
        std::vector<std::vector<std::pair<double, std::pair<double, double>>>> keyed;
        std::vector<std::string> names;
        for (const auto& row : data.rows) {
            if (row[x_col].empty() || row[y_col].empty()) continue;
            const auto& name = row[series_col];
            if (!index.count(name)) {
                index[name] = names.size();
                names.push_back(name);
                keyed.emplace_back();
            }
            keyed[index[name]].push_back(
                {parse_double(row[s_col]), {parse_double(row[x_col]), parse_double(row[y_col])}});
        }
        for (std::size_t i = 0; i < names.size(); ++i) {
            std::stable_sort(keyed[i].begin(), keyed[i].end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
            Series s;
            s.name = names[i];
            for (const auto& [sv, xy] : keyed[i]) s.points.push_back(xy);
            all.push_back(std::move(s));
        }
    } else {
        const std::size_t series_col = data.column_index("series");
        const std::size_t step_col = data.column_index("step");
        const std::size_t z0_col = data.column_index("z0");
        const std::size_t z1_col = data.column_index("z1");
        x_label = "z0";
        y_label = "z1";
        std::map<std::string, std::size_t> index;
        std::vector<std::vector<std::pair<double, std::pair<double, double>>>> keyed;
        std::vector<std::string> names;
        for (const auto& row : data.rows) {
            const auto& name = row[series_col];
            if (!index.count(name)) {
                index[name] = names.size();
                names.push_back(name);
                keyed.emplace_back();
            }
            keyed[index[name]].push_back(
                {parse_double(row[step_col]), {parse_double(row[z0_col]), parse_double(row[z1_col])}});
        }
        for (std::size_t i = 0; i < names.size(); ++i) {
            std::stable_sort(keyed[i].begin(), keyed[i].end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
            Series s;
            s.name = names[i];
            for (const auto& [sv, xy] : keyed[i]) s.points.push_back(xy);
            all.push_back(std::move(s));
        }
    }

    std::ostringstream out;
    begin_svg(out, options);
    bool any = false;
    double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
    for (const auto& s : all) {
        for (const auto& [x, y] : s.points) {
            if (!any) {
                x_min = x_max = x;
                y_min = y_max = y;
                any = true;
            }
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    PlotFrame frame;
    frame.width = options.width;
    frame.height = options.height;
    if (!any) {
        frame.x0 = 0.0;
        frame.x1 = 1.0;
        frame.y0 = 0.0;
        frame.y1 = 1.0;
        draw_frame_and_axes(out, frame, 0.25, 0.25, x_label, y_label);
        draw_no_data(out, options);
        out << "</svg>\n";
        return out.str();
    }
    double x_step, y_step;
    nice_axis(x_min, x_max, frame.x0, frame.x1, x_step);
    nice_axis(y_min, y_max, frame.y0, frame.y1, y_step);
    draw_frame_and_axes(out, frame, x_step, y_step, x_label, y_label);
    draw_series(out, frame, all);
    out << "</svg>\n";
    return out.str();
}

}  // namespace

std::string to_string(PlotKind kind) {
    switch (kind) {
        case PlotKind::angle_hist: return "angle_hist";
        case PlotKind::tradeoff: return "tradeoff";
        case PlotKind::trajectory2d: return "trajectory2d";
    }
    throw Error(errkind::internal, "unknown plot kind");
}

PlotKind plot_kind_from_string(const std::string& name) {
    if (name == "angle_hist") return PlotKind::angle_hist;
    if (name == "tradeoff") return PlotKind::tradeoff;
    if (name == "trajectory2d") return PlotKind::trajectory2d;
    throw Error(errkind::invalid_argument, "unknown plot kind '" + name + "'");
}

void nice_axis(double lo, double hi, double& out_lo, double& out_hi, double& out_step) {
    if (!(hi > lo)) {
        const double pad = std::max(1.0, std::abs(lo)) * 0.5;
        lo -= pad;
        hi += pad;
    }
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double step;
    if (frac <= 1.0) {
        step = 1.0;
    } else if (frac <= 2.0) {
        step = 2.0;
    } else if (frac <= 5.0) {
        step = 5.0;
    } else {
        step = 10.0;
    }
    out_step = step * mag;
    out_lo = std::floor(lo / out_step) * out_step;
    out_hi = std::ceil(hi / out_step) * out_step;
}

std::string svg_coord(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

std::string render_plot_text(PlotKind kind, const CsvTable& data, const PlotOptions& options) {
    switch (kind) {
        case PlotKind::angle_hist: return render_histogram(data, options);
        case PlotKind::tradeoff: return render_xy(data, options, true);
        case PlotKind::trajectory2d: return render_xy(data, options, false);
    }
    throw Error(errkind::internal, "unknown plot kind");
}

void render_plot(PlotKind kind, const std::filesystem::path& csv_path,
                 const std::filesystem::path& svg_path, const PlotOptions& options) {
    const CsvTable data = CsvTable::read_file(csv_path);
    PlotOptions opts = options;
    if (opts.title.empty()) opts.title = to_string(kind);
    const std::string text = render_plot_text(kind, data, opts);
    std::ofstream out(svg_path, std::ios::binary);
    if (!out) throw Error(errkind::io, "cannot write svg file '" + svg_path.string() + "'");
    out << text;
}

}  // namespace flowlab
