#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "cardsort/errors.hpp"
#include "cardsort/matrix.hpp"

namespace cardsort {

namespace svg_detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Sequential white-to-blue scale over [0, 1].
inline std::string scale_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const int r = static_cast<int>(std::lround(247.0 + t * (8.0 - 247.0)));
    const int g = static_cast<int>(std::lround(251.0 + t * (48.0 - 251.0)));
    const int b = static_cast<int>(std::lround(255.0 + t * (107.0 - 255.0)));
    return "rgb(" + std::to_string(r) + "," + std::to_string(g) + "," + std::to_string(b) + ")";
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << content;
    if (!out) throw InputError("write failed: " + path.string());
}

}  // namespace svg_detail

struct HeatmapOptions {
    int cell_size = 14;
    bool labels = true;
    double clip_min = 0.0;  // display floor; raw values live in the JSON report
    std::string title;
};

// Standalone n x n heatmap with a legend bar. Output bytes are a pure
// function of the matrix and options.
inline void render_heatmap_svg(const SimilarityMatrix& sim, const std::filesystem::path& out_path,
                               const HeatmapOptions& options = {}) {
    using namespace svg_detail;
    const std::size_t n = sim.size();
    if (n == 0) throw InputError("render_heatmap_svg: empty matrix");
    const bool labels = options.labels && n <= 60;
    const int cell = options.cell_size;
    const int margin_left = labels ? 90 : 12;
    const int margin_top = (labels ? 90 : 12) + (options.title.empty() ? 0 : 20);
    const int grid = static_cast<int>(n) * cell;
    const int legend_x = margin_left + grid + 24;
    const int width = legend_x + 70;
    const int height = margin_top + grid + 16;

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!options.title.empty())
        s += "<text x=\"" + std::to_string(margin_left) +
             "\" y=\"16\" font-family=\"sans-serif\" font-size=\"13\">" +
             xml_escape(options.title) + "</text>\n";

    const double lo = options.clip_min;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double value = sim.values(i, j);
            const double t = (value - lo) / (1.0 - lo);
            const int x = margin_left + static_cast<int>(j) * cell;
            const int y = margin_top + static_cast<int>(i) * cell;
            s += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) + "\" width=\"" +
                 std::to_string(cell) + "\" height=\"" + std::to_string(cell) + "\" fill=\"" +
                 scale_color(t) + "\"><title>" + xml_escape(sim.order[i]) + " / " +
                 xml_escape(sim.order[j]) + ": " + num(value) + "</title></rect>\n";
        }
    }

    if (labels) {
        for (std::size_t i = 0; i < n; ++i) {
            const int y = margin_top + static_cast<int>(i) * cell + cell / 2 + 4;
            s += "<text x=\"" + std::to_string(margin_left - 6) + "\" y=\"" + std::to_string(y) +
                 "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" +
                 xml_escape(sim.order[i]) + "</text>\n";
            const int x = margin_left + static_cast<int>(i) * cell + cell / 2 + 4;
            s += "<text x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(margin_top - 6) +
                 "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"start\" "
                 "transform=\"rotate(-90 " +
                 std::to_string(x) + " " + std::to_string(margin_top - 6) + ")\">" +
                 xml_escape(sim.order[i]) + "</text>\n";
        }
    }

    // legend: 64 steps from clip_min (bottom) to 1 (top)
    const int legend_h = std::max(grid, 64);
    for (int step = 0; step < 64; ++step) {
        const double t = (step + 0.5) / 64.0;
        const int y = margin_top + legend_h - (step + 1) * legend_h / 64;
        const int h = (step + 1) * legend_h / 64 - step * legend_h / 64;
        s += "<rect x=\"" + std::to_string(legend_x) + "\" y=\"" + std::to_string(y) +
             "\" width=\"14\" height=\"" + std::to_string(h) + "\" fill=\"" + scale_color(t) +
             "\"/>\n";
    }
    s += "<text x=\"" + std::to_string(legend_x + 18) + "\" y=\"" + std::to_string(margin_top + 10) +
         "\" font-family=\"sans-serif\" font-size=\"10\">1</text>\n";
    s += "<text x=\"" + std::to_string(legend_x + 18) + "\" y=\"" +
         std::to_string(margin_top + legend_h) + "\" font-family=\"sans-serif\" font-size=\"10\">" +
         num(lo) + "</text>\n";
    s += "</svg>\n";
    write_file(out_path, s);
}

// Line plot for the LSA dimension sweep: one point per k, plus a dashed
// reference line at the TF-IDF (no SVD) correlation.
inline void render_line_svg(const std::vector<std::pair<std::size_t, double>>& points,
                            double reference, const std::string& reference_label,
                            const std::filesystem::path& out_path) {
    using namespace svg_detail;
    if (points.empty()) throw InputError("render_line_svg: no points");
    const int width = 520, height = 320;
    const int ml = 60, mr = 20, mt = 20, mb = 40;
    const int plot_w = width - ml - mr;
    const int plot_h = height - mt - mb;

    double y_min = reference, y_max = reference;
    for (const auto& [k, r] : points) {
        y_min = std::min(y_min, r);
        y_max = std::max(y_max, r);
    }
    const double pad = std::max(0.02, (y_max - y_min) * 0.1);
    y_min -= pad;
    y_max += pad;
    const double x_min = static_cast<double>(points.front().first);
    const double x_max = static_cast<double>(points.back().first);

    auto px = [&](double k) {
        return x_max == x_min ? ml + plot_w / 2.0 : ml + (k - x_min) / (x_max - x_min) * plot_w;
    };
    auto py = [&](double r) { return mt + (y_max - r) / (y_max - y_min) * plot_h; };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<line x1=\"" + std::to_string(ml) + "\" y1=\"" + std::to_string(mt) + "\" x2=\"" +
         std::to_string(ml) + "\" y2=\"" + std::to_string(mt + plot_h) +
         "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + std::to_string(ml) + "\" y1=\"" + std::to_string(mt + plot_h) +
         "\" x2=\"" + std::to_string(ml + plot_w) + "\" y2=\"" + std::to_string(mt + plot_h) +
         "\" stroke=\"black\"/>\n";

    for (int tick = 0; tick <= 4; ++tick) {
        const double r = y_min + (y_max - y_min) * tick / 4.0;
        s += "<text x=\"" + std::to_string(ml - 8) + "\" y=\"" + num(py(r) + 3) +
             "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" + num(r) +
             "</text>\n";
        s += "<line x1=\"" + std::to_string(ml - 4) + "\" y1=\"" + num(py(r)) + "\" x2=\"" +
             std::to_string(ml) + "\" y2=\"" + num(py(r)) + "\" stroke=\"black\"/>\n";
    }
    for (const auto& [k, r] : points) {
        s += "<text x=\"" + num(px(static_cast<double>(k))) + "\" y=\"" +
             std::to_string(mt + plot_h + 16) +
             "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" +
             std::to_string(k) + "</text>\n";
    }

    s += "<line x1=\"" + std::to_string(ml) + "\" y1=\"" + num(py(reference)) + "\" x2=\"" +
         std::to_string(ml + plot_w) + "\" y2=\"" + num(py(reference)) +
         "\" stroke=\"gray\" stroke-dasharray=\"5,3\"/>\n";
    s += "<text x=\"" + std::to_string(ml + plot_w - 4) + "\" y=\"" + num(py(reference) - 4) +
         "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\" fill=\"gray\">" +
         xml_escape(reference_label) + "</text>\n";

    std::string poly;
    for (const auto& [k, r] : points) {
        if (!poly.empty()) poly += " ";
        poly += num(px(static_cast<double>(k))) + "," + num(py(r));
    }
    s += "<polyline points=\"" + poly + "\" fill=\"none\" stroke=\"rgb(8,48,107)\" "
         "stroke-width=\"1.5\"/>\n";
    for (const auto& [k, r] : points) {
        s += "<circle cx=\"" + num(px(static_cast<double>(k))) + "\" cy=\"" + num(py(r)) +
             "\" r=\"2.5\" fill=\"rgb(8,48,107)\"/>\n";
    }
    s += "<text x=\"" + std::to_string(ml + plot_w / 2) + "\" y=\"" + std::to_string(height - 6) +
         "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">dimensions</text>\n";
    s += "</svg>\n";
    write_file(out_path, s);
}

}  // namespace cardsort
