#pragma once

// Minimal static SVG line plots: one axes box, optional log scales, a few
// polyline series.  No dependencies, output is a plain string.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace weylab::svg {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
    std::string color = "#1f77b4";
    bool markers = false;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    int width = 720;
    int height = 480;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace detail

inline std::string line_plot(const PlotSpec& spec, const std::vector<Series>& series) {
    const double ml = 70, mr = 20, mt = 40, mb = 55;
    const double pw = spec.width - ml - mr, ph = spec.height - mt - mb;

    auto tx = [&](double v) { return spec.log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return spec.log_y ? std::log10(v) : v; };

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Series& s : series)
        for (auto [x, y] : s.points) {
            if (spec.log_x && !(x > 0)) continue;
            if (spec.log_y && !(y > 0)) continue;
            xmin = std::min(xmin, tx(x));
            xmax = std::max(xmax, tx(x));
            ymin = std::min(ymin, ty(y));
            ymax = std::max(ymax, ty(y));
        }
    if (xmin > xmax) {
        xmin = 0;
        xmax = 1;
    }
    if (ymin > ymax) {
        ymin = 0;
        ymax = 1;
    }
    if (xmax - xmin < 1e-12) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax - ymin < 1e-12) {
        ymin -= 0.5;
        ymax += 0.5;
    }

    auto px = [&](double v) { return ml + (tx(v) - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double v) { return mt + ph - (ty(v) - ymin) / (ymax - ymin) * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) +
           "\" height=\"" + std::to_string(spec.height) + "\" viewBox=\"0 0 " +
           std::to_string(spec.width) + " " + std::to_string(spec.height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + detail::fmt(spec.width / 2.0) +
           "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
           spec.title + "</text>\n";
    out += "<rect x=\"" + detail::fmt(ml) + "\" y=\"" + detail::fmt(mt) + "\" width=\"" +
           detail::fmt(pw) + "\" height=\"" + detail::fmt(ph) +
           "\" fill=\"none\" stroke=\"#333\"/>\n";

    // 5 ticks per axis, labelled in data units
    for (int i = 0; i <= 4; ++i) {
        double fx = xmin + (xmax - xmin) * i / 4.0;
        double fy = ymin + (ymax - ymin) * i / 4.0;
        double gx = ml + pw * i / 4.0;
        double gy = mt + ph - ph * i / 4.0;
        double label_x = spec.log_x ? std::pow(10.0, fx) : fx;
        double label_y = spec.log_y ? std::pow(10.0, fy) : fy;
        out += "<line x1=\"" + detail::fmt(gx) + "\" y1=\"" + detail::fmt(mt + ph) + "\" x2=\"" +
               detail::fmt(gx) + "\" y2=\"" + detail::fmt(mt + ph + 5) + "\" stroke=\"#333\"/>\n";
        out += "<text x=\"" + detail::fmt(gx) + "\" y=\"" + detail::fmt(mt + ph + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               detail::fmt(label_x) + "</text>\n";
        out += "<line x1=\"" + detail::fmt(ml - 5) + "\" y1=\"" + detail::fmt(gy) + "\" x2=\"" +
               detail::fmt(ml) + "\" y2=\"" + detail::fmt(gy) + "\" stroke=\"#333\"/>\n";
        out += "<text x=\"" + detail::fmt(ml - 8) + "\" y=\"" + detail::fmt(gy + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               detail::fmt(label_y) + "</text>\n";
    }
    out += "<text x=\"" + detail::fmt(ml + pw / 2) + "\" y=\"" + detail::fmt(mt + ph + 42) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + spec.x_label +
           "</text>\n";
    out += "<text x=\"16\" y=\"" + detail::fmt(mt + ph / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 " +
           detail::fmt(mt + ph / 2) + ")\">" + spec.y_label + "</text>\n";

    double legend_y = mt + 14;
    for (const Series& s : series) {
        if (s.points.size() > 1) {
            out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"";
            for (auto [x, y] : s.points) {
                if (spec.log_x && !(x > 0)) continue;
                if (spec.log_y && !(y > 0)) continue;
                out += detail::fmt(px(x)) + "," + detail::fmt(py(y)) + " ";
            }
            out += "\"/>\n";
        }
        if (s.markers || s.points.size() == 1) {
            for (auto [x, y] : s.points) {
                if (spec.log_x && !(x > 0)) continue;
                if (spec.log_y && !(y > 0)) continue;
                out += "<circle cx=\"" + detail::fmt(px(x)) + "\" cy=\"" + detail::fmt(py(y)) +
                       "\" r=\"2.5\" fill=\"" + s.color + "\"/>\n";
            }
        }
        if (!s.label.empty()) {
            out += "<rect x=\"" + detail::fmt(ml + pw - 150) + "\" y=\"" + detail::fmt(legend_y - 8) +
                   "\" width=\"10\" height=\"10\" fill=\"" + s.color + "\"/>\n";
            out += "<text x=\"" + detail::fmt(ml + pw - 135) + "\" y=\"" + detail::fmt(legend_y + 1) +
                   "\" font-family=\"sans-serif\" font-size=\"11\">" + s.label + "</text>\n";
            legend_y += 16;
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace weylab::svg
