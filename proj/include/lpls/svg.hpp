#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "lpls/sweep.hpp"

namespace lpls {

// Self-contained log-log SVG plot of a sweep: mean relative error with a
// +/- one standard deviation band and both forward-error bound curves.

namespace detail {

struct PlotBox {
    double x0, x1, y0, y1;         // data ranges (log10)
    double px0, px1, py0, py1;     // pixel ranges (py0 is the bottom)
    double X(double lx) const { return px0 + (lx - x0) / (x1 - x0) * (px1 - px0); }
    double Y(double ly) const { return py0 - (ly - y0) / (y1 - y0) * (py0 - py1); }
};

inline std::string svg_poly(const std::vector<std::pair<double, double>>& pts,
                            const char* style, bool close) {
    if (pts.empty()) return {};
    std::string s = close ? "<polygon points=\"" : "<polyline points=\"";
    char buf[64];
    for (const auto& [x, y] : pts) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", x, y);
        s += buf;
    }
    s += "\" style=\"";
    s += style;
    s += "\"/>\n";
    return s;
}

} // namespace detail

inline void write_sweep_svg(std::ostream& out, const std::vector<SweepRecord>& records,
                            const std::string& title = "") {
    const double W = 760, H = 520;
    detail::PlotBox box{};
    box.px0 = 70;
    box.px1 = W - 25;
    box.py0 = H - 55;
    box.py1 = 35;

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto see_y = [&](double v) {
        if (v > 0.0 && std::isfinite(v)) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    };
    for (const auto& r : records) {
        if (r.cond_target > 0.0) {
            xmin = std::min(xmin, r.cond_target);
            xmax = std::max(xmax, r.cond_target);
        }
        see_y(r.mean_rel_err);
        see_y(r.mean_rel_err + r.std_rel_err);
        see_y(r.bound_final);
        see_y(r.bound_final_cond2);
    }
    if (!(xmax >= xmin) || !(ymax >= ymin)) {
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\"/>\n";
        return;
    }
    box.x0 = std::log10(xmin) - 0.05;
    box.x1 = std::log10(xmax) + 0.05;
    if (box.x1 - box.x0 < 0.5) {
        box.x0 -= 0.5;
        box.x1 += 0.5;
    }
    box.y0 = std::log10(ymin) - 0.2;
    box.y1 = std::log10(ymax) + 0.2;
    const double band_floor = std::pow(10.0, box.y0);

    char buf[256];
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Decade grid and tick labels.
    for (int d = static_cast<int>(std::ceil(box.x0)); d <= std::floor(box.x1); ++d) {
        double px = box.X(d);
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                      "stroke=\"#dddddd\"/>\n",
                      px, box.py1, px, box.py0);
        out << buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" text-anchor=\"middle\" "
                      "font-family=\"sans-serif\">1e%d</text>\n",
                      px, box.py0 + 18.0, d);
        out << buf;
    }
    for (int d = static_cast<int>(std::ceil(box.y0)); d <= std::floor(box.y1); ++d) {
        double py = box.Y(d);
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                      "stroke=\"#dddddd\"/>\n",
                      box.px0, py, box.px1, py);
        out << buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" text-anchor=\"end\" "
                      "font-family=\"sans-serif\">1e%d</text>\n",
                      box.px0 - 6.0, py + 4.0, d);
        out << buf;
    }

    // +/- 1 std band around the mean (clipped below for the log scale).
    std::vector<std::pair<double, double>> band;
    for (const auto& r : records) {
        if (!(r.mean_rel_err > 0.0) || !std::isfinite(r.mean_rel_err)) continue;
        band.emplace_back(box.X(std::log10(r.cond_target)),
                          box.Y(std::log10(r.mean_rel_err + r.std_rel_err)));
    }
    for (auto it = records.rbegin(); it != records.rend(); ++it) {
        const auto& r = *it;
        if (!(r.mean_rel_err > 0.0) || !std::isfinite(r.mean_rel_err)) continue;
        double lo = std::max(r.mean_rel_err - r.std_rel_err, band_floor);
        band.emplace_back(box.X(std::log10(r.cond_target)), box.Y(std::log10(lo)));
    }
    out << detail::svg_poly(band, "fill:#aec7e8;fill-opacity:0.5;stroke:none", true);

    auto series = [&](auto get, const char* style) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : records) {
            double v = get(r);
            if (!(v > 0.0) || !std::isfinite(v)) continue;
            pts.emplace_back(box.X(std::log10(r.cond_target)), box.Y(std::log10(v)));
        }
        out << detail::svg_poly(pts, style, false);
    };
    series([](const SweepRecord& r) { return r.mean_rel_err; },
           "fill:none;stroke:#1f77b4;stroke-width:2");
    series([](const SweepRecord& r) { return r.bound_final; },
           "fill:none;stroke:#ff7f0e;stroke-width:2");
    series([](const SweepRecord& r) { return r.bound_final_cond2; },
           "fill:none;stroke:#d62728;stroke-width:1.5;stroke-dasharray:6 4");

    // Frame, axis labels, legend.
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                  "fill=\"none\" stroke=\"black\"/>\n",
                  box.px0, box.py1, box.px1 - box.px0, box.py0 - box.py1);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"13\" text-anchor=\"middle\" "
                  "font-family=\"sans-serif\">condition number cond2(H)</text>\n",
                  (box.px0 + box.px1) / 2, H - 14.0);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"16\" y=\"%.2f\" font-size=\"13\" text-anchor=\"middle\" "
                  "font-family=\"sans-serif\" transform=\"rotate(-90 16 %.2f)\">"
                  "relative solution error</text>\n",
                  (box.py0 + box.py1) / 2, (box.py0 + box.py1) / 2);
    out << buf;
    if (!title.empty())
        out << "<text x=\"" << (box.px0 + box.px1) / 2
            << "\" y=\"22\" font-size=\"14\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\">"
            << title << "</text>\n";

    const char* names[3] = {"mean relative error (+/- 1 std)", "bound, condF form",
                            "bound, cond2^2 form"};
    const char* colors[3] = {"#1f77b4", "#ff7f0e", "#d62728"};
    for (int i = 0; i < 3; ++i) {
        double ly = box.py1 + 16.0 + 18.0 * i;
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                      "stroke=\"%s\" stroke-width=\"2\"%s/>\n",
                      box.px0 + 10.0, ly, box.px0 + 38.0, ly, colors[i],
                      i == 2 ? " stroke-dasharray=\"6 4\"" : "");
        out << buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" "
                      "font-family=\"sans-serif\">%s</text>\n",
                      box.px0 + 44.0, ly + 4.0, names[i]);
        out << buf;
    }
    out << "</svg>\n";
}

} // namespace lpls
