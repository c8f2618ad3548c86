#pragma once

// Minimal self-contained SVG 1.1 output: polyline plots and rectangle
// heatmaps, no external dependencies.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace svgplot {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#c0392b";
};

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline void write_line_plot(const std::string& path, const std::vector<Series>& series,
                            const std::string& title, const std::string& xlabel,
                            const std::string& ylabel) {
    const double width = 640, height = 480, ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Series& s : series) {
        for (double v : s.x) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
        for (double v : s.y) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#333\"/>\n";
    // axis ticks
    for (int i = 0; i <= 5; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 5.0;
        const double fy = ymin + (ymax - ymin) * i / 5.0;
        out << "<text x=\"" << fmt(px(fx)) << "\" y=\"" << fmt(height - mb + 18)
            << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(fx) << "</text>\n";
        out << "<text x=\"" << fmt(ml - 6) << "\" y=\"" << fmt(py(fy) + 4)
            << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(fy) << "</text>\n";
    }
    for (const Series& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < s.x.size(); ++i)
            out << fmt(px(s.x[i])) << "," << fmt(py(s.y[i])) << " ";
        out << "\"/>\n";
    }
    out << "<text x=\"" << width / 2 << "\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">"
        << title << "</text>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
        << "\" font-size=\"12\" text-anchor=\"middle\">" << xlabel << "</text>\n";
    out << "<text x=\"16\" y=\"" << height / 2
        << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << height / 2 << ")\">" << ylabel << "</text>\n";
    out << "</svg>\n";
}

// Scatter heatmap: one small rect per sample, blue (low) to red (high).
inline void write_heatmap(const std::string& path, const std::vector<double>& x,
                          const std::vector<double>& y, const std::vector<double>& v,
                          double cell, const std::string& title) {
    const double width = 560, height = 560, ml = 40, mt = 40;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300, vmin = 1e300,
           vmax = -1e300;
    for (size_t i = 0; i < x.size(); ++i) {
        xmin = std::min(xmin, x[i]);
        xmax = std::max(xmax, x[i]);
        ymin = std::min(ymin, y[i]);
        ymax = std::max(ymax, y[i]);
        vmin = std::min(vmin, v[i]);
        vmax = std::max(vmax, v[i]);
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    if (!(vmax > vmin)) vmax = vmin + 1.0;
    const double scale = std::min((width - 2 * ml) / (xmax - xmin),
                                  (height - 2 * mt) / (ymax - ymin));
    const double c = cell * scale;

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (size_t i = 0; i < x.size(); ++i) {
        const double t = (v[i] - vmin) / (vmax - vmin);
        const int r = static_cast<int>(255 * t);
        const int b = static_cast<int>(255 * (1.0 - t));
        const double cx = ml + (x[i] - xmin) * scale;
        const double cy = mt + (ymax - y[i]) * scale;
        out << "<rect x=\"" << fmt(cx - c / 2) << "\" y=\"" << fmt(cy - c / 2) << "\" width=\""
            << fmt(c) << "\" height=\"" << fmt(c) << "\" fill=\"rgb(" << r << ",60," << b
            << ")\"/>\n";
    }
    out << "<text x=\"" << width / 2 << "\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">"
        << title << "</text>\n";
    out << "</svg>\n";
}

} // namespace svgplot
