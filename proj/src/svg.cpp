#include "rydgate/svg.hpp"

#include "rydgate/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace rydgate::svg {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Axis {
    bool log = false;
    double lo = 0.0;
    double hi = 1.0;

    double map(double v) const { return log ? std::log10(v) : v; }
    bool valid(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
};

Axis make_axis(const std::vector<double>& values, bool log, const char* which) {
    Axis ax;
    ax.log = log;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : values) {
        if (!ax.valid(v)) continue;
        lo = std::min(lo, ax.map(v));
        hi = std::max(hi, ax.map(v));
    }
    if (!std::isfinite(lo)) {
        if (log) throw InvalidArgument(std::string("log ") + which + " axis has no positive data");
        lo = 0.0;
        hi = 1.0;
    }
    if (log) {
        lo = std::floor(lo);
        hi = std::ceil(hi);
        if (hi == lo) hi = lo + 1.0;
    } else {
        if (hi == lo) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
    ax.lo = lo;
    ax.hi = hi;
    return ax;
}

std::vector<double> ticks(const Axis& ax) {
    std::vector<double> out;  // in data units
    if (ax.log) {
        const int span = static_cast<int>(ax.hi - ax.lo);
        for (int e = static_cast<int>(ax.lo); e <= static_cast<int>(ax.hi); ++e) {
            out.push_back(std::pow(10.0, e));
            if (span <= 2 && e < static_cast<int>(ax.hi)) {
                out.push_back(2.0 * std::pow(10.0, e));
                out.push_back(5.0 * std::pow(10.0, e));
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    const double raw = (ax.hi - ax.lo) / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    }
    for (double v = std::ceil(ax.lo / step) * step; v <= ax.hi + 1e-9 * step; v += step) {
        out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    }
    return out;
}

}  // namespace

std::string render(const Plot& plot, int width, int height) {
    std::vector<double> xs, ys;
    for (const auto& s : plot.series) {
        for (const auto& [x, y] : s.points) {
            xs.push_back(x);
            ys.push_back(y);
        }
    }
    const Axis ax = make_axis(xs, plot.log_x, "x");
    const Axis ay = make_axis(ys, plot.log_y, "y");

    const double left = 80, right = 160, top = 40, bottom = 60;
    const double pw = width - left - right, ph = height - top - bottom;
    auto px = [&](double x) { return left + (ax.map(x) - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto py = [&](double y) { return top + ph - (ay.map(y) - ay.lo) / (ay.hi - ay.lo) * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
           std::to_string(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(left + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
           escape(plot.title) + "</text>\n";
    out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double t : ticks(ax)) {
        if (ax.map(t) < ax.lo - 1e-9 || ax.map(t) > ax.hi + 1e-9) continue;
        const double x = px(t);
        out += "<line x1=\"" + num(x) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(x) + "\" y2=\"" +
               num(top + ph + 5) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(x) + "\" y=\"" + num(top + ph + 18) + "\" text-anchor=\"middle\">" +
               tick_label(t) + "</text>\n";
    }
    for (double t : ticks(ay)) {
        if (ay.map(t) < ay.lo - 1e-9 || ay.map(t) > ay.hi + 1e-9) continue;
        const double y = py(t);
        out += "<line x1=\"" + num(left - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(left) + "\" y2=\"" + num(y) +
               "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(left - 8) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" + tick_label(t) +
               "</text>\n";
    }
    out += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(height - 15.0) + "\" text-anchor=\"middle\">" +
           escape(plot.x_label) + "</text>\n";
    out += "<text x=\"20\" y=\"" + num(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
           num(top + ph / 2) + ")\">" + escape(plot.y_label) + "</text>\n";

    for (const auto& m : plot.markers) {
        if (!ax.valid(m.x)) continue;
        const double x = px(m.x);
        out += "<line x1=\"" + num(x) + "\" y1=\"" + num(top) + "\" x2=\"" + num(x) + "\" y2=\"" + num(top + ph) +
               "\" stroke=\"gray\" stroke-dasharray=\"2,3\"/>\n";
        out += "<text x=\"" + num(x + 3) + "\" y=\"" + num(top + 12) + "\" fill=\"gray\">" + escape(m.label) +
               "</text>\n";
    }

    double legend_y = top + 10;
    for (const auto& s : plot.series) {
        std::string path;
        bool pen_down = false;
        for (const auto& [x, y] : s.points) {
            if (!ax.valid(x) || !ay.valid(y)) {
                pen_down = false;
                continue;
            }
            path += (pen_down ? " L" : (path.empty() ? "M" : " M")) + num(px(x)) + "," + num(py(y));
            pen_down = true;
        }
        if (!path.empty()) {
            out += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"" +
                   (s.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
        }
        if (s.markers) {
            for (const auto& [x, y] : s.points) {
                if (!ax.valid(x) || !ay.valid(y)) continue;
                out += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"2.5\" fill=\"" + s.color +
                       "\"/>\n";
            }
        }
        const double lx = left + pw + 12;
        out += "<line x1=\"" + num(lx) + "\" y1=\"" + num(legend_y) + "\" x2=\"" + num(lx + 24) + "\" y2=\"" +
               num(legend_y) + "\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"" +
               (s.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
        out += "<text x=\"" + num(lx + 30) + "\" y=\"" + num(legend_y + 4) + "\">" + escape(s.name) + "</text>\n";
        legend_y += 18;
    }
    out += "</svg>\n";
    return out;
}

void write_file(const std::string& path, const Plot& plot) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << render(plot);
}

}  // namespace rydgate::svg
