#include "report_io.hpp"
#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

namespace eh {

std::string format_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

CsvBuilder::CsvBuilder(std::vector<std::string> header) : columns_(header.size()) {
    raw_row(header);
}

void CsvBuilder::row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_sci(v));
    raw_row(cells);
}

void CsvBuilder::raw_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_)
        throw ConfigError("csv row width does not match the header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) text_ += ',';
        text_ += cells[i];
    }
    text_ += '\n';
}

namespace {

constexpr double kW = 640, kH = 480;
constexpr double kMargin = 64;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

} // namespace

std::string render_line_plot(const PlotSpec& spec) {
    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    std::vector<PlotSeries> usable;
    for (const PlotSeries& s : spec.series) {
        PlotSeries u{s.label, {}};
        for (const auto& p : s.points) {
            if (!std::isfinite(p[0]) || !std::isfinite(p[1])) continue;
            if (spec.logx && p[0] <= 0.0) continue;
            if (spec.logy && p[1] <= 0.0) continue;
            u.points.push_back(p);
            const double px = spec.logx ? std::log10(p[0]) : p[0];
            const double py = spec.logy ? std::log10(p[1]) : p[1];
            x_min = std::min(x_min, px);
            x_max = std::max(x_max, px);
            y_min = std::min(y_min, py);
            y_max = std::max(y_max, py);
        }
        usable.push_back(std::move(u));
    }
    if (!(x_min <= x_max)) {
        x_min = 0;
        x_max = 1;
        y_min = 0;
        y_max = 1;
    }
    if (x_max - x_min < 1e-12) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    if (y_max - y_min < 1e-12) {
        y_min -= 0.5;
        y_max += 0.5;
    }
    auto tx = [&](double v) {
        const double p = spec.logx ? std::log10(v) : v;
        return kMargin + (p - x_min) / (x_max - x_min) * (kW - 2 * kMargin);
    };
    auto ty = [&](double v) {
        const double p = spec.logy ? std::log10(v) : v;
        return kH - kMargin - (p - y_min) / (y_max - y_min) * (kH - 2 * kMargin);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kW) +
           "\" height=\"" + num(kH) + "\" viewBox=\"0 0 " + num(kW) + " " + num(kH) +
           "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num(kW / 2) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">" + spec.title + "</text>\n";
    // axes
    svg += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(kH - kMargin) + "\" x2=\"" +
           num(kW - kMargin) + "\" y2=\"" + num(kH - kMargin) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(kMargin) + "\" x2=\"" +
           num(kMargin) + "\" y2=\"" + num(kH - kMargin) + "\" stroke=\"black\"/>\n";
    // ticks
    for (int i = 0; i <= 4; ++i) {
        const double fx = x_min + (x_max - x_min) * i / 4.0;
        const double fy = y_min + (y_max - y_min) * i / 4.0;
        const double vx = spec.logx ? std::pow(10.0, fx) : fx;
        const double vy = spec.logy ? std::pow(10.0, fy) : fy;
        const double px = kMargin + (kW - 2 * kMargin) * i / 4.0;
        const double py = kH - kMargin - (kH - 2 * kMargin) * i / 4.0;
        svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(kH - kMargin) + "\" x2=\"" +
               num(px) + "\" y2=\"" + num(kH - kMargin + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(px) + "\" y=\"" + num(kH - kMargin + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">" + num(vx) + "</text>\n";
        svg += "<line x1=\"" + num(kMargin - 5) + "\" y1=\"" + num(py) + "\" x2=\"" +
               num(kMargin) + "\" y2=\"" + num(py) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(kMargin - 8) + "\" y=\"" + num(py + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               num(vy) + "</text>\n";
    }
    svg += "<text x=\"" + num(kW / 2) + "\" y=\"" + num(kH - 16) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           spec.xlabel + "</text>\n";
    svg += "<text x=\"18\" y=\"" + num(kH / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " + num(kH / 2) + ")\">" + spec.ylabel +
           "</text>\n";
    // series
    for (std::size_t s = 0; s < usable.size(); ++s) {
        const char* color = kPalette[s % 5];
        if (usable[s].points.size() >= 2) {
            svg += "<polyline fill=\"none\" stroke=\"";
            svg += color;
            svg += "\" stroke-width=\"1.5\" points=\"";
            for (const auto& p : usable[s].points)
                svg += num(tx(p[0])) + "," + num(ty(p[1])) + " ";
            svg += "\"/>\n";
        }
        for (const auto& p : usable[s].points)
            svg += "<circle cx=\"" + num(tx(p[0])) + "\" cy=\"" + num(ty(p[1])) +
                   "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
        svg += "<text x=\"" + num(kW - kMargin - 4) + "\" y=\"" +
               num(kMargin + 16.0 * (s + 1)) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
               "fill=\"" + color + "\">" + usable[s].label + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& data) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file '" + path + "'");
    f << content;
    if (!f) throw ConfigError("failed writing output file '" + path + "'");
}

} // namespace eh
