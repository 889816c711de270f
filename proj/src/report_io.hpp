#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace eh {

/// Scientific notation with 17 significant digits, '.' decimal separator.
std::string format_sci(double v);

/// CSV with a header row; all numeric cells go through format_sci.
class CsvBuilder {
  public:
    explicit CsvBuilder(std::vector<std::string> header);
    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& cells);
    const std::string& text() const { return text_; }

  private:
    std::size_t columns_;
    std::string text_;
};

struct PlotSeries {
    std::string label;
    std::vector<std::array<double, 2>> points;
};

struct PlotSpec {
    std::string title, xlabel, ylabel;
    bool logx = false, logy = false;
    std::vector<PlotSeries> series;
};

/// Minimal SVG line plot: axes, ticks, polylines, legend. Points with
/// nonpositive coordinates are dropped on log axes. No timestamps or other
/// run-dependent metadata are embedded.
std::string render_line_plot(const PlotSpec& spec);

/// FNV-1a 64-bit content hash, for the output manifest.
std::uint64_t fnv1a64(const std::string& data);
std::string fnv1a64_hex(const std::string& data);

void write_text_file(const std::string& path, const std::string& content);

} // namespace eh
