#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace svfb {

std::string version_string();

// Scientific notation with 16 significant digits; nan/inf spelled out.
std::string format_number(double v);

// '#'-prefixed header block: version line, key: value entries, then the
// config echo one line at a time.
struct Metadata {
    std::vector<std::pair<std::string, std::string>> entries;
    std::string config_echo;
};

class CsvWriter {
public:
    CsvWriter(const std::string& path, const Metadata& meta, const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    void row(const std::vector<std::string>& cells);
    void flush() { out_.flush(); }

private:
    std::ofstream out_;
    std::size_t width_;
};

struct PlotSeries {
    std::string name;
    std::vector<double> x, y;
};

// Hand-emitted SVG line chart; non-finite points are skipped and long series
// are decimated to at most 2000 points.
void write_svg_plot(const std::string& path, const std::string& title, const std::string& x_label,
                    const std::vector<PlotSeries>& series);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};
// Reads a numeric CSV written by CsvWriter (skips '#' lines).
CsvTable read_csv(const std::string& path);

}  // namespace svfb
