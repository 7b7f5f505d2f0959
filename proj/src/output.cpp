#include "svfb/output.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#ifndef SVFB_VERSION
#define SVFB_VERSION "0.0.0"
#endif

namespace svfb {

std::string version_string() { return std::string("svfb ") + SVFB_VERSION; }

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.15e}", v);
}

CsvWriter::CsvWriter(const std::string& path, const Metadata& meta, const std::vector<std::string>& columns)
    : out_(path), width_(columns.size()) {
    if (!out_) throw std::runtime_error("cannot write '" + path + "'");
    out_ << "# " << version_string() << '\n';
    for (const auto& [k, v] : meta.entries) out_ << "# " << k << ": " << v << '\n';
    if (!meta.config_echo.empty()) {
        out_ << "# config:\n";
        std::istringstream is(meta.config_echo);
        std::string line;
        while (std::getline(is, line)) out_ << "#   " << line << '\n';
    }
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != width_) throw std::invalid_argument("CsvWriter: row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
    out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::invalid_argument("CsvWriter: row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
}

namespace {

std::string escape(const std::string& s) {
    std::string r;
    for (char c : s) {
        if (c == '<') r += "&lt;";
        else if (c == '>') r += "&gt;";
        else if (c == '&') r += "&amp;";
        else r += c;
    }
    return r;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::string& title, const std::string& x_label,
                    const std::vector<PlotSeries>& series) {
    constexpr double W = 720, H = 440, L = 80, R = 180, T = 40, B = 50;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) {
        const double pad = std::max(std::abs(ymin) * 0.05, 1e-12);
        ymin -= pad;
        ymax += pad;
    }
    auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif" font-size="12">)",
                       W, H)
        << '\n';
    out << fmt::format(R"(<rect width="{}" height="{}" fill="white"/>)", W, H) << '\n';
    out << fmt::format(R"(<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>)", (L + W - R) / 2,
                       escape(title))
        << '\n';
    out << fmt::format(R"(<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black"/>)", L, T, W - L - R,
                       H - T - B)
        << '\n';
    for (int k = 0; k <= 4; ++k) {
        const double xv = xmin + (xmax - xmin) * k / 4.0, yv = ymin + (ymax - ymin) * k / 4.0;
        out << fmt::format(R"(<text x="{:.1f}" y="{}" text-anchor="middle">{:.3g}</text>)", px(xv), H - B + 16, xv)
            << '\n';
        out << fmt::format(R"(<text x="{}" y="{:.1f}" text-anchor="end">{:.4g}</text>)", L - 6, py(yv) + 4, yv) << '\n';
        out << fmt::format(R"(<line x1="{}" x2="{}" y1="{:.1f}" y2="{:.1f}" stroke="#ddd"/>)", L, W - R, py(yv), py(yv))
            << '\n';
    }
    out << fmt::format(R"(<text x="{}" y="{}" text-anchor="middle">{}</text>)", (L + W - R) / 2, H - 12,
                       escape(x_label))
        << '\n';
    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& se = series[s];
        const std::size_t n = std::min(se.x.size(), se.y.size());
        const std::size_t stride = std::max<std::size_t>(1, (n + 1999) / 2000);
        std::string pts;
        for (std::size_t i = 0; i < n; i += stride) {
            if (!std::isfinite(se.x[i]) || !std::isfinite(se.y[i])) continue;
            pts += fmt::format("{:.2f},{:.2f} ", px(se.x[i]), py(se.y[i]));
        }
        if (n > 0 && (n - 1) % stride != 0 && std::isfinite(se.x[n - 1]) && std::isfinite(se.y[n - 1]))
            pts += fmt::format("{:.2f},{:.2f}", px(se.x[n - 1]), py(se.y[n - 1]));
        const char* c = colors[s % std::size(colors)];
        out << fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>)", c, pts) << '\n';
        out << fmt::format(R"(<line x1="{}" x2="{}" y1="{}" y2="{}" stroke="{}" stroke-width="2"/>)", W - R + 12,
                           W - R + 32, T + 12 + 18 * s, T + 12 + 18 * s, c)
            << '\n';
        out << fmt::format(R"(<text x="{}" y="{}">{}</text>)", W - R + 38, T + 16 + 18 * s, escape(se.name)) << '\n';
    }
    out << "</svg>\n";
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    CsvTable t;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream is(line);
        while (std::getline(is, cell, ',')) cells.push_back(cell);
        if (t.columns.empty()) {
            t.columns = std::move(cells);
            continue;
        }
        if (cells.size() != t.columns.size()) throw std::runtime_error("read_csv: ragged row in '" + path + "'");
        std::vector<double> r;
        for (const auto& c : cells) {
            try {
                r.push_back(std::stod(c));
            } catch (const std::exception&) {
                throw std::runtime_error("read_csv: non-numeric cell '" + c + "' in '" + path + "'");
            }
        }
        t.rows.push_back(std::move(r));
    }
    if (t.columns.empty()) throw std::runtime_error("read_csv: no header in '" + path + "'");
    return t;
}

}  // namespace svfb
