#include "styloseg/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "styloseg/io.hpp"

namespace styloseg::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 52.0;

struct Range {
    double lo = 0.0;
    double hi = 1.0;

    void expand(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (hi <= lo) {
            lo -= 0.5;
            hi += 0.5;
        } else {
            const double m = 0.05 * (hi - lo);
            lo -= m;
            hi += m;
        }
    }
};

std::string num(double v) { return io::format_fixed(v, 2); }

std::string escape_text(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c; break;
        }
    }
    return out;
}

std::string header(const std::string& title) {
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
           num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(kWidth / 2) +
           "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
           escape_text(title) + "</text>\n";
    return out;
}

std::string axes(const Range& xr, const Range& yr, const std::string& x_label,
                 const std::string& y_label) {
    const double x0 = kMarginLeft;
    const double x1 = kWidth - kMarginRight;
    const double y0 = kHeight - kMarginBottom;
    const double y1 = kMarginTop;

    std::string out;
    out += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x1) + "\" y2=\"" +
           num(y0) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x0) + "\" y2=\"" +
           num(y1) + "\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double f = static_cast<double>(i) / 4.0;
        const double xv = xr.lo + f * (xr.hi - xr.lo);
        const double xp = x0 + f * (x1 - x0);
        out += "<line x1=\"" + num(xp) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(xp) + "\" y2=\"" +
               num(y0 + 4) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(xp) + "\" y=\"" + num(y0 + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               io::format_fixed(xv, 3) + "</text>\n";
        const double yv = yr.lo + f * (yr.hi - yr.lo);
        const double yp = y0 + f * (y1 - y0);
        out += "<line x1=\"" + num(x0 - 4) + "\" y1=\"" + num(yp) + "\" x2=\"" + num(x0) +
               "\" y2=\"" + num(yp) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(x0 - 7) + "\" y=\"" + num(yp + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               io::format_fixed(yv, 3) + "</text>\n";
    }
    out += "<text x=\"" + num((x0 + x1) / 2) + "\" y=\"" + num(kHeight - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           escape_text(x_label) + "</text>\n";
    out += "<text x=\"16\" y=\"" + num((y0 + y1) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 " +
           num((y0 + y1) / 2) + ")\">" + escape_text(y_label) + "</text>\n";
    return out;
}

std::string legend(const std::vector<std::pair<std::string, std::string>>& entries) {
    std::string out;
    double y = kMarginTop + 6.0;
    for (const auto& [label, color] : entries) {
        const double x = kWidth - kMarginRight - 150.0;
        out += "<rect x=\"" + num(x) + "\" y=\"" + num(y - 9) +
               "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
        out += "<text x=\"" + num(x + 15) + "\" y=\"" + num(y) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + escape_text(label) +
               "</text>\n";
        y += 16.0;
    }
    return out;
}

double scale_x(double v, const Range& r) {
    return kMarginLeft + (v - r.lo) / (r.hi - r.lo) * (kWidth - kMarginLeft - kMarginRight);
}

double scale_y(double v, const Range& r) {
    return (kHeight - kMarginBottom) -
           (v - r.lo) / (r.hi - r.lo) * (kHeight - kMarginTop - kMarginBottom);
}

}  // namespace

const std::vector<std::string>& default_colors() {
    static const std::vector<std::string> colors = {"#1f77b4", "#d62728", "#2ca02c",
                                                    "#9467bd", "#ff7f0e", "#8c564b"};
    return colors;
}

std::string scatter_plot(const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<ScatterSeries>& series) {
    Range xr{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    Range yr = xr;
    bool any = false;
    for (const auto& s : series) {
        for (const auto& p : s.points) {
            xr.expand(p.x);
            yr.expand(p.y);
            any = true;
        }
    }
    if (!any) {
        xr = {0.0, 1.0};
        yr = {0.0, 1.0};
    }
    xr.pad();
    yr.pad();

    std::string out = header(title);
    out += axes(xr, yr, x_label, y_label);
    for (const auto& s : series) {
        for (const auto& p : s.points) {
            out += "<circle cx=\"" + num(scale_x(p.x, xr)) + "\" cy=\"" + num(scale_y(p.y, yr)) +
                   "\" r=\"2.5\" fill=\"" + s.color + "\" fill-opacity=\"0.7\"/>\n";
        }
    }
    if (series.size() > 1) {
        std::vector<std::pair<std::string, std::string>> entries;
        for (const auto& s : series) {
            entries.emplace_back(s.label, s.color);
        }
        out += legend(entries);
    }
    out += "</svg>\n";
    return out;
}

std::string grouped_histogram(const std::string& title, const std::string& x_label,
                              const std::vector<HistogramGroup>& groups, std::size_t bins) {
    Range xr{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    bool any = false;
    for (const auto& g : groups) {
        for (double v : g.values) {
            xr.expand(v);
            any = true;
        }
    }
    if (!any) {
        xr = {0.0, 1.0};
    }
    if (xr.hi <= xr.lo) {
        xr.lo -= 0.5;
        xr.hi += 0.5;
    }
    if (bins == 0) bins = 1;

    // shared binning so group shapes are comparable
    std::vector<std::vector<std::size_t>> counts(groups.size(), std::vector<std::size_t>(bins, 0));
    std::size_t max_count = 1;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (double v : groups[g].values) {
            auto b = static_cast<std::size_t>((v - xr.lo) / (xr.hi - xr.lo) *
                                              static_cast<double>(bins));
            if (b >= bins) b = bins - 1;
            ++counts[g][b];
            max_count = std::max(max_count, counts[g][b]);
        }
    }

    Range yr{0.0, static_cast<double>(max_count)};
    yr.hi *= 1.05;

    std::string out = header(title);
    out += axes(xr, yr, x_label, "count");
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double bin_w = plot_w / static_cast<double>(bins);
    const double bar_w = bin_w / static_cast<double>(groups.size() == 0 ? 1 : groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (std::size_t b = 0; b < bins; ++b) {
            if (counts[g][b] == 0) continue;
            const double x = kMarginLeft + static_cast<double>(b) * bin_w +
                             static_cast<double>(g) * bar_w;
            const double top = scale_y(static_cast<double>(counts[g][b]), yr);
            const double bottom = kHeight - kMarginBottom;
            out += "<rect x=\"" + num(x) + "\" y=\"" + num(top) + "\" width=\"" +
                   num(std::max(bar_w - 1.0, 1.0)) + "\" height=\"" + num(bottom - top) +
                   "\" fill=\"" + groups[g].color + "\" fill-opacity=\"0.8\"/>\n";
        }
    }
    std::vector<std::pair<std::string, std::string>> entries;
    for (const auto& g : groups) {
        entries.emplace_back(g.label, g.color);
    }
    out += legend(entries);
    out += "</svg>\n";
    return out;
}

}  // namespace styloseg::svg
