#include "entroflux/errors.hpp"
#include "entroflux/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string_view>

namespace entroflux::sweep {

namespace {

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string tick_label(double v) {
    if (std::abs(v) < 1e-300) v = 0.0;  // no "-0"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

constexpr std::array<std::string_view, 8> kPalette{"#000000", "#d62728", "#1f77b4", "#2ca02c",
                                                   "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

}  // namespace

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<Output> numeric_outputs(const Scenario& s) {
    std::vector<Output> out;
    for (Output o : s.outputs)
        if (!is_flag(o)) out.push_back(o);
    return out;
}

void emit_csv(const Scenario& s, const std::vector<ResultRow>& rows, std::ostream& out) {
    std::string line = csv_field(s.sweep.variable);
    for (Output o : s.outputs) {
        line += ',';
        line += csv_field(output_name(o));
    }
    out << line << '\n';

    for (const auto& row : rows) {
        line = format_number(row.value);
        for (Output o : s.outputs) {
            line += ',';
            if (o == Output::stable) {
                line += row.stable ? "true" : "false";
            } else if (o == Output::physical) {
                if (row.report) line += row.report->physical ? "true" : "false";
            } else if (auto v = row.numeric(o)) {
                line += format_number(*v);
            }
        }
        out << line << '\n';
    }
    if (!out) throw IoError("emit_csv: write failed");
}

void emit_svg(const Scenario& s, const std::vector<ResultRow>& rows, const std::vector<Output>& columns,
              std::ostream& out) {
    if (columns.empty()) throw InsufficientData("emit_svg: no columns requested");

    constexpr double width = 800.0, height = 500.0;
    constexpr double left = 80.0, right = 170.0, top = 30.0, bottom = 60.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    std::vector<std::vector<std::pair<double, double>>> series;
    for (Output c : columns) {
        if (is_flag(c)) throw InsufficientData("emit_svg: '" + std::string(output_name(c)) + "' is not numeric");
        auto& pts = series.emplace_back();
        for (const auto& row : rows) {
            auto v = row.numeric(c);
            if (!v || !std::isfinite(*v)) continue;
            pts.emplace_back(row.value, *v);
            x_lo = std::min(x_lo, row.value);
            x_hi = std::max(x_hi, row.value);
            y_lo = std::min(y_lo, *v);
            y_hi = std::max(y_hi, *v);
        }
        if (pts.size() < 2) {
            throw InsufficientData("emit_svg: column '" + std::string(output_name(c)) + "' has fewer than 2 points");
        }
    }
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    if (y_hi == y_lo) {
        y_lo -= 0.5 * std::max(1.0, std::abs(y_lo));
        y_hi += 0.5 * std::max(1.0, std::abs(y_hi));
    }
    auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) { return top + (y_hi - y) / (y_hi - y_lo) * plot_h; };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"500\" "
           "viewBox=\"0 0 800 500\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"#ffffff\"/>\n"
        << "<g font-family=\"sans-serif\" font-size=\"12\">\n";

    // axes box
    out << "<rect x=\"" << fixed(left, 2) << "\" y=\"" << fixed(top, 2) << "\" width=\"" << fixed(plot_w, 2)
        << "\" height=\"" << fixed(plot_h, 2) << "\" fill=\"none\" stroke=\"#000000\"/>\n";

    constexpr int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double xv = x_lo + (x_hi - x_lo) * i / ticks;
        const double yv = y_lo + (y_hi - y_lo) * i / ticks;
        const double tx = px(xv), ty = py(yv);
        out << "<line x1=\"" << fixed(tx, 2) << "\" y1=\"" << fixed(top + plot_h, 2) << "\" x2=\"" << fixed(tx, 2)
            << "\" y2=\"" << fixed(top + plot_h + 5, 2) << "\" stroke=\"#000000\"/>\n"
            << "<text x=\"" << fixed(tx, 2) << "\" y=\"" << fixed(top + plot_h + 20, 2)
            << "\" text-anchor=\"middle\">" << tick_label(xv) << "</text>\n";
        out << "<line x1=\"" << fixed(left - 5, 2) << "\" y1=\"" << fixed(ty, 2) << "\" x2=\"" << fixed(left, 2)
            << "\" y2=\"" << fixed(ty, 2) << "\" stroke=\"#000000\"/>\n"
            << "<text x=\"" << fixed(left - 8, 2) << "\" y=\"" << fixed(ty + 4, 2) << "\" text-anchor=\"end\">"
            << tick_label(yv) << "</text>\n";
    }
    out << "<text x=\"" << fixed(left + plot_w / 2, 2) << "\" y=\"" << fixed(height - 15, 2)
        << "\" text-anchor=\"middle\">" << s.sweep.variable << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto color = kPalette[k % kPalette.size()];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series[k].size(); ++i) {
            if (i) out << ' ';
            out << fixed(px(series[k][i].first), 2) << ',' << fixed(py(series[k][i].second), 2);
        }
        out << "\"/>\n";
        const double ly = top + 15.0 + 20.0 * static_cast<double>(k);
        const double lx = left + plot_w + 15.0;
        out << "<line x1=\"" << fixed(lx, 2) << "\" y1=\"" << fixed(ly, 2) << "\" x2=\"" << fixed(lx + 25, 2)
            << "\" y2=\"" << fixed(ly, 2) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n"
            << "<text x=\"" << fixed(lx + 32, 2) << "\" y=\"" << fixed(ly + 4, 2) << "\">"
            << output_name(columns[k]) << "</text>\n";
    }
    out << "</g>\n</svg>\n";
    if (!out) throw IoError("emit_svg: write failed");
}

}  // namespace entroflux::sweep
