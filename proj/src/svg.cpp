#include "kconc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace kconc::svg {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 190.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string escape(const std::string& text)
{
    std::string out;
    for (char c : text) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Frame {
    double x0 = kLeft;
    double x1 = kWidth - kRight;
    double y0 = kHeight - kBottom;  // pixel row of the lowest value
    double y1 = kTop;
};

void open_document(std::ostringstream& out, const std::string& title, const std::string& x_label,
                   const std::string& y_label, const Frame& f)
{
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << num((f.x0 + f.x1) / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << escape(title) << "</text>\n";
    out << "<text x=\"" << num((f.x0 + f.x1) / 2) << "\" y=\"" << num(kHeight - 15)
        << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
    out << "<text transform=\"translate(18," << num((f.y0 + f.y1) / 2)
        << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";
    out << "<rect x=\"" << num(f.x0) << "\" y=\"" << num(f.y1) << "\" width=\"" << num(f.x1 - f.x0)
        << "\" height=\"" << num(f.y0 - f.y1) << "\" fill=\"none\" stroke=\"black\"/>\n";
}

void y_ticks(std::ostringstream& out, const Frame& f, double lo, double hi)
{
    for (int k = 0; k <= 5; ++k) {
        const double v = lo + (hi - lo) * k / 5.0;
        const double py = f.y0 - (f.y0 - f.y1) * k / 5.0;
        out << "<line x1=\"" << num(f.x0 - 5) << "\" y1=\"" << num(py) << "\" x2=\"" << num(f.x0)
            << "\" y2=\"" << num(py) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(f.x0 - 8) << "\" y=\"" << num(py + 4) << "\" text-anchor=\"end\">"
            << tick_label(v) << "</text>\n";
    }
}

}  // namespace

std::string palette(std::size_t i)
{
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    return colors[i % (sizeof colors / sizeof colors[0])];
}

std::string render(const LinePlot& plot)
{
    const Frame f;
    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    for (const auto& s : plot.series) {
        for (double x : s.x) {
            if (std::isfinite(x) && (!plot.log_x || x > 0.0)) {
                x_lo = std::min(x_lo, x);
                x_hi = std::max(x_hi, x);
            }
        }
    }
    if (!std::isfinite(x_lo)) {
        x_lo = plot.log_x ? 1e-4 : 0.0;
        x_hi = 1.0;
    }
    auto tx = [&](double x) { return plot.log_x ? std::log10(x) : x; };
    double a = tx(x_lo);
    double b = tx(x_hi);
    if (b <= a) {
        b = a + 1.0;
    }
    auto px = [&](double x) { return f.x0 + (tx(x) - a) / (b - a) * (f.x1 - f.x0); };
    const double y_span = plot.y_max > plot.y_min ? plot.y_max - plot.y_min : 1.0;
    auto py = [&](double y) {
        const double c = std::clamp(y, plot.y_min, plot.y_min + y_span);
        return f.y0 - (c - plot.y_min) / y_span * (f.y0 - f.y1);
    };

    std::ostringstream out;
    open_document(out, plot.title, plot.x_label, plot.y_label, f);
    y_ticks(out, f, plot.y_min, plot.y_min + y_span);
    if (plot.log_x) {
        for (int d = static_cast<int>(std::ceil(a - 1e-9)); d <= static_cast<int>(std::floor(b + 1e-9)); ++d) {
            const double x = px(std::pow(10.0, d));
            out << "<line x1=\"" << num(x) << "\" y1=\"" << num(f.y0) << "\" x2=\"" << num(x) << "\" y2=\""
                << num(f.y0 + 5) << "\" stroke=\"black\"/>\n";
            out << "<text x=\"" << num(x) << "\" y=\"" << num(f.y0 + 18) << "\" text-anchor=\"middle\">1e"
                << d << "</text>\n";
        }
    } else {
        for (int k = 0; k <= 5; ++k) {
            const double v = x_lo + (x_hi - x_lo) * k / 5.0;
            out << "<text x=\"" << num(px(v)) << "\" y=\"" << num(f.y0 + 18) << "\" text-anchor=\"middle\">"
                << tick_label(v) << "</text>\n";
        }
    }

    for (std::size_t s = 0; s < plot.series.size(); ++s) {
        const auto& series = plot.series[s];
        std::string points;
        for (std::size_t k = 0; k < std::min(series.x.size(), series.y.size()); ++k) {
            const double x = series.x[k];
            const double y = series.y[k];
            if (!std::isfinite(x) || !std::isfinite(y) || (plot.log_x && x <= 0.0)) {
                continue;
            }
            points += num(px(x)) + ',' + num(py(y)) + ' ';
        }
        out << "<polyline fill=\"none\" stroke=\"" << series.color << "\" stroke-width=\"1.5\"";
        if (!series.dash.empty()) {
            out << " stroke-dasharray=\"" << series.dash << '"';
        }
        out << " points=\"" << points << "\"/>\n";
        const double ly = f.y1 + 10 + 18.0 * static_cast<double>(s);
        out << "<line x1=\"" << num(f.x1 + 12) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(f.x1 + 40)
            << "\" y2=\"" << num(ly) << "\" stroke=\"" << series.color << "\" stroke-width=\"1.5\"";
        if (!series.dash.empty()) {
            out << " stroke-dasharray=\"" << series.dash << '"';
        }
        out << "/>\n<text x=\"" << num(f.x1 + 46) << "\" y=\"" << num(ly + 4) << "\">" << escape(series.label)
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render(const BoxPlot& plot)
{
    const Frame f;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& box : plot.boxes) {
        lo = std::min(lo, box.min);
        hi = std::max(hi, box.max);
    }
    if (!std::isfinite(lo)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi <= lo) {
        hi = lo + 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    auto py = [&](double y) { return f.y0 - (y - lo) / (hi - lo) * (f.y0 - f.y1); };

    std::ostringstream out;
    open_document(out, plot.title, plot.x_label, plot.y_label, f);
    y_ticks(out, f, lo, hi);
    const double count = static_cast<double>(std::max<std::size_t>(plot.boxes.size(), 1));
    const double slot = (f.x1 - f.x0) / count;
    for (std::size_t k = 0; k < plot.boxes.size(); ++k) {
        const auto& box = plot.boxes[k];
        const double cx = f.x0 + slot * (static_cast<double>(k) + 0.5);
        const double half = 0.3 * slot;
        out << "<line x1=\"" << num(cx) << "\" y1=\"" << num(py(box.min)) << "\" x2=\"" << num(cx) << "\" y2=\""
            << num(py(box.q1)) << "\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << num(cx) << "\" y1=\"" << num(py(box.q3)) << "\" x2=\"" << num(cx) << "\" y2=\""
            << num(py(box.max)) << "\" stroke=\"black\"/>\n";
        for (double v : {box.min, box.max}) {
            out << "<line x1=\"" << num(cx - half / 2) << "\" y1=\"" << num(py(v)) << "\" x2=\""
                << num(cx + half / 2) << "\" y2=\"" << num(py(v)) << "\" stroke=\"black\"/>\n";
        }
        out << "<rect class=\"box\" x=\"" << num(cx - half) << "\" y=\"" << num(py(box.q3)) << "\" width=\"" << num(2 * half)
            << "\" height=\"" << num(std::max(py(box.q1) - py(box.q3), 0.5))
            << "\" fill=\"#aec7e8\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << num(cx - half) << "\" y1=\"" << num(py(box.median)) << "\" x2=\""
            << num(cx + half) << "\" y2=\"" << num(py(box.median)) << "\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
        const std::string label = k < plot.labels.size() ? plot.labels[k] : std::to_string(k + 1);
        out << "<text x=\"" << num(cx) << "\" y=\"" << num(f.y0 + 18) << "\" text-anchor=\"middle\">"
            << escape(label) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace kconc::svg
