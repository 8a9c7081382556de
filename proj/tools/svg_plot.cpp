#include "svg_plot.hpp"

#include "combinf/matrix_io.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <vector>

namespace combinf {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 30.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 60.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

struct Frame {
    double x_min;
    double x_max;
    double y_max;

    double x(double w) const {
        return kLeft + (w - x_min) / (x_max - x_min) * (kWidth - kLeft - kRight);
    }
    double y(double count) const {
        return kHeight - kBottom - count / y_max * (kHeight - kTop - kBottom);
    }
};

std::string step_path(const MonotoneSequence& seq, const Frame& f) {
    std::string d = "M" + fmt(f.x(f.x_min)) + "," + fmt(f.y(0));
    for (std::size_t j = 0; j < seq.size(); ++j) {
        d += " H" + fmt(f.x(seq[j])) + " V" + fmt(f.y(static_cast<double>(j + 1)));
    }
    d += " H" + fmt(f.x(f.x_max));
    return d;
}

}  // namespace

void write_growth_svg(std::ostream& out, const MonotoneSequence& first,
                      const MonotoneSequence& second, const std::string& first_name,
                      const std::string& second_name, double marker) {
    double lo = std::min(first[0], second[0]);
    double hi = std::max(first[first.size() - 1], second[second.size() - 1]);
    const double pad = hi > lo ? 0.05 * (hi - lo) : 0.5;
    lo -= pad;
    hi += pad;
    const Frame f{lo, hi, static_cast<double>(std::max(first.size(), second.size()))};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\""
        << fmt(kHeight) << "\" viewBox=\"0 0 " << fmt(kWidth) << " " << fmt(kHeight) << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << fmt(kWidth) << "\" height=\"" << fmt(kHeight)
        << "\" fill=\"white\"/>\n";
    // axes
    out << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(f.y(0)) << "\" x2=\""
        << fmt(kWidth - kRight) << "\" y2=\"" << fmt(f.y(0)) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(f.y(0)) << "\" x2=\"" << fmt(kLeft)
        << "\" y2=\"" << fmt(kTop) << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double w = lo + (hi - lo) * t / 4.0;
        out << "<text x=\"" << fmt(f.x(w)) << "\" y=\"" << fmt(f.y(0) + 18)
            << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(w) << "</text>\n";
        const double c = f.y_max * t / 4.0;
        out << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(f.y(c) + 4)
            << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(c) << "</text>\n";
    }
    out << "<text x=\"" << fmt((kLeft + kWidth - kRight) / 2) << "\" y=\"" << fmt(kHeight - 15)
        << "\" font-size=\"13\" text-anchor=\"middle\">edge weight</text>\n";
    out << "<text x=\"18\" y=\"" << fmt((kTop + kHeight - kBottom) / 2)
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << fmt((kTop + kHeight - kBottom) / 2) << ")\">edges added</text>\n";
    // argmax marker
    out << "<line x1=\"" << fmt(f.x(marker)) << "\" y1=\"" << fmt(f.y(0)) << "\" x2=\""
        << fmt(f.x(marker)) << "\" y2=\"" << fmt(kTop)
        << "\" stroke=\"gray\" stroke-dasharray=\"2,3\"/>\n";
    out << "<path d=\"" << step_path(first, f)
        << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.8\"/>\n";
    out << "<path d=\"" << step_path(second, f)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
    // legend
    out << "<text x=\"" << fmt(kLeft + 12) << "\" y=\"" << fmt(kTop + 12)
        << "\" font-size=\"12\" fill=\"#c0392b\">" << escape(first_name) << " (solid)</text>\n";
    out << "<text x=\"" << fmt(kLeft + 12) << "\" y=\"" << fmt(kTop + 28)
        << "\" font-size=\"12\">" << escape(second_name) << " (dashed)</text>\n";
    out << "</svg>\n";
}

void write_growth_csv(std::ostream& out, const MonotoneSequence& first,
                      const MonotoneSequence& second, const std::string& first_name,
                      const std::string& second_name) {
    std::vector<double> merged(first.values().begin(), first.values().end());
    merged.insert(merged.end(), second.values().begin(), second.values().end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    const StepFunction phi(first);
    const StepFunction psi(second);
    out << "weight," << first_name << "," << second_name << '\n';
    for (double w : merged) {
        out << format_double(w) << ',' << phi(w) << ',' << psi(w) << '\n';
    }
}

}  // namespace combinf
