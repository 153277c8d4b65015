#include "qjump/svg.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace qjump {

namespace {

constexpr double kWidth = 720, kHeight = 420;
constexpr double kMarginL = 60, kMarginR = 20, kMarginT = 20, kMarginB = 45;

struct Line {
    std::string label;
    std::string color;
    std::function<double(const ConditionedPoint&)> value;
};

} // namespace

void write_series_svg(const std::string& path, const std::vector<ConditionedPoint>& series,
                      bool with_coherence) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file '" + path + "'");

    std::vector<Line> lines = {
        {"pY0", "#1b7837", [](const ConditionedPoint& p) { return p.py0; }},
        {"pY1", "#d73027", [](const ConditionedPoint& p) { return p.py1; }},
    };
    if (with_coherence) {
        lines.push_back({"Re rhoY01", "#4575b4",
                         [](const ConditionedPoint& p) { return p.rho_y_01.real(); }});
        lines.push_back({"Im rhoY01", "#fdae61",
                         [](const ConditionedPoint& p) { return p.rho_y_01.imag(); }});
    }

    double tmax = 1e-12, lo = 0, hi = 1;
    for (const auto& p : series) {
        tmax = std::max(tmax, p.t);
        for (const auto& l : lines) {
            lo = std::min(lo, l.value(p));
            hi = std::max(hi, l.value(p));
        }
    }
    const double plot_w = kWidth - kMarginL - kMarginR;
    const double plot_h = kHeight - kMarginT - kMarginB;
    auto sx = [&](double t) { return kMarginL + t / tmax * plot_w; };
    auto sy = [&](double v) { return kMarginT + (hi - v) / (hi - lo) * plot_h; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    out << "<line x1=\"" << kMarginL << "\" y1=\"" << kMarginT + plot_h << "\" x2=\""
        << kMarginL + plot_w << "\" y2=\"" << kMarginT + plot_h
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << kMarginL << "\" y1=\"" << kMarginT << "\" x2=\"" << kMarginL
        << "\" y2=\"" << kMarginT + plot_h << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double v = lo + (hi - lo) * i / 4.0;
        out << "<text x=\"" << kMarginL - 8 << "\" y=\"" << sy(v) + 4
            << "\" font-size=\"11\" text-anchor=\"end\">" << v << "</text>\n";
        const double t = tmax * i / 4.0;
        out << "<text x=\"" << sx(t) << "\" y=\"" << kMarginT + plot_h + 18
            << "\" font-size=\"11\" text-anchor=\"middle\">" << t << "</text>\n";
    }
    out << "<text x=\"" << kMarginL + plot_w / 2 << "\" y=\"" << kHeight - 8
        << "\" font-size=\"12\" text-anchor=\"middle\">t</text>\n";

    double legend_y = kMarginT + 14;
    for (const auto& l : lines) {
        std::ostringstream pts;
        for (const auto& p : series) pts << sx(p.t) << ',' << sy(l.value(p)) << ' ';
        out << "<polyline fill=\"none\" stroke=\"" << l.color
            << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
        out << "<text x=\"" << kMarginL + plot_w - 4 << "\" y=\"" << legend_y
            << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << l.color << "\">" << l.label
            << "</text>\n";
        legend_y += 16;
    }
    out << "</svg>\n";
}

} // namespace qjump
