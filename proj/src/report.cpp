#include "ksigma/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ksigma {

namespace {

std::string g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

const CheckRow* find_check(const ExperimentResult& r, const std::string& name) {
    for (const CheckRow& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

// ---------------------------------------------------------------------------
// SVG helpers

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginL = 80;
constexpr int kMarginR = 24;
constexpr int kMarginT = 42;
constexpr int kMarginB = 56;

const char* kSeriesColors[6] = {"#1f77b4", "#d62728", "#2ca02c",
                                "#9467bd", "#ff7f0e", "#8c564b"};

struct LinearScale {
    double lo = 0.0, hi = 1.0;
    double px0 = 0.0, px1 = 1.0;
    double operator()(double v) const { return px0 + (v - lo) / (hi - lo) * (px1 - px0); }
};

void svg_open(std::ostringstream& os, const std::string& title) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
       << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
       << "\">\n";
    os << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"15\">"
       << title << "</text>\n";
}

void svg_axes(std::ostringstream& os, const LinearScale& xs, const LinearScale& ys,
              const std::string& xlabel, const std::string& ylabel) {
    const int x0 = kMarginL, x1 = kWidth - kMarginR;
    const int y0 = kHeight - kMarginB, y1 = kMarginT;
    os << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1
       << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 5; ++t) {
        const double xv = xs.lo + (xs.hi - xs.lo) * t / 5.0;
        const double yv = ys.lo + (ys.hi - ys.lo) * t / 5.0;
        os << "<line x1=\"" << g9(xs(xv)) << "\" y1=\"" << y0 << "\" x2=\"" << g9(xs(xv))
           << "\" y2=\"" << y0 + 5 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << g9(xs(xv)) << "\" y=\"" << y0 + 20
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << g9(xv)
           << "</text>\n";
        os << "<line x1=\"" << x0 - 5 << "\" y1=\"" << g9(ys(yv)) << "\" x2=\"" << x0
           << "\" y2=\"" << g9(ys(yv)) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << x0 - 8 << "\" y=\"" << g9(ys(yv) + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << g9(yv)
           << "</text>\n";
    }
    os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 14
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << xlabel
       << "</text>\n";
    os << "<text x=\"18\" y=\"" << (y0 + y1) / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
          "transform=\"rotate(-90 18 "
       << (y0 + y1) / 2 << ")\">" << ylabel << "</text>\n";
}

std::string curve_svg(const ExperimentResult& r) {
    double xlo = 1e300, xhi = -1e300, yhi = 0.0;
    for (const Series& s : r.series) {
        for (const SeriesPoint& p : s.points) {
            xlo = std::min(xlo, p.x);
            xhi = std::max(xhi, p.x);
            yhi = std::max(yhi, p.y + p.y_err);
        }
    }
    if (!(xhi > xlo)) return {};
    LinearScale xs{xlo, xhi, static_cast<double>(kMarginL), static_cast<double>(kWidth - kMarginR)};
    LinearScale ys{0.0, yhi * 1.08, static_cast<double>(kHeight - kMarginB),
                   static_cast<double>(kMarginT)};

    std::ostringstream os;
    svg_open(os, r.experiment_id);
    svg_axes(os, xs, ys, "n", "p_n");

    for (std::size_t si = 0; si < r.series.size(); ++si) {
        const Series& s = r.series[si];
        const char* color = kSeriesColors[si % 6];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const SeriesPoint& p : s.points) os << g9(xs(p.x)) << ',' << g9(ys(p.y)) << ' ';
        os << "\"/>\n";
        for (const SeriesPoint& p : s.points) {
            os << "<circle cx=\"" << g9(xs(p.x)) << "\" cy=\"" << g9(ys(p.y))
               << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
            if (p.y_err > 0.0)
                os << "<line x1=\"" << g9(xs(p.x)) << "\" y1=\"" << g9(ys(p.y - p.y_err))
                   << "\" x2=\"" << g9(xs(p.x)) << "\" y2=\"" << g9(ys(p.y + p.y_err))
                   << "\" stroke=\"" << color << "\" stroke-width=\"1\"/>\n";
        }
        os << "<text x=\"" << kWidth - kMarginR - 8 << "\" y=\"" << kMarginT + 18 + 16 * si
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color
           << "\">" << s.label << "</text>\n";
    }

    if (const CheckRow* cross = find_check(r, "crossover_n"); cross && cross->observed > 0.0) {
        os << "<line x1=\"" << g9(xs(cross->observed)) << "\" y1=\"" << kMarginT << "\" x2=\""
           << g9(xs(cross->observed)) << "\" y2=\"" << kHeight - kMarginB
           << "\" stroke=\"#777777\" stroke-dasharray=\"5,4\"/>\n";
        os << "<text x=\"" << g9(xs(cross->observed) + 4) << "\" y=\"" << kMarginT + 14
           << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555555\">crossover "
           << g9(cross->observed) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string heat_color(double t) {
    // blue -> yellow -> red ramp
    t = std::clamp(t, 0.0, 1.0);
    int r, g, b;
    if (t < 0.5) {
        const double u = t / 0.5;
        r = static_cast<int>(40 + u * (250 - 40));
        g = static_cast<int>(60 + u * (220 - 60));
        b = static_cast<int>(180 - u * (180 - 60));
    } else {
        const double u = (t - 0.5) / 0.5;
        r = 250;
        g = static_cast<int>(220 - u * (220 - 60));
        b = 60;
    }
    char buf[10];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

std::string surface_svg(const ExperimentResult& r) {
    if (r.series.empty() || r.series.front().points.empty()) return {};
    const std::vector<SeriesPoint>& pts = r.series.front().points;
    std::set<double> xset, yset;
    double zlo = 1e300, zhi = -1e300;
    for (const SeriesPoint& p : pts) {
        xset.insert(p.x);
        yset.insert(p.x2);
        if (std::isfinite(p.y)) {
            zlo = std::min(zlo, p.y);
            zhi = std::max(zhi, p.y);
        }
    }
    const std::vector<double> xs(xset.begin(), xset.end());
    const std::vector<double> ys(yset.begin(), yset.end());
    const double cw = static_cast<double>(kWidth - kMarginL - kMarginR) / xs.size();
    const double ch = static_cast<double>(kHeight - kMarginT - kMarginB) / ys.size();

    std::ostringstream os;
    svg_open(os, r.experiment_id);
    for (const SeriesPoint& p : pts) {
        const std::size_t xi = static_cast<std::size_t>(
            std::lower_bound(xs.begin(), xs.end(), p.x) - xs.begin());
        const std::size_t yi = static_cast<std::size_t>(
            std::lower_bound(ys.begin(), ys.end(), p.x2) - ys.begin());
        const double t = zhi > zlo ? (p.y - zlo) / (zhi - zlo) : 0.0;
        const std::string color = std::isfinite(p.y) ? heat_color(t) : std::string("#cccccc");
        os << "<rect x=\"" << g9(kMarginL + xi * cw) << "\" y=\""
           << g9(kHeight - kMarginB - (yi + 1) * ch) << "\" width=\"" << g9(cw + 0.5)
           << "\" height=\"" << g9(ch + 0.5) << "\" fill=\"" << color << "\"/>\n";
    }
    os << "<text x=\"" << (kMarginL + kWidth - kMarginR) / 2 << "\" y=\"" << kHeight - 14
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">alpha</text>\n";
    os << "<text x=\"18\" y=\"" << kHeight / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
          "transform=\"rotate(-90 18 "
       << kHeight / 2 << ")\">lambda</text>\n";
    os << "<text x=\"" << kMarginL << "\" y=\"" << kMarginT - 6
       << "\" font-family=\"sans-serif\" font-size=\"11\">min " << g9(zlo) << "  max " << g9(zhi)
       << "</text>\n";
    // axis corner labels
    os << "<text x=\"" << kMarginL << "\" y=\"" << kHeight - kMarginB + 16
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << g9(xs.front()) << "</text>\n";
    os << "<text x=\"" << kWidth - kMarginR << "\" y=\"" << kHeight - kMarginB + 16
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << g9(xs.back())
       << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace

std::string to_csv(const ExperimentResult& r) {
    std::ostringstream os;
    switch (r.kind) {
        case ResultKind::curve: {
            os << "experiment_id,series,n,p_hat,std_err\n";
            for (const Series& s : r.series)
                for (const SeriesPoint& p : s.points)
                    os << r.experiment_id << ',' << s.label << ',' << g9(p.x) << ',' << g9(p.y)
                       << ',' << g9(p.y_err) << '\n';
            if (const CheckRow* cross = find_check(r, "crossover_n"))
                os << r.experiment_id << ",crossover," << g9(cross->observed) << ",,\n";
            break;
        }
        case ResultKind::surface: {
            os << "experiment_id,alpha,lambda,p_limit,std_err\n";
            for (const Series& s : r.series)
                for (const SeriesPoint& p : s.points)
                    os << r.experiment_id << ',' << g9(p.x) << ',' << g9(p.x2) << ',' << g9(p.y)
                       << ',' << g9(p.y_err) << '\n';
            break;
        }
        case ResultKind::table: {
            os << "experiment_id,check,observed,lo,hi,pass\n";
            for (const CheckRow& c : r.checks)
                os << r.experiment_id << ',' << c.name << ',' << g9(c.observed) << ',' << g9(c.lo)
                   << ',' << g9(c.hi) << ',' << (c.pass ? "true" : "false") << '\n';
            break;
        }
    }
    return os.str();
}

std::string to_svg(const ExperimentResult& r) {
    switch (r.kind) {
        case ResultKind::curve: return curve_svg(r);
        case ResultKind::surface: return surface_svg(r);
        case ResultKind::table: return {};
    }
    return {};
}

std::string summary_json(std::span<const ExperimentResult> results) {
    nlohmann::json j;
    bool all = true;
    for (const ExperimentResult& r : results) {
        for (const CheckRow& c : r.checks) {
            const std::string base = r.experiment_id + "." + c.name;
            j[base + ".pass"] = c.pass;
            j[base + ".observed"] = c.observed;
            j[base + ".lo"] = c.lo;
            j[base + ".hi"] = c.hi;
        }
        j[r.experiment_id + ".all_pass"] = r.all_pass();
        all = all && r.all_pass();
    }
    j["all_pass"] = all;
    return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary); // binary: keep LF endings as-is
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

} // namespace ksigma
