// SPDX-License-Identifier: Apache-2.0
//
// skypattern: combined UAV / ground-station radiation pattern toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


// SVG rendering of the three evaluation panels: distance vs RSRP scatter,
// absolute-error CDF, and per-elevation MAE over the elevation histogram.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "skypattern/dataio.hpp"
#include "skypattern/error.hpp"
#include "skypattern/eval.hpp"

namespace skypattern
{

namespace fs = std::filesystem;

namespace
{

constexpr double kWidth = 640.0, kHeight = 420.0;
constexpr double kLeft = 70.0, kRight = 70.0, kTop = 40.0, kBottom = 55.0;
constexpr const char *kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string fixed(double v, int digits = 2)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::string xml_escape(const std::string &s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

/// "--" may not appear inside an XML comment.
std::string comment_safe(std::string s)
{
    for (std::size_t p; (p = s.find("--")) != std::string::npos;)
        s.replace(p, 2, "- -");
    return s;
}

double nice_step(double span, int target_ticks)
{
    if (!(span > 0.0))
        return 1.0;
    const double raw = span / target_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double f = raw / mag;
    return (f < 1.5 ? 1.0 : f < 3.0 ? 2.0 : f < 7.0 ? 5.0 : 10.0) * mag;
}

struct Axis
{
    double lo, hi;
    double px_lo, px_hi;

    double map(double v) const { return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo); }
};

Axis padded(double lo, double hi, double px_lo, double px_hi)
{
    if (!(hi > lo))
    {
        lo -= 1.0;
        hi += 1.0;
    }
    return {lo, hi, px_lo, px_hi};
}

class Svg
{
  public:
    Svg(const std::string &title, const std::vector<std::string> &provenance)
    {
        out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        for (const auto &line : provenance)
            out_ += "<!-- " + comment_safe(line) + " -->\n";
        out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) + "\" height=\"" +
                fixed(kHeight, 0) + "\" viewBox=\"0 0 " + fixed(kWidth, 0) + " " + fixed(kHeight, 0) +
                "\" font-family=\"sans-serif\" font-size=\"12\">\n";
        out_ += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        text(kWidth / 2, 22, title, "middle", 14);
    }

    void text(double x, double y, const std::string &s, const char *anchor = "middle", int size = 12,
              const std::string &extra = {})
    {
        out_ += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(y) + "\" text-anchor=\"" + anchor + "\" font-size=\"" +
                std::to_string(size) + "\"" + extra + ">" + xml_escape(s) + "</text>\n";
    }

    void line(double x1, double y1, double x2, double y2, const char *stroke, double width = 1.0)
    {
        out_ += "<line x1=\"" + fixed(x1) + "\" y1=\"" + fixed(y1) + "\" x2=\"" + fixed(x2) + "\" y2=\"" + fixed(y2) +
                "\" stroke=\"" + stroke + "\" stroke-width=\"" + fixed(width, 1) + "\"/>\n";
    }

    void raw(const std::string &s) { out_ += s; }

    void frame(const Axis &x, const Axis &y, const std::string &x_label, const std::string &y_label)
    {
        out_ += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" +
                fixed(kWidth - kLeft - kRight) + "\" height=\"" + fixed(kHeight - kTop - kBottom) +
                "\" data-x-min=\"" + format_double(x.lo) + "\" data-x-max=\"" + format_double(x.hi) +
                "\" fill=\"none\" stroke=\"black\"/>\n";
        ticks_x(x);
        ticks_y(y, kLeft, "end", -6.0);
        text((kLeft + kWidth - kRight) / 2, kHeight - 15, x_label);
        text(18, (kTop + kHeight - kBottom) / 2, y_label, "middle", 12,
             " transform=\"rotate(-90 18 " + fixed((kTop + kHeight - kBottom) / 2) + ")\"");
    }

    void ticks_x(const Axis &x)
    {
        const double step = nice_step(x.hi - x.lo, 6);
        for (double v = std::ceil(x.lo / step) * step; v <= x.hi + 1e-9 * step; v += step)
        {
            const double px = x.map(v);
            line(px, kHeight - kBottom, px, kHeight - kBottom + 5, "black");
            text(px, kHeight - kBottom + 18, label(v, step));
        }
    }

    void ticks_y(const Axis &y, double px_x, const char *anchor, double offset)
    {
        const double step = nice_step(y.hi - y.lo, 6);
        for (double v = std::ceil(y.lo / step) * step; v <= y.hi + 1e-9 * step; v += step)
        {
            const double py = y.map(v);
            line(px_x, py, px_x + (offset < 0 ? -5 : 5), py, "black");
            text(px_x + offset, py + 4, label(v, step), anchor);
        }
    }

    void legend(const std::vector<std::pair<std::string, std::string>> &entries)
    {
        double y = kTop + 16;
        for (const auto &[name, color] : entries)
        {
            out_ += "<rect x=\"" + fixed(kWidth - kRight - 150) + "\" y=\"" + fixed(y - 9) +
                    "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
            text(kWidth - kRight - 135, y, name, "start");
            y += 16;
        }
    }

    std::string finish()
    {
        out_ += "</svg>\n";
        return std::move(out_);
    }

  private:
    static std::string label(double v, double step)
    {
        const int digits = step >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(step)));
        if (std::abs(v) < 1e-12 * step)
            v = 0.0;
        return fixed(v, digits);
    }

    std::string out_;
};

const char *color(std::size_t k)
{
    return kPalette[k % (sizeof(kPalette) / sizeof(kPalette[0]))];
}

std::string scatter_svg(const std::vector<NamedReport> &reports, const std::vector<std::string> &provenance,
                        std::string &csv)
{
    double dmin = std::numeric_limits<double>::infinity(), dmax = -dmin;
    double pmin = dmin, pmax = -dmin;
    for (const auto &nr : reports)
        for (const auto &r : nr.report->residuals)
        {
            dmin = std::min(dmin, r.d3d_m);
            dmax = std::max(dmax, r.d3d_m);
            pmin = std::min({pmin, r.rsrp_meas_dbm, r.rsrp_pred_dbm});
            pmax = std::max({pmax, r.rsrp_meas_dbm, r.rsrp_pred_dbm});
        }
    const Axis x = padded(0.0, dmax * 1.05, kLeft, kWidth - kRight);
    const double pad = std::max(1.0, 0.05 * (pmax - pmin));
    const Axis y = padded(pmin - pad, pmax + pad, kHeight - kBottom, kTop);

    Svg svg("3D distance vs RSRP", provenance);
    svg.frame(x, y, "3D distance (m)", "RSRP (dBm)");

    csv = "series,d3d_m,rsrp_dbm\n";
    std::vector<std::pair<std::string, std::string>> legend{{"measured", "#7f7f7f"}};
    std::string points = "<g fill=\"#7f7f7f\" fill-opacity=\"0.5\">\n";
    for (const auto &r : reports.front().report->residuals)
    {
        points += "<circle cx=\"" + fixed(x.map(r.d3d_m)) + "\" cy=\"" + fixed(y.map(r.rsrp_meas_dbm)) + "\" r=\"1.5\"/>\n";
        csv += "measured," + format_double(r.d3d_m) + "," + format_double(r.rsrp_meas_dbm) + "\n";
    }
    points += "</g>\n";
    for (std::size_t k = 0; k < reports.size(); ++k)
    {
        points += std::string("<g fill=\"") + color(k) + "\" fill-opacity=\"0.7\">\n";
        for (const auto &r : reports[k].report->residuals)
        {
            points += "<circle cx=\"" + fixed(x.map(r.d3d_m)) + "\" cy=\"" + fixed(y.map(r.rsrp_pred_dbm)) +
                      "\" r=\"1.5\"/>\n";
            csv += reports[k].name + "," + format_double(r.d3d_m) + "," + format_double(r.rsrp_pred_dbm) + "\n";
        }
        points += "</g>\n";
        legend.emplace_back(reports[k].name, color(k));
    }
    svg.raw(points);
    svg.legend(legend);
    return svg.finish();
}

std::string cdf_svg(const std::vector<NamedReport> &reports, const std::vector<std::string> &provenance,
                    std::string &csv)
{
    double emax = 0.0;
    for (const auto &nr : reports)
        for (const auto &p : nr.report->error_cdf)
            emax = std::max(emax, p.abs_err_db);
    const Axis x{0.0, emax > 0.0 ? emax : 1.0, kLeft, kWidth - kRight};
    const Axis y{0.0, 1.0, kHeight - kBottom, kTop};

    Svg svg("CDF of absolute error", provenance);
    svg.frame(x, y, "absolute error (dB)", "cumulative probability");

    csv = "series,abs_err_db,cum_prob\n";
    std::vector<std::pair<std::string, std::string>> legend;
    for (std::size_t k = 0; k < reports.size(); ++k)
    {
        std::string path = "M" + fixed(x.map(0.0)) + "," + fixed(y.map(0.0));
        double prev = 0.0;
        for (const auto &p : reports[k].report->error_cdf)
        {
            path += " L" + fixed(x.map(p.abs_err_db)) + "," + fixed(y.map(prev));
            path += " L" + fixed(x.map(p.abs_err_db)) + "," + fixed(y.map(p.cum_prob));
            prev = p.cum_prob;
            csv += reports[k].name + "," + format_double(p.abs_err_db) + "," + format_double(p.cum_prob) + "\n";
        }
        path += " L" + fixed(x.map(x.hi)) + "," + fixed(y.map(prev));
        svg.raw(std::string("<path d=\"") + path + "\" fill=\"none\" stroke=\"" + color(k) +
                "\" stroke-width=\"1.5\"/>\n");
        legend.emplace_back(reports[k].name, color(k));
    }
    svg.legend(legend);
    return svg.finish();
}

std::string elevation_svg(const std::vector<NamedReport> &reports, const std::vector<std::string> &provenance,
                          std::string &csv)
{
    double mae_max = 0.0, dens_max = 0.0;
    for (const auto &nr : reports)
        for (const auto &b : nr.report->per_elevation)
        {
            mae_max = std::max(mae_max, b.mae_db.value_or(0.0));
            dens_max = std::max(dens_max, b.density);
        }
    const Axis x{0.0, 90.0, kLeft, kWidth - kRight};
    const Axis y{0.0, mae_max > 0.0 ? mae_max * 1.1 : 1.0, kHeight - kBottom, kTop};
    const Axis yd{0.0, dens_max > 0.0 ? dens_max * 1.1 : 1.0, kHeight - kBottom, kTop};

    Svg svg("Elevation angle vs mean absolute error", provenance);

    // Density band of the test set (identical across predictors on one test set).
    std::string band = "<g fill=\"#1f77b4\" fill-opacity=\"0.15\">\n";
    for (const auto &b : reports.front().report->per_elevation)
    {
        if (b.density <= 0.0)
            continue;
        band += "<rect x=\"" + fixed(x.map(b.el_lo_deg)) + "\" y=\"" + fixed(yd.map(b.density)) + "\" width=\"" +
                fixed(x.map(b.el_hi_deg) - x.map(b.el_lo_deg)) + "\" height=\"" +
                fixed(yd.map(0.0) - yd.map(b.density)) + "\"/>\n";
    }
    band += "</g>\n";
    svg.raw(band);
    svg.frame(x, y, "elevation angle (deg)", "MAE (dB)");
    svg.ticks_y(yd, kWidth - kRight, "start", 6.0);
    svg.text(kWidth - 18, (kTop + kHeight - kBottom) / 2, "sample density", "middle", 12,
             " transform=\"rotate(90 " + fixed(kWidth - 18) + " " + fixed((kTop + kHeight - kBottom) / 2) + ")\"");

    csv = "series,el_lo_deg,el_hi_deg,mae_db,density\n";
    std::vector<std::pair<std::string, std::string>> legend{{"density", "#c6dbef"}};
    for (std::size_t k = 0; k < reports.size(); ++k)
    {
        std::string path;
        std::string marks;
        for (const auto &b : reports[k].report->per_elevation)
        {
            csv += reports[k].name + "," + format_double(b.el_lo_deg) + "," + format_double(b.el_hi_deg) + "," +
                   (b.mae_db ? format_double(*b.mae_db) : std::string()) + "," + format_double(b.density) + "\n";
            if (!b.mae_db)
            {
                path.clear();
                continue;
            }
            const double px = x.map(0.5 * (b.el_lo_deg + b.el_hi_deg)), py = y.map(*b.mae_db);
            path += (path.empty() ? "M" : " L") + fixed(px) + "," + fixed(py);
            marks += "<circle cx=\"" + fixed(px) + "\" cy=\"" + fixed(py) + "\" r=\"2.5\"/>\n";
        }
        svg.raw(std::string("<g stroke=\"") + color(k) + "\" fill=\"" + color(k) + "\">\n");
        if (!path.empty())
            svg.raw("<path d=\"" + path + "\" fill=\"none\" stroke-width=\"1.5\"/>\n");
        svg.raw(marks + "</g>\n");
        legend.emplace_back(reports[k].name, color(k));
    }
    svg.legend(legend);
    return svg.finish();
}

} // namespace

std::vector<fs::path> render_plots(const std::vector<NamedReport> &reports, const fs::path &out_dir,
                                   const std::vector<std::string> &provenance)
{
    if (reports.empty())
        throw Error(ErrorCode::EmptySamples, "no reports to plot");
    for (const auto &nr : reports)
        if (!nr.report || nr.report->residuals.empty())
            throw Error(ErrorCode::EmptySamples, "report '" + nr.name + "' has no residuals to plot");

    // Render everything before touching the filesystem so failures leave no partial output.
    std::string scatter_csv, cdf_csv, elev_csv;
    const std::string scatter = scatter_svg(reports, provenance, scatter_csv);
    const std::string cdf = cdf_svg(reports, provenance, cdf_csv);
    const std::string elev = elevation_svg(reports, provenance, elev_csv);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw Error(ErrorCode::IoError, out_dir.string() + ": cannot create directory");

    const std::pair<const char *, const std::string *> files[] = {
        {"scatter.svg", &scatter},       {"scatter.csv", &scatter_csv},     {"error_cdf.svg", &cdf},
        {"error_cdf.csv", &cdf_csv},     {"elevation_mae.svg", &elev},      {"elevation_mae.csv", &elev_csv},
    };
    std::vector<fs::path> written;
    for (const auto &[name, content] : files)
    {
        write_text_atomic(out_dir / name, *content);
        written.push_back(out_dir / name);
    }
    return written;
}

} // namespace skypattern
