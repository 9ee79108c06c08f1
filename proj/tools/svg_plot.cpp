#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>

namespace cmon_cli {
namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 55;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) {
      lo = 0;
      hi = 1;
    } else if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

std::ofstream open(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write plot '" + path + "'");
  return out;
}

// Blue-to-red ramp for t in [0, 1].
std::string ramp(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255 * t));
  const int g = static_cast<int>(std::lround(255 * (1 - std::abs(2 * t - 1)) * 0.8));
  const int b = static_cast<int>(std::lround(255 * (1 - t)));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

void write_line_plot(const LinePlot& plot, const std::string& path) {
  Range xr, yr;
  for (const auto& s : plot.series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
      if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
        xr.add(s.x[i]);
        yr.add(s.y[i]);
      }
  xr.finish();
  yr.finish();

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto sy = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  auto out = open(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(plot.title)
      << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 5; ++k) {
    const double xv = xr.lo + (xr.hi - xr.lo) * k / 5;
    const double yv = yr.lo + (yr.hi - yr.lo) * k / 5;
    out << "<line x1=\"" << sx(xv) << "\" y1=\"" << kTop + ph << "\" x2=\"" << sx(xv) << "\" y2=\"" << kTop + ph + 5
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << sx(xv) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">" << num(xv)
        << "</text>\n";
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << sy(yv) << "\" x2=\"" << kLeft << "\" y2=\"" << sy(yv)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">" << num(yv)
        << "</text>\n";
  }
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
      << escape(plot.x_label) << "</text>\n";
  out << "<text transform=\"translate(16," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(plot.y_label) << "</text>\n";

  std::set<std::string> legend_seen;
  double legend_y = kTop + 14;
  for (const auto& s : plot.series) {
    std::string pts;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      pts += num(sx(s.x[i])) + "," + num(sy(s.y[i])) + " ";
    }
    if (!pts.empty())
      out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"" << pts
          << "\"/>\n";
    if (!s.label.empty() && legend_seen.insert(s.label).second) {
      out << "<line x1=\"" << kLeft + pw - 120 << "\" y1=\"" << legend_y << "\" x2=\"" << kLeft + pw - 100
          << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
      out << "<text x=\"" << kLeft + pw - 94 << "\" y=\"" << legend_y + 4 << "\">" << escape(s.label)
          << "</text>\n";
      legend_y += 16;
    }
  }
  out << "</svg>\n";
}

void write_heatmap(const std::vector<std::vector<double>>& values, const std::string& title, const std::string& path) {
  const std::size_t p = values.size();
  const std::size_t q = p ? values.front().size() : 0;
  Range r;
  for (const auto& row : values)
    for (double v : row)
      if (std::isfinite(v)) r.add(v);
  r.finish();

  const double side = 400;
  const double cw = p ? side / static_cast<double>(p) : side;
  const double ch = q ? side / static_cast<double>(q) : side;
  auto out = open(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side + 120 << "\" height=\"" << side + 60
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << (side + 120) / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
      << "</text>\n";
  // Row i is x, column j is y; y grows upward.
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < values[i].size(); ++j)
      out << "<rect x=\"" << num(20 + i * cw) << "\" y=\"" << num(40 + side - (j + 1) * ch) << "\" width=\""
          << num(cw + 0.05) << "\" height=\"" << num(ch + 0.05) << "\" fill=\""
          << ramp((values[i][j] - r.lo) / (r.hi - r.lo)) << "\"/>\n";
  for (int k = 0; k <= 10; ++k) {
    const double t = k / 10.0;
    out << "<rect x=\"" << side + 40 << "\" y=\"" << num(40 + side - (k + 1) * side / 11) << "\" width=\"20\" height=\""
        << num(side / 11) << "\" fill=\"" << ramp(t) << "\"/>\n";
    out << "<text x=\"" << side + 64 << "\" y=\"" << num(40 + side - k * side / 11 - side / 22 + 4) << "\">"
        << num(r.lo + t * (r.hi - r.lo)) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace cmon_cli
