#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "expscatter/cli.hpp"
#include "expscatter/errors.hpp"

namespace expscatter::cli {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 30, kBottom = 60;

struct Point {
  double e, t, r;
};

std::string fmt(const char* pattern, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

std::string fmt2(double x, double y) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f,%.2f", x, y);
  return buf;
}

}  // namespace

std::string render_plot(const SweepTable& table, Spacing x_axis) {
  std::vector<Point> pts;
  for (const auto& row : table.rows) {
    const auto& c = row.cells;
    const auto t = c[2] ? c[2] : c[4];
    const auto r = c[3] ? c[3] : c[5];
    if (!c[0] || !t || !r) continue;
    if (x_axis == Spacing::log && !(*c[0] > 0.0)) continue;
    pts.push_back({*c[0], *t, *r});
  }
  if (pts.empty()) throw UsageError("sweep table has no plottable rows");
  std::sort(pts.begin(), pts.end(),
            [](const Point& a, const Point& b) { return a.e < b.e; });

  auto xval = [&](double e) { return x_axis == Spacing::log ? std::log10(e) : e; };
  double lo = xval(pts.front().e), hi = xval(pts.back().e);
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto sx = [&](double e) { return kLeft + (xval(e) - lo) / (hi - lo) * pw; };
  auto sy = [&](double p) { return kTop + (1.0 - p) * ph; };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" "
       "viewBox=\"0 0 640 420\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"420\" fill=\"white\"/>\n";
  s += "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  s += "<path d=\"M" + fmt2(kLeft, kTop) + " L" + fmt2(kLeft, kTop + ph) +
       " L" + fmt2(kLeft + pw, kTop + ph) + "\"/>\n";
  s += "</g>\n";

  s += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double p = i / 5.0;
    s += "<text x=\"" + fmt("%.2f", kLeft - 6) + "\" y=\"" +
         fmt("%.2f", sy(p) + 4) + "\" text-anchor=\"end\">" + fmt("%.1f", p) +
         "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double v = lo + (hi - lo) * i / 4.0;
    const double label = x_axis == Spacing::log ? std::pow(10.0, v) : v;
    s += "<text x=\"" + fmt("%.2f", kLeft + pw * i / 4.0) + "\" y=\"" +
         fmt("%.2f", kTop + ph + 16) + "\" text-anchor=\"middle\">" +
         fmt("%.3g", label) + "</text>\n";
  }
  s += "</g>\n";
  s += "<text x=\"" + fmt("%.2f", kLeft + pw / 2) + "\" y=\"" +
       fmt("%.2f", kHeight - 18) +
       "\" font-family=\"sans-serif\" font-size=\"13\" "
       "text-anchor=\"middle\">E</text>\n";
  s += "<text x=\"18\" y=\"" + fmt("%.2f", kTop + ph / 2) +
       "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
       "transform=\"rotate(-90 18 " + fmt("%.2f", kTop + ph / 2) +
       ")\">probability</text>\n";

  auto series = [&](const char* id, const char* colour, auto pick) {
    std::string out = std::string("<polyline id=\"") + id +
                      "\" fill=\"none\" stroke=\"" + colour +
                      "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out += ' ';
      out += fmt2(sx(pts[i].e), sy(std::clamp(pick(pts[i]), 0.0, 1.0)));
    }
    return out + "\"/>\n";
  };
  s += series("T", "#1f4e9c", [](const Point& p) { return p.t; });
  s += series("R", "#b8322a", [](const Point& p) { return p.r; });

  s += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<text x=\"" + fmt("%.2f", kLeft + pw - 40) + "\" y=\"" +
       fmt("%.2f", kTop + 14) + "\" fill=\"#1f4e9c\">T</text>\n";
  s += "<text x=\"" + fmt("%.2f", kLeft + pw - 20) + "\" y=\"" +
       fmt("%.2f", kTop + 14) + "\" fill=\"#b8322a\">R</text>\n";
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace expscatter::cli
