#include "h3body/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "h3body/io.hpp"

namespace h3body {

namespace {

constexpr double kSize = 600.0;
constexpr double kMargin = 60.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  // Page coordinates need no more than 0.001 px.
  return format_number(std::round(v * 1000.0) / 1000.0);
}

// Maps a data rectangle onto the drawing area with y pointing up.
struct Frame {
  double x0, x1, y0, y1;

  double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kSize - 2 * kMargin); }
  double py(double y) const { return kSize - kMargin - (y - y0) / (y1 - y0) * (kSize - 2 * kMargin); }
};

class Svg {
 public:
  explicit Svg(const std::string& title) {
    body_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kSize) + "\" height=\"" +
             num(kSize) + "\" viewBox=\"0 0 " + num(kSize) + " " + num(kSize) + "\">\n";
    body_ += "<title>" + escape(title) + "</title>\n";
    body_ += "<rect x=\"0\" y=\"0\" width=\"" + num(kSize) + "\" height=\"" + num(kSize) +
             "\" fill=\"white\"/>\n";
    text(kSize / 2, 30, title, "middle", 16);
  }

  void path(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
            double width = 1.0) {
    if (pts.empty()) return;
    std::string d = "M" + num(pts[0].first) + " " + num(pts[0].second);
    for (std::size_t k = 1; k < pts.size(); ++k) d += " L" + num(pts[k].first) + " " + num(pts[k].second);
    body_ += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" +
             num(width) + "\"/>\n";
  }

  void circle(double cx, double cy, double r, const std::string& stroke, const std::string& fill) {
    body_ += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) + "\" stroke=\"" +
             stroke + "\" fill=\"" + fill + "\"/>\n";
  }

  void text(double x, double y, const std::string& s, const char* anchor = "middle", int size = 13) {
    body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"" +
             std::to_string(size) + "\" text-anchor=\"" + anchor + "\">" + escape(s) + "</text>\n";
  }

  std::string finish() { return body_ + "</svg>\n"; }

 private:
  std::string body_;
};

void axes(Svg& svg, const Frame& f, const std::string& xlabel, const std::string& ylabel) {
  svg.path({{f.px(f.x0), f.py(f.y0)}, {f.px(f.x1), f.py(f.y0)}}, "black");
  svg.path({{f.px(f.x0), f.py(f.y0)}, {f.px(f.x0), f.py(f.y1)}}, "black");
  svg.text((f.px(f.x0) + f.px(f.x1)) / 2, kSize - 20, xlabel);
  svg.text(20, (f.py(f.y0) + f.py(f.y1)) / 2, ylabel);
  svg.text(f.px(f.x0), f.py(f.y0) + 16, format_number(std::round(f.x0 * 1000) / 1000), "start", 11);
  svg.text(f.px(f.x1), f.py(f.y0) + 16, format_number(std::round(f.x1 * 1000) / 1000), "end", 11);
  svg.text(f.px(f.x0) - 4, f.py(f.y0), format_number(std::round(f.y0 * 1000) / 1000), "end", 11);
  svg.text(f.px(f.x0) - 4, f.py(f.y1) + 10, format_number(std::round(f.y1 * 1000) / 1000), "end", 11);
}

}  // namespace

std::string orbit_svg(const std::vector<BallPoint>& pts, const std::string& title) {
  Svg svg(title);
  const Frame f{-1.1, 1.1, -1.1, 1.1};
  svg.circle(f.px(0), f.py(0), f.px(1) - f.px(0), "black", "none");
  const double k = 0.5 / std::numbers::sqrt2;
  std::vector<std::pair<double, double>> page;
  for (const auto& p : pts) page.emplace_back(f.px(p.Y + k * p.Z), f.py(p.X + k * p.Z));
  if (page.size() == 1)
    svg.circle(page[0].first, page[0].second, 3, "steelblue", "steelblue");
  else
    svg.path(page, "steelblue", 1.5);
  svg.text(f.px(0), f.py(1.1) - 6, "X");
  svg.text(f.px(1.1) + 8, f.py(0) + 4, "Y");
  return svg.finish();
}

std::string gamma_curve_svg(const Contour& c, const Grid& g, const std::string& title) {
  Svg svg(title);
  const Frame f{0.0, std::numbers::pi, g.psi_lo, g.psi_hi};
  axes(svg, f, "theta", "psi");
  for (const auto& s : c.segments)
    svg.path({{f.px(s.a.x), f.py(s.a.y)}, {f.px(s.b.x), f.py(s.b.y)}}, "crimson", 2.0);
  return svg.finish();
}

std::string ec_svg(const std::vector<ECSample>& samples, const Grid& g,
                   const std::set<Cell>& singular, const std::string& title) {
  Svg svg(title);
  auto range = [&](auto get) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& s : samples) {
      lo = std::min(lo, get(s));
      hi = std::max(hi, get(s));
    }
    if (!(hi > lo)) hi = lo + 1.0;
    return std::pair{lo, hi};
  };
  const auto [h0, h1] = range([](const ECSample& s) { return s.point.H; });
  const auto [r0, r1] = range([](const ECSample& s) { return s.point.C_re; });
  const auto [i0, i1] = range([](const ECSample& s) { return s.point.C_im; });
  constexpr double kOblique = 0.35;
  const Frame f{0.0, 1.0 + kOblique, 0.0, 1.0 + kOblique};
  auto project = [&](const ECPoint& p) {
    const double h = (p.H - h0) / (h1 - h0);
    const double re = (p.C_re - r0) / (r1 - r0);
    const double im = (p.C_im - i0) / (i1 - i0);
    return std::pair{f.px(re + kOblique * im), f.py(h + kOblique * im)};
  };

  axes(svg, f, "Re C (Im C oblique)", "H");
  if (samples.size() == g.size()) {
    for (int i = 0; i < g.theta_steps; ++i) {
      std::vector<std::pair<double, double>> line;
      for (int j = 0; j < g.psi_steps; ++j) line.push_back(project(samples[g.index(i, j)].point));
      svg.path(line, "royalblue", 0.8);
    }
    for (int j = 0; j < g.psi_steps; ++j) {
      std::vector<std::pair<double, double>> line;
      for (int i = 0; i < g.theta_steps; ++i) line.push_back(project(samples[g.index(i, j)].point));
      svg.path(line, "firebrick", 0.8);
    }
    for (const auto& [i, j] : singular) {
      ECPoint centre;
      for (auto [di, dj] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
        const ECPoint& p = samples[g.index(i + di, j + dj)].point;
        centre.H += 0.25 * p.H;
        centre.C_re += 0.25 * p.C_re;
        centre.C_im += 0.25 * p.C_im;
      }
      const auto [x, y] = project(centre);
      svg.circle(x, y, 2.5, "black", "black");
    }
  }
  svg.text(kSize - kMargin, kMargin - 10, "blue: constant theta, red: constant psi", "end", 11);
  return svg.finish();
}

}  // namespace h3body
