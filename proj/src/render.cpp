#include "ncp/render.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

namespace ncp {

namespace {

constexpr double kPanel = 200.0;
constexpr double kRadius = 70.0;

struct Point {
  double x;
  double y;
};

Point vertex(int e, int n, double offset_x) {
  const double angle = 2.0 * std::numbers::pi * (e - 1) / n;
  return {offset_x + kPanel / 2 + kRadius * std::sin(angle), kPanel / 2 - kRadius * std::cos(angle)};
}

std::string fmt(const char* pattern, double a, double b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

std::string header(double width, double height) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.2f\" height=\"%.2f\" viewBox=\"0 0 %.2f "
                "%.2f\">\n<rect width=\"100%%\" height=\"100%%\" fill=\"white\"/>\n",
                width, height, width, height);
  return buf;
}

std::string circle_and_labels(int n, double offset_x) {
  std::string out = "<circle cx=\"" + fmt("%.2f", offset_x + kPanel / 2, 0) + "\" cy=\"" + fmt("%.2f", kPanel / 2, 0) +
                    "\" r=\"" + fmt("%.2f", kRadius, 0) + "\" fill=\"none\" stroke=\"#bbbbbb\"/>\n";
  for (int e = 1; e <= n; ++e) {
    const Point p = vertex(e, n, offset_x);
    const double angle = 2.0 * std::numbers::pi * (e - 1) / n;
    const Point label{offset_x + kPanel / 2 + (kRadius + 14) * std::sin(angle),
                      kPanel / 2 - (kRadius + 14) * std::cos(angle) + 4};
    out += "<circle cx=\"" + fmt("%.2f", p.x, 0) + "\" cy=\"" + fmt("%.2f", p.y, 0) + "\" r=\"3.00\" fill=\"black\"/>\n";
    out += "<text x=\"" + fmt("%.2f", label.x, 0) + "\" y=\"" + fmt("%.2f", label.y, 0) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" + std::to_string(e) + "</text>\n";
  }
  return out;
}

std::string line(Point a, Point b, const char* colour) {
  return "<line x1=\"" + fmt("%.2f", a.x, 0) + "\" y1=\"" + fmt("%.2f", a.y, 0) + "\" x2=\"" + fmt("%.2f", b.x, 0) +
         "\" y2=\"" + fmt("%.2f", b.y, 0) + "\" stroke=\"" + colour + "\" stroke-width=\"2\"/>\n";
}

std::string blocks(const Partition& p, double offset_x) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::string out;
  int colour = 0;
  for (Mask block : p.blocks()) {
    const char* c = palette[colour++ % 5];
    std::vector<Point> pts;
    for_each_element(block, [&](int e) { pts.push_back(vertex(e, p.n(), offset_x)); });
    if (pts.size() == 2) {
      out += line(pts[0], pts[1], c);
      continue;
    }
    out += "<polygon points=\"";
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k > 0) out += ' ';
      out += fmt("%.2f,%.2f", pts[k].x, pts[k].y);
    }
    out += std::string("\" fill=\"") + c + "\" fill-opacity=\"0.35\" stroke=\"" + c + "\" stroke-width=\"2\"/>\n";
  }
  return out;
}

std::string caption(const std::string& text, double offset_x) {
  return "<text x=\"" + fmt("%.2f", offset_x + kPanel / 2, 0) + "\" y=\"" + fmt("%.2f", kPanel + 8, 0) +
         "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">" + text + "</text>\n";
}

}  // namespace

std::string render_svg(const Partition& p) {
  std::string out = header(kPanel, kPanel + 20);
  out += circle_and_labels(p.n(), 0);
  out += blocks(p, 0);
  out += caption(p.str().empty() ? "0" : p.str(), 0);
  return out + "</svg>\n";
}

std::string render_svg(const Chain& f) {
  std::string out = header(kPanel * static_cast<double>(f.size()), kPanel + 20);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double offset = kPanel * static_cast<double>(k);
    out += circle_and_labels(f.n(), offset);
    out += blocks(f[k], offset);
    out += caption(f[k].str(), offset);
  }
  return out + "</svg>\n";
}

std::string render_svg(const NcSpanningTree& tree) {
  std::string out = header(kPanel, kPanel + 20);
  out += circle_and_labels(tree.n(), 0);
  for (const auto& [a, b] : tree.edges()) out += line(vertex(a, tree.n(), 0), vertex(b, tree.n(), 0), "#1f77b4");
  out += caption(tree.str(), 0);
  return out + "</svg>\n";
}

}  // namespace ncp
