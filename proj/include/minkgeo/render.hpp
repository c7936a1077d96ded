#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "minkgeo/conics.hpp"
#include "minkgeo/planar.hpp"

namespace minkgeo {

/// Figure styling. Coordinates land on an SVG canvas of width x height
/// pixels; `margin` is the blank border in pixels around the world bounding
/// box (which itself gets 10% slack per side).
struct RenderStyle {
  double width = 800.0;
  double height = 600.0;
  double margin = 40.0;
  double stroke_width = 1.5;
  std::vector<std::string> palette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                      "#ff7f0e", "#17becf"};
  bool draw_lines = true;     // the through-center lines l1, l2
  bool draw_markers = true;   // the common Q points

  void validate() const {
    if (!(width > 0.0) || !(height > 0.0) || !(margin >= 0.0) || !(stroke_width > 0.0) ||
        palette.empty())
      throw std::invalid_argument("RenderStyle: dimensions must be positive");
    if (2.0 * margin >= width || 2.0 * margin >= height)
      throw std::invalid_argument("RenderStyle: margin leaves no drawing area");
  }
};

/// One boundary to draw: a closed polyline (exact polygon for p = 1 and
/// p = infinity, sampled otherwise) or an exact ellipse for p = 2.
struct BoundaryCurve {
  double p = 2.0;
  Polyline polyline;
  std::optional<EllipseParams> exact_ellipse;
};

namespace detail {

/// Fixed 6-decimal representation; the documented SVG precision.
inline std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

/// Shortest round-trip decimal for CSV cells.
inline std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct Bbox {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
  bool empty = true;

  void add(Vec2 q) {
    if (empty) {
      min_x = max_x = q.x;
      min_y = max_y = q.y;
      empty = false;
      return;
    }
    min_x = std::min(min_x, q.x);
    max_x = std::max(max_x, q.x);
    min_y = std::min(min_y, q.y);
    max_y = std::max(max_y, q.y);
  }

  void expand(double fraction) {
    const double dx = std::max(max_x - min_x, 1e-9) * fraction;
    const double dy = std::max(max_y - min_y, 1e-9) * fraction;
    min_x -= dx;
    max_x += dx;
    min_y -= dy;
    max_y += dy;
  }
};

inline Bbox curves_bbox(const std::vector<BoundaryCurve>& curves, const std::vector<Vec2>& marks) {
  Bbox box;
  for (const auto& c : curves) {
    for (const Vec2& q : c.polyline.points) box.add(q);
    if (c.exact_ellipse) {
      const EllipseParams& e = *c.exact_ellipse;
      const double ca = std::cos(e.angle()), sa = std::sin(e.angle());
      const double ex = std::hypot(e.a() * ca, e.b() * sa);
      const double ey = std::hypot(e.a() * sa, e.b() * ca);
      box.add(e.center() + Vec2{ex, ey});
      box.add(e.center() - Vec2{ex, ey});
    }
  }
  for (const Vec2& q : marks) box.add(q);
  return box;
}

}  // namespace detail

/// CSV dump of a polyline: header `x,y`, one point per row, shortest
/// round-trip decimals.
inline void write_csv(std::ostream& out, const Polyline& line) {
  out << "x,y\n";
  for (const Vec2& q : line.points)
    out << detail::shortest(q.x) << ',' << detail::shortest(q.y) << '\n';
}

/// Standalone SVG 1.1 figure of the given curves, optional through-center
/// lines and point markers. World coordinates are written at 6 decimals
/// inside a y-up group transform; output is byte-deterministic for equal
/// inputs.
inline void write_svg(std::ostream& out, const std::vector<BoundaryCurve>& curves,
                      const RenderStyle& style, const std::vector<PlanarLine>& lines = {},
                      const std::vector<Vec2>& markers = {}) {
  style.validate();
  detail::Bbox box = detail::curves_bbox(curves, markers);
  if (box.empty) box.add({0.0, 0.0});
  box.expand(0.10);
  const double bw = std::max(box.max_x - box.min_x, 1e-9);
  const double bh = std::max(box.max_y - box.min_y, 1e-9);
  const double k = std::min((style.width - 2.0 * style.margin) / bw,
                            (style.height - 2.0 * style.margin) / bh);
  const double cx = 0.5 * (box.min_x + box.max_x);
  const double cy = 0.5 * (box.min_y + box.max_y);
  const double tx = style.width / 2.0 - k * cx;
  const double ty = style.height / 2.0 + k * cy;

  auto f6 = detail::fmt6;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << f6(style.width)
      << "\" height=\"" << f6(style.height) << "\" viewBox=\"0 0 " << f6(style.width) << ' '
      << f6(style.height) << "\">\n";
  out << "  <g transform=\"translate(" << f6(tx) << ',' << f6(ty) << ") scale(" << f6(k) << ','
      << f6(-k) << ")\" fill=\"none\" stroke-width=\"" << f6(style.stroke_width / k) << "\">\n";

  if (style.draw_lines) {
    // Through-center lines, extended across the whole viewport.
    const double reach = std::hypot(bw, bh);
    for (const PlanarLine& l : lines) {
      const Vec2 d = perp(l.normal);
      const Vec2 a = l.anchor - reach * d;
      const Vec2 b = l.anchor + reach * d;
      out << "    <line x1=\"" << f6(a.x) << "\" y1=\"" << f6(a.y) << "\" x2=\"" << f6(b.x)
          << "\" y2=\"" << f6(b.y) << "\" stroke=\"#888888\" stroke-dasharray=\""
          << f6(6.0 / k) << ' ' << f6(4.0 / k) << "\"/>\n";
    }
  }

  std::size_t color_index = 0;
  for (const auto& c : curves) {
    const std::string& color = style.palette[color_index++ % style.palette.size()];
    if (c.exact_ellipse) {
      const EllipseParams& e = *c.exact_ellipse;
      out << "    <ellipse transform=\"rotate(" << f6(e.angle() * 180.0 / std::numbers::pi) << ' '
          << f6(e.center().x) << ' ' << f6(e.center().y) << ")\" cx=\"" << f6(e.center().x)
          << "\" cy=\"" << f6(e.center().y) << "\" rx=\"" << f6(e.a()) << "\" ry=\"" << f6(e.b())
          << "\" stroke=\"" << color << "\"/>\n";
      continue;
    }
    out << "    <path d=\"";
    for (std::size_t i = 0; i < c.polyline.points.size(); ++i) {
      const Vec2& q = c.polyline.points[i];
      out << (i == 0 ? 'M' : 'L') << f6(q.x) << ' ' << f6(q.y);
    }
    if (c.polyline.closed) out << 'Z';
    out << "\" stroke=\"" << color << "\"/>\n";
  }

  if (style.draw_markers) {
    for (const Vec2& q : markers)
      out << "    <circle cx=\"" << f6(q.x) << "\" cy=\"" << f6(q.y) << "\" r=\"" << f6(3.0 / k)
          << "\" fill=\"#000000\" stroke=\"none\"/>\n";
  }

  out << "  </g>\n</svg>\n";
}

}  // namespace minkgeo
