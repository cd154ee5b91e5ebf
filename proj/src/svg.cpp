#include "mobius/svg.hpp"

#include "mobius/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>

namespace mobius {

namespace {

constexpr double kSize = 600.0;
constexpr double kMargin = 40.0;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

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

struct Box {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
  double x1 = -x0, y1 = -x0;
  void add(double x, double y) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  bool empty() const { return x0 > x1; }
};

struct Frame {
  double cx, cy, scale;
  double sx(double x) const { return kSize / 2 + (x - cx) * scale; }
  double sy(double y) const { return kSize / 2 - (y - cy) * scale; }
  double world_x(double px) const { return cx + (px - kSize / 2) / scale; }
  double world_y(double py) const { return cy - (py - kSize / 2) / scale; }
};

// Segment of {x : n.x = d} inside the axis-aligned box, Liang-Barsky style.
std::optional<std::array<double, 4>> clip_line(const Eigen::Vector2d& n, double d, double x0, double y0, double x1,
                                               double y1) {
  const Eigen::Vector2d p = n * d;
  const Eigen::Vector2d t(-n.y(), n.x());
  double lo = -std::numeric_limits<double>::infinity(), hi = -lo;
  const double pv[2] = {p.x(), p.y()}, tv[2] = {t.x(), t.y()};
  const double mins[2] = {x0, y0}, maxs[2] = {x1, y1};
  for (int k = 0; k < 2; ++k) {
    if (std::abs(tv[k]) < 1e-15) {
      if (pv[k] < mins[k] || pv[k] > maxs[k]) return std::nullopt;
      continue;
    }
    double a = (mins[k] - pv[k]) / tv[k], b = (maxs[k] - pv[k]) / tv[k];
    if (a > b) std::swap(a, b);
    lo = std::max(lo, a);
    hi = std::min(hi, b);
  }
  if (lo > hi) return std::nullopt;
  return std::array<double, 4>{p.x() + lo * t.x(), p.y() + lo * t.y(), p.x() + hi * t.x(), p.y() + hi * t.y()};
}

}  // namespace

std::string render_svg(const Configuration& conf) {
  if (conf.dim() != 2) throw Error(ErrorCode::InvalidArgument, "rendering needs dim = 2");

  Box box;
  if (conf.kind() == ConfigKind::Balls) {
    for (const auto& b : conf.balls()) {
      if (b.is_sphere()) {
        const auto& s = b.as_sphere();
        box.add(s.center[0] - s.radius, s.center[1] - s.radius);
        box.add(s.center[0] + s.radius, s.center[1] + s.radius);
      } else {
        const auto& h = b.as_half_space();
        box.add(h.normal[0] * h.offset, h.normal[1] * h.offset);
      }
    }
  } else {
    for (const auto& p : conf.points()) {
      if (!p.is_infinite()) box.add(p.coords()[0], p.coords()[1]);
    }
  }
  if (box.empty()) box.add(0.0, 0.0);
  const double span = std::max({box.x1 - box.x0, box.y1 - box.y0, 1.0});
  const Frame fr{(box.x0 + box.x1) / 2, (box.y0 + box.y1) / 2, (kSize - 2 * kMargin) / span};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kSize) << "\" height=\"" << fmt(kSize)
      << "\" viewBox=\"0 0 " << fmt(kSize) << " " << fmt(kSize) << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << fmt(kSize) << "\" height=\"" << fmt(kSize)
      << "\" fill=\"white\" stroke=\"none\"/>\n";

  std::vector<std::string> at_infinity;
  for (std::size_t i = 0; i < conf.size(); ++i) {
    const std::string label = escape(conf.labels()[i]);
    if (conf.kind() == ConfigKind::Points) {
      const ExtendedPoint& p = conf.points()[i];
      if (p.is_infinite()) {
        at_infinity.push_back(label);
        continue;
      }
      const double x = fr.sx(p.coords()[0]), y = fr.sy(p.coords()[1]);
      svg << "<circle class=\"point\" cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
          << "\" r=\"3.000\" fill=\"black\"/>\n";
      svg << "<text x=\"" << fmt(x + 5) << "\" y=\"" << fmt(y - 5) << "\" font-size=\"12\">" << label << "</text>\n";
      continue;
    }

    const OrientedBall& b = conf.balls()[i];
    if (b.is_sphere()) {
      const auto& s = b.as_sphere();
      const bool inside = s.side == Side::Inside;
      const double x = fr.sx(s.center[0]), y = fr.sy(s.center[1]), r = s.radius * fr.scale;
      svg << "<circle class=\"sphere\" cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << fmt(r)
          << "\" fill=\"" << (inside ? "#3b6ea5" : "none") << "\" fill-opacity=\"0.15\" stroke=\"#3b6ea5\""
          << (inside ? "" : " stroke-dasharray=\"6 3\"") << "/>\n";
      svg << "<text x=\"" << fmt(x + r * 0.7071 + 4) << "\" y=\"" << fmt(y - r * 0.7071 - 4)
          << "\" font-size=\"12\">" << label << (inside ? "" : " (outside)") << "</text>\n";
      continue;
    }

    const auto& h = b.as_half_space();
    const Eigen::Vector2d n(h.normal[0], h.normal[1]);
    const auto seg = clip_line(n, h.offset, fr.world_x(0), fr.world_y(kSize), fr.world_x(kSize), fr.world_y(0));
    if (!seg) {
      at_infinity.push_back(label + " (boundary outside view)");
      continue;
    }
    const auto& s = *seg;
    svg << "<line class=\"halfspace\" x1=\"" << fmt(fr.sx(s[0])) << "\" y1=\"" << fmt(fr.sy(s[1])) << "\" x2=\""
        << fmt(fr.sx(s[2])) << "\" y2=\"" << fmt(fr.sy(s[3])) << "\" stroke=\"#a5463b\"/>\n";
    // short tick pointing into the half-plane
    const double mx = (s[0] + s[2]) / 2, my = (s[1] + s[3]) / 2;
    const double tick = 15.0 / fr.scale;
    svg << "<line class=\"normal\" x1=\"" << fmt(fr.sx(mx)) << "\" y1=\"" << fmt(fr.sy(my)) << "\" x2=\""
        << fmt(fr.sx(mx + tick * n.x())) << "\" y2=\"" << fmt(fr.sy(my + tick * n.y()))
        << "\" stroke=\"#a5463b\"/>\n";
    svg << "<text x=\"" << fmt(fr.sx(mx + 1.6 * tick * n.x()) + 3) << "\" y=\"" << fmt(fr.sy(my + 1.6 * tick * n.y()))
        << "\" font-size=\"12\">" << label << " (line through ∞, clipped)</text>\n";
  }

  double y = 16.0;
  for (const auto& l : at_infinity) {
    svg << "<text x=\"8.000\" y=\"" << fmt(y) << "\" font-size=\"12\">∞: " << l << "</text>\n";
    y += 14.0;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace mobius
