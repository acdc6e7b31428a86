#pragma once

// Deterministic SVG 1.1 output for a LayoutResult.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "topiccloud/error.hpp"
#include "topiccloud/layout.hpp"
#include "topiccloud/style.hpp"
#include "topiccloud/text.hpp"

namespace topiccloud {

struct Stroke {
  Rgb color;
  double width = 1.0;
};

struct RenderOptions {
  std::optional<Rgb> background;  // nullopt: transparent
  std::optional<Stroke> stroke;   // slice outlines
  int decimals = 2;
  bool embed_label = false;
};

inline std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Point on the canvas circle at `angle` degrees (screen convention, clockwise).
inline Point point_on_circle(Point center, double radius, double angle) {
  const double rad = angle * std::numbers::pi / 180.0;
  return {center.x + radius * std::cos(rad), center.y + radius * std::sin(rad)};
}

inline std::string render_svg(const LayoutResult& result, const RenderOptions& opts = {}) {
  if (opts.decimals < 1 || opts.decimals > 6)
    throw ValidationError("render: decimals must be in [1, 6]");
  const int d = opts.decimals;
  auto f = [d](double v) { return text::fixed(v, d); };
  const auto& p = result.params;
  const Point c = result.center;
  const double r = p.radius;

  std::string stroke_attrs;
  if (opts.stroke)
    stroke_attrs = " stroke=\"" + opts.stroke->color.hex() + "\" stroke-width=\"" +
                   f(opts.stroke->width) + "\"";

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(p.width) + "\" height=\"" + std::to_string(p.height) + "\" viewBox=\"0 0 " +
         std::to_string(p.width) + " " + std::to_string(p.height) + "\">\n";
  if (opts.background)
    out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(p.width) + "\" height=\"" +
           std::to_string(p.height) + "\" fill=\"" + opts.background->hex() + "\"/>\n";
  out += "<circle cx=\"" + f(c.x) + "\" cy=\"" + f(c.y) + "\" r=\"" + f(r) +
         "\" fill=\"#ffffff\"" + stroke_attrs + "/>\n";

  for (const auto& s : result.slices) {
    if (!(s.sweep > 0)) throw ValidationError("render: slice with non-positive sweep");
    if (s.sweep >= 360.0 - 1e-9) {
      out += "<circle cx=\"" + f(c.x) + "\" cy=\"" + f(c.y) + "\" r=\"" + f(r) + "\" fill=\"" +
             s.color.hex() + "\"" + stroke_attrs + "/>\n";
      continue;
    }
    const Point a = point_on_circle(c, r, s.start_angle);
    const Point b = point_on_circle(c, r, s.start_angle + s.sweep);
    const char* large = s.sweep > 180.0 ? "1" : "0";
    out += "<path d=\"M " + f(c.x) + " " + f(c.y) + " L " + f(a.x) + " " + f(a.y) + " A " + f(r) +
           " " + f(r) + " 0 " + large + " 1 " + f(b.x) + " " + f(b.y) + " Z\" fill=\"" +
           s.color.hex() + "\"" + stroke_attrs + "/>\n";
  }

  const double ascent_ratio =
      static_cast<double>(result.font.ascent) / static_cast<double>(result.font.units_per_em);
  const auto family = xml_escape(result.font.family);
  for (const auto& w : result.words) {
    const double baseline = w.anchor.y + ascent_ratio * w.font_size;
    out += "<text x=\"" + f(w.anchor.x) + "\" y=\"" + f(baseline) + "\" font-family=\"" + family +
           "\" font-size=\"" + f(w.font_size) + "\" fill=\"" + w.color.hex() + "\">" +
           xml_escape(w.surface) + "</text>\n";
  }

  if (opts.embed_label && result.label && !result.label->empty()) {
    const double y = std::min<double>(p.height - 4.0, c.y + r + 16.0);
    out += "<text x=\"" + f(c.x) + "\" y=\"" + f(y) + "\" font-family=\"" + family +
           "\" font-size=\"" + f(14.0) + "\" text-anchor=\"middle\" fill=\"#333333\">" +
           xml_escape(*result.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace topiccloud
