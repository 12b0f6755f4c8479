#pragma once

#include <span>
#include <sstream>
#include <string>

#include "mpld/geometry.hpp"

namespace mpld {

/// A stitch cut drawn across a feature, in layout coordinates.
struct StitchLine {
  Point a, b;
};

/// Renders the layout with one filled path per feature. Colors index a fixed
/// four-entry palette (uncolored features are gray); stitch cuts are drawn as
/// dashed lines. The y axis is flipped so the layout reads the usual way up.
inline std::string write_svg(const Layout& layout, std::span<const int> colors,
                             std::span<const StitchLine> stitches = {}) {
  static constexpr const char* kPalette[4] = {"#3182bd", "#e6550d", "#31a354", "#756bb1"};

  Coord x0 = 0, y0 = 0, x1 = 1, y1 = 1;
  bool first = true;
  for (const Feature& f : layout.features)
    for (const Rect& r : f.rects) {
      if (first) {
        x0 = r.x_lo;
        y0 = r.y_lo;
        x1 = r.x_hi;
        y1 = r.y_hi;
        first = false;
      }
      x0 = std::min(x0, r.x_lo);
      y0 = std::min(y0, r.y_lo);
      x1 = std::max(x1, r.x_hi);
      y1 = std::max(y1, r.y_hi);
    }
  const std::int64_t margin = std::max<std::int64_t>(10, (std::int64_t(x1) - x0) / 20);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << (std::int64_t(x0) - margin)
     << " " << (std::int64_t(y0) - margin) << " " << (std::int64_t(x1) - x0 + 2 * margin) << " "
     << (std::int64_t(y1) - y0 + 2 * margin) << "\">\n";
  // flip y inside a group so geometry stays in layout coordinates
  os << "<g transform=\"translate(0," << (std::int64_t(y0) + y1) << ") scale(1,-1)\">\n";

  for (std::size_t f = 0; f < layout.features.size(); ++f) {
    const char* fill = "#bdbdbd";
    if (f < colors.size() && colors[f] >= 0 && colors[f] < 4)
      fill = kPalette[colors[f]];
    os << "<path fill=\"" << fill << "\" fill-opacity=\"0.85\" d=\"";
    for (const Rect& r : layout.features[f].rects)
      os << "M" << r.x_lo << " " << r.y_lo << " H" << r.x_hi << " V" << r.y_hi << " H" << r.x_lo
         << " Z ";
    os << "\"/>\n";
  }
  for (const StitchLine& s : stitches)
    os << "<line x1=\"" << s.a.x << "\" y1=\"" << s.a.y << "\" x2=\"" << s.b.x << "\" y2=\""
       << s.b.y << "\" stroke=\"#d62728\" stroke-width=\"6\" stroke-dasharray=\"12,8\"/>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace mpld
