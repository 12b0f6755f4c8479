#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "mpld/error.hpp"

namespace mpld {

// Coordinates are integer nanometers and must fit the signed 32-bit GDSII range.
using Coord = std::int32_t;
using Dist2 = std::int64_t;  // squared distances in nm^2

struct Point {
  Coord x = 0;
  Coord y = 0;
  bool operator==(const Point&) const = default;
};

/// Axis-aligned rectangle, half-open nowhere: [x_lo,x_hi] x [y_lo,y_hi] with
/// x_lo < x_hi and y_lo < y_hi.
struct Rect {
  Coord x_lo = 0;
  Coord y_lo = 0;
  Coord x_hi = 0;
  Coord y_hi = 0;
  std::int32_t layer = 0;

  bool operator==(const Rect&) const = default;

  bool valid() const { return x_lo < x_hi && y_lo < y_hi; }
  std::int64_t width() const { return std::int64_t(x_hi) - x_lo; }
  std::int64_t height() const { return std::int64_t(y_hi) - y_lo; }
  std::int64_t area() const { return width() * height(); }
};

inline bool rect_less(const Rect& a, const Rect& b) {
  return std::tie(a.y_lo, a.x_lo, a.y_hi, a.x_hi) < std::tie(b.y_lo, b.x_lo, b.y_hi, b.x_hi);
}

/// One mask pattern: a connected set of rectangles on a single layer.
struct Feature {
  int id = -1;
  std::vector<Rect> rects;
  std::int32_t layer = 0;

  Rect bbox() const {
    Rect b{std::numeric_limits<Coord>::max(), std::numeric_limits<Coord>::max(),
           std::numeric_limits<Coord>::min(), std::numeric_limits<Coord>::min(), layer};
    for (const Rect& r : rects) {
      b.x_lo = std::min(b.x_lo, r.x_lo);
      b.y_lo = std::min(b.y_lo, r.y_lo);
      b.x_hi = std::max(b.x_hi, r.x_hi);
      b.y_hi = std::max(b.y_hi, r.y_hi);
    }
    return b;
  }
};

struct Layout {
  std::vector<Feature> features;
  std::int64_t db_unit_nm = 1;
  std::int64_t min_color_dist_nm = 120;
};

/// Squared gap between two rectangles: 0 iff they touch or overlap. Gaps are
/// clamped at 2^30 nm per axis (about a meter) so the squares never overflow;
/// any clamped value still exceeds every meaningful coloring distance.
inline Dist2 gap_sq(const Rect& a, const Rect& b) {
  constexpr std::int64_t kClamp = std::int64_t{1} << 30;
  const std::int64_t dx = std::clamp<std::int64_t>(
      std::int64_t(std::max(a.x_lo, b.x_lo)) - std::min(a.x_hi, b.x_hi), 0, kClamp);
  const std::int64_t dy = std::clamp<std::int64_t>(
      std::int64_t(std::max(a.y_lo, b.y_lo)) - std::min(a.y_hi, b.y_hi), 0, kClamp);
  return dx * dx + dy * dy;
}

/// Minimum squared gap over all rectangle pairs of two features.
inline Dist2 feature_gap_sq(const Feature& a, const Feature& b) {
  Dist2 best = std::numeric_limits<Dist2>::max();
  for (const Rect& ra : a.rects)
    for (const Rect& rb : b.rects) best = std::min(best, gap_sq(ra, rb));
  return best;
}

/// True when the rectangles overlap or share a boundary segment of positive
/// length. Corner-only contact does not count.
inline bool rects_connected(const Rect& a, const Rect& b) {
  const Coord ix_lo = std::max(a.x_lo, b.x_lo);
  const Coord ix_hi = std::min(a.x_hi, b.x_hi);
  const Coord iy_lo = std::max(a.y_lo, b.y_lo);
  const Coord iy_hi = std::min(a.y_hi, b.y_hi);
  return (ix_lo < ix_hi && iy_lo <= iy_hi) || (iy_lo < iy_hi && ix_lo <= ix_hi);
}

namespace detail {

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Strips consecutive duplicate points and a trailing repeat of the first point.
inline std::vector<Point> normalize_loop(std::span<const Point> loop) {
  std::vector<Point> pts;
  pts.reserve(loop.size());
  for (const Point& p : loop) {
    if (pts.empty() || !(pts.back() == p)) pts.push_back(p);
  }
  if (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
  return pts;
}

struct Seg {
  Point a, b;
  bool horizontal() const { return a.y == b.y; }
};

// Closed-segment intersection test for axis-parallel segments.
inline bool segments_intersect(const Seg& s, const Seg& t) {
  auto lo = [](Coord u, Coord v) { return std::min(u, v); };
  auto hi = [](Coord u, Coord v) { return std::max(u, v); };
  return lo(s.a.x, s.b.x) <= hi(t.a.x, t.b.x) && lo(t.a.x, t.b.x) <= hi(s.a.x, s.b.x) &&
         lo(s.a.y, s.b.y) <= hi(t.a.y, t.b.y) && lo(t.a.y, t.b.y) <= hi(s.a.y, s.b.y);
}

}  // namespace detail

/// Splits a simple rectilinear loop into interior-disjoint rectangles.
///
/// The canonical split slices at every distinct y of a horizontal edge, so
/// each output rectangle is a maximal horizontal slab of its band. Output is
/// sorted by (y_lo, x_lo) and the union is exactly the polygon interior.
inline std::vector<Rect> decompose_polygon(std::span<const Point> vertices,
                                           std::int32_t layer = 0) {
  std::vector<Point> pts = detail::normalize_loop(vertices);
  if (pts.size() < 4) raise(ErrorCode::NonRectilinear, "loop needs at least 4 vertices");

  const std::size_t n = pts.size();
  std::vector<detail::Seg> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = pts[i];
    const Point& b = pts[(i + 1) % n];
    if (a.x != b.x && a.y != b.y)
      raise(ErrorCode::NonRectilinear, "diagonal edge in polygon outline");
    edges.push_back({a, b});
  }

  // Simplicity: non-adjacent edges must not touch. Adjacent edges share only
  // their common endpoint by construction (duplicates were stripped).
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (detail::segments_intersect(edges[i], edges[j]))
        raise(ErrorCode::SelfIntersecting, "polygon outline touches itself");
    }
  }

  // Band boundaries: distinct ys of horizontal edges (equivalently of all
  // vertices, since edge directions alternate).
  std::vector<Coord> ys;
  ys.reserve(n);
  for (const Point& p : pts) ys.push_back(p.y);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  std::vector<Rect> out;
  for (std::size_t bi = 0; bi + 1 < ys.size(); ++bi) {
    const Coord y0 = ys[bi], y1 = ys[bi + 1];
    // Vertical edges spanning this band, paired left-to-right by parity.
    std::vector<Coord> xs;
    for (const detail::Seg& e : edges) {
      if (e.horizontal()) continue;
      const Coord e_lo = std::min(e.a.y, e.b.y), e_hi = std::max(e.a.y, e.b.y);
      if (e_lo <= y0 && e_hi >= y1) xs.push_back(e.a.x);
    }
    std::sort(xs.begin(), xs.end());
    if (xs.size() % 2 != 0) raise(ErrorCode::SelfIntersecting, "odd crossing count in band");
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
      if (xs[i] == xs[i + 1]) raise(ErrorCode::SelfIntersecting, "degenerate band interval");
      out.push_back(Rect{xs[i], y0, xs[i + 1], y1, layer});
    }
  }
  std::sort(out.begin(), out.end(), rect_less);
  return out;
}

/// Groups rectangles into features: two rectangles belong to the same feature
/// iff a chain of overlapping / positively-abutting pairs links them. Feature
/// ids follow the smallest member rectangle index. Rectangles on different
/// layers never merge.
inline std::vector<Feature> merge_connected_rects(std::span<const Rect> rects) {
  const int n = static_cast<int>(rects.size());
  detail::DisjointSet ds(rects.size());

  // Sweep by x_lo; only pairs whose x ranges meet can connect.
  std::vector<int> order(rects.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return rects[a].x_lo < rects[b].x_lo; });
  std::vector<int> active;
  for (int oi = 0; oi < n; ++oi) {
    const int i = order[oi];
    std::erase_if(active, [&](int j) { return rects[j].x_hi < rects[i].x_lo; });
    for (int j : active) {
      if (rects[i].layer == rects[j].layer && rects_connected(rects[i], rects[j]))
        ds.unite(i, j);
    }
    active.push_back(i);
  }

  std::vector<int> root_to_feature(rects.size(), -1);
  std::vector<Feature> features;
  for (int i = 0; i < n; ++i) {
    const int root = ds.find(i);
    if (root_to_feature[root] < 0) {
      root_to_feature[root] = static_cast<int>(features.size());
      Feature f;
      f.id = root_to_feature[root];
      f.layer = rects[i].layer;
      features.push_back(std::move(f));
    }
    features[root_to_feature[root]].rects.push_back(rects[i]);
  }
  return features;
}

/// Shoelace area of a rectilinear loop (absolute value, integer exact).
inline std::int64_t polygon_area(std::span<const Point> vertices) {
  std::vector<Point> pts = detail::normalize_loop(vertices);
  std::int64_t twice = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& a = pts[i];
    const Point& b = pts[(i + 1) % pts.size()];
    twice += std::int64_t(a.x) * b.y - std::int64_t(b.x) * a.y;
  }
  return std::abs(twice) / 2;
}

}  // namespace mpld
