#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mpld/geometry.hpp"

namespace mpld {

/// Conflict graph over features: edge (i,j) iff the features sit closer than
/// the minimum coloring distance (strict inequality at the boundary).
struct LayoutGraph {
  int n = 0;
  std::vector<std::pair<int, int>> conflict_edges;  // i < j, sorted
  std::vector<std::vector<int>> adjacency;

  bool has_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    return std::binary_search(conflict_edges.begin(), conflict_edges.end(), std::pair{i, j});
  }
};

namespace detail {

/// Uniform grid over rectangle bounding boxes. Cell size equals the query
/// distance so any rectangle within that distance of a query box lies in one
/// of the cells covered by the box expanded by one distance unit.
class GridIndex {
 public:
  GridIndex(Coord cell, std::size_t expected) : cell_(std::max<Coord>(cell, 1)) {
    cells_.reserve(expected * 2);
  }

  void insert(const Rect& r, int id) {
    for_cells(r.x_lo, r.y_lo, r.x_hi, r.y_hi,
              [&](std::int64_t key) { cells_[key].push_back(id); });
  }

  template <typename Fn>
  void query_expanded(const Rect& r, Coord margin, Fn&& fn) const {
    for_cells(
        std::int64_t(r.x_lo) - margin, std::int64_t(r.y_lo) - margin,
        std::int64_t(r.x_hi) + margin, std::int64_t(r.y_hi) + margin, [&](std::int64_t key) {
          auto it = cells_.find(key);
          if (it == cells_.end()) return;
          for (int id : it->second) fn(id);
        });
  }

 private:
  template <typename Fn>
  void for_cells(std::int64_t x_lo, std::int64_t y_lo, std::int64_t x_hi, std::int64_t y_hi,
                 Fn&& fn) const {
    const std::int64_t cx0 = floor_div(x_lo), cx1 = floor_div(x_hi);
    const std::int64_t cy0 = floor_div(y_lo), cy1 = floor_div(y_hi);
    for (std::int64_t cy = cy0; cy <= cy1; ++cy)
      for (std::int64_t cx = cx0; cx <= cx1; ++cx)
        fn((cy << 32) ^ (cx & 0xffffffff));  // cell coords fit 32 bits, key is unique
  }

  std::int64_t floor_div(std::int64_t v) const {
    return v >= 0 ? v / cell_ : -((-v + cell_ - 1) / cell_);
  }

  Coord cell_;
  mutable std::unordered_map<std::int64_t, std::vector<int>> cells_;
};

}  // namespace detail

/// Builds the conflict graph with a grid-bucket index; the edge set is
/// identical to the all-pairs rule
///   (i,j) in CE  iff  i != j and feature_gap_sq(i,j) < d^2.
inline LayoutGraph build_layout_graph(const Layout& layout) {
  const Coord d = static_cast<Coord>(layout.min_color_dist_nm);
  const Dist2 d2 = Dist2(d) * d;
  const int n = static_cast<int>(layout.features.size());

  // Index rectangles, remembering the owning feature.
  struct Entry {
    Rect rect;
    int feature;
  };
  std::vector<Entry> entries;
  for (const Feature& f : layout.features)
    for (const Rect& r : f.rects) entries.push_back({r, f.id});

  detail::GridIndex grid(d, entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    grid.insert(entries[i].rect, static_cast<int>(i));

  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Entry& a = entries[i];
    grid.query_expanded(a.rect, d, [&](int j) {
      const Entry& b = entries[static_cast<std::size_t>(j)];
      if (b.feature <= a.feature) return;  // one direction; also skips same feature
      if (gap_sq(a.rect, b.rect) < d2) edges.emplace_back(a.feature, b.feature);
    });
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  LayoutGraph g;
  g.n = n;
  g.conflict_edges = std::move(edges);
  g.adjacency.assign(n, {});
  for (auto [i, j] : g.conflict_edges) {
    g.adjacency[i].push_back(j);
    g.adjacency[j].push_back(i);
  }
  return g;
}

}  // namespace mpld
