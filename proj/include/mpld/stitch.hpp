#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "mpld/geometry.hpp"
#include "mpld/layout_graph.hpp"

namespace mpld {

enum class Axis { Horizontal, Vertical };

/// A legal cut position strictly inside a feature's extent along its long
/// axis. Cutting splits the feature into two rectilinear parts.
struct StitchCandidate {
  int feature_id = -1;
  Axis axis = Axis::Horizontal;
  Coord cut_coord = 0;

  bool operator==(const StitchCandidate&) const = default;
};

enum class CandidatePolicy { All, OnePerFeature };

struct Interval {
  Coord lo = 0;
  Coord hi = 0;
  bool operator==(const Interval&) const = default;
};

/// Post-stitch graph: vertices are feature segments, conflict edges connect
/// segments of different features, stitch edges chain consecutive segments of
/// one feature.
struct DecomposedGraph {
  int m = 0;                                     // segment count
  std::vector<int> seg_owner;                    // segment -> feature id
  std::vector<std::vector<Rect>> seg_rects;      // segment geometry
  std::vector<std::pair<int, int>> conflict_edges;  // i < j, sorted
  std::vector<std::pair<int, int>> stitch_edges;    // i < j, sorted
  std::vector<std::vector<int>> ce_adj;
  std::vector<std::vector<int>> se_adj;
};

inline Axis long_axis(const Feature& f) {
  const Rect b = f.bbox();
  return b.width() >= b.height() ? Axis::Horizontal : Axis::Vertical;
}

namespace detail {

inline Coord axis_lo(const Rect& r, Axis a) { return a == Axis::Horizontal ? r.x_lo : r.y_lo; }
inline Coord axis_hi(const Rect& r, Axis a) { return a == Axis::Horizontal ? r.x_hi : r.y_hi; }

inline std::vector<Interval> merge_intervals(std::vector<Interval> v) {
  std::sort(v.begin(), v.end(),
            [](const Interval& a, const Interval& b) { return std::tie(a.lo, a.hi) < std::tie(b.lo, b.hi); });
  std::vector<Interval> out;
  for (const Interval& iv : v) {
    if (!out.empty() && iv.lo <= out.back().hi)
      out.back().hi = std::max(out.back().hi, iv.hi);
    else
      out.push_back(iv);
  }
  return out;
}

// Clips a rectangle to a band along the axis; empty result -> nullopt.
inline std::optional<Rect> clip_to_band(const Rect& r, Axis axis, Coord lo, Coord hi) {
  Rect c = r;
  if (axis == Axis::Horizontal) {
    c.x_lo = std::max(r.x_lo, lo);
    c.x_hi = std::min(r.x_hi, hi);
    if (c.x_lo >= c.x_hi) return std::nullopt;
  } else {
    c.y_lo = std::max(r.y_lo, lo);
    c.y_hi = std::min(r.y_hi, hi);
    if (c.y_lo >= c.y_hi) return std::nullopt;
  }
  return c;
}

inline Dist2 rects_gap_sq(std::span<const Rect> a, std::span<const Rect> b) {
  Dist2 best = std::numeric_limits<Dist2>::max();
  for (const Rect& ra : a)
    for (const Rect& rb : b) best = std::min(best, gap_sq(ra, rb));
  return best;
}

}  // namespace detail

/// Projects conflicting neighbors onto the feature's long axis.
///
/// Every neighbor rectangle within the coloring distance of the feature
/// shadows the interval it spans along the axis, expanded by `expand` on both
/// ends and clipped to the feature extent. Returns the sorted union. A cut is
/// only useful outside these intervals: inside, both halves would still
/// conflict with the neighbor.
inline std::vector<Interval> project_neighbors(const Feature& feature,
                                               std::span<const Feature* const> neighbors,
                                               Coord min_color_dist, Coord expand) {
  const Axis axis = long_axis(feature);
  const Rect fb = feature.bbox();
  const Coord f_lo = detail::axis_lo(fb, axis);
  const Coord f_hi = detail::axis_hi(fb, axis);
  const Dist2 d2 = Dist2(min_color_dist) * min_color_dist;

  std::vector<Interval> covered;
  for (const Feature* nb : neighbors) {
    for (const Rect& nr : nb->rects) {
      Dist2 g = std::numeric_limits<Dist2>::max();
      for (const Rect& fr : feature.rects) g = std::min(g, gap_sq(fr, nr));
      if (g >= d2) continue;
      const Coord lo = std::max<std::int64_t>(f_lo, std::int64_t(detail::axis_lo(nr, axis)) - expand);
      const Coord hi = std::min<std::int64_t>(f_hi, std::int64_t(detail::axis_hi(nr, axis)) + expand);
      if (lo < hi) covered.push_back({lo, hi});
    }
  }
  return detail::merge_intervals(std::move(covered));
}

inline std::vector<Interval> project_neighbors(const Feature& feature,
                                               std::span<const Feature* const> neighbors,
                                               Coord min_color_dist) {
  return project_neighbors(feature, neighbors, min_color_dist, min_color_dist);
}

namespace detail {

// Conflict-neighbor count of one side of a cut: neighbors within the coloring
// distance of the side's clipped geometry.
inline int side_neighbor_count(const Feature& f, Axis axis, Coord band_lo, Coord band_hi,
                               std::span<const Feature* const> neighbors, Dist2 d2) {
  std::vector<Rect> side;
  for (const Rect& r : f.rects)
    if (auto c = clip_to_band(r, axis, band_lo, band_hi)) side.push_back(*c);
  int count = 0;
  for (const Feature* nb : neighbors)
    if (rects_gap_sq(side, nb->rects) < d2) ++count;
  return count;
}

}  // namespace detail

struct StitchOptions {
  CandidatePolicy policy = CandidatePolicy::All;
  Coord projection_expand = -1;  // -1: use min_color_dist_nm
};

/// Generates stitch candidates for every feature of the layout.
///
/// Each maximal uncovered open interval of positive length strictly between
/// two covered intervals yields one candidate at its midpoint. Terminal gaps
/// produce none. Under OnePerFeature only the candidate whose two sides have
/// the most balanced conflict-neighbor counts survives (ties: smaller cut).
/// Output is sorted by (feature_id, cut_coord).
inline std::vector<StitchCandidate> generate_stitch_candidates(const LayoutGraph& graph,
                                                               const Layout& layout,
                                                               const StitchOptions& opt = {}) {
  const Coord d = static_cast<Coord>(layout.min_color_dist_nm);
  const Coord expand = opt.projection_expand >= 0 ? opt.projection_expand : d;
  const Dist2 d2 = Dist2(d) * d;

  std::vector<StitchCandidate> out;
  for (const Feature& f : layout.features) {
    const auto& adj = graph.adjacency[f.id];
    if (adj.empty()) continue;
    std::vector<const Feature*> neighbors;
    neighbors.reserve(adj.size());
    for (int nb : adj) neighbors.push_back(&layout.features[nb]);

    const Axis axis = long_axis(f);
    const Rect fb = f.bbox();
    const Coord f_lo = detail::axis_lo(fb, axis);
    const Coord f_hi = detail::axis_hi(fb, axis);
    const auto covered = project_neighbors(f, neighbors, d, expand);

    std::vector<StitchCandidate> cands;
    for (std::size_t i = 0; i + 1 < covered.size(); ++i) {
      const Coord gap_lo = covered[i].hi;
      const Coord gap_hi = covered[i + 1].lo;
      if (gap_lo >= gap_hi) continue;
      const Coord cut = static_cast<Coord>(
          (std::int64_t(gap_lo) + gap_hi) >= 0 ? (std::int64_t(gap_lo) + gap_hi) / 2
                                               : -((-(std::int64_t(gap_lo) + gap_hi) + 1) / 2));
      if (cut <= f_lo || cut >= f_hi) continue;
      cands.push_back({f.id, axis, cut});
    }

    if (opt.policy == CandidatePolicy::OnePerFeature && cands.size() > 1) {
      int best = 0;
      int best_balance = std::numeric_limits<int>::max();
      for (std::size_t i = 0; i < cands.size(); ++i) {
        const Coord c = cands[i].cut_coord;
        const int left = detail::side_neighbor_count(f, axis, f_lo, c, neighbors, d2);
        const int right = detail::side_neighbor_count(f, axis, c, f_hi, neighbors, d2);
        const int balance = std::abs(left - right);
        if (balance < best_balance) {
          best_balance = balance;
          best = static_cast<int>(i);
        }
      }
      cands = {cands[static_cast<std::size_t>(best)]};
    }
    out.insert(out.end(), cands.begin(), cands.end());
  }
  std::sort(out.begin(), out.end(), [](const StitchCandidate& a, const StitchCandidate& b) {
    return std::tie(a.feature_id, a.cut_coord) < std::tie(b.feature_id, b.cut_coord);
  });
  return out;
}

/// Splits features at their cut coordinates and rebuilds conflict edges over
/// segments. Stitch edges chain consecutive segments of one feature; segments
/// of the same feature never share a conflict edge.
inline DecomposedGraph build_decomposed_graph(const LayoutGraph& graph, const Layout& layout,
                                              std::span<const StitchCandidate> candidates) {
  (void)graph;
  const Coord d = static_cast<Coord>(layout.min_color_dist_nm);
  const Dist2 d2 = Dist2(d) * d;
  const int n = static_cast<int>(layout.features.size());

  std::vector<std::vector<Coord>> cuts(static_cast<std::size_t>(n));
  for (const StitchCandidate& c : candidates) {
    if (c.feature_id < 0 || c.feature_id >= n)
      raise(ErrorCode::CutOutsideFeature, "candidate names an unknown feature");
    const Feature& f = layout.features[static_cast<std::size_t>(c.feature_id)];
    const Rect fb = f.bbox();
    const Axis axis = long_axis(f);
    if (c.cut_coord <= detail::axis_lo(fb, axis) || c.cut_coord >= detail::axis_hi(fb, axis))
      raise(ErrorCode::CutOutsideFeature, "cut outside the feature extent");
    cuts[static_cast<std::size_t>(c.feature_id)].push_back(c.cut_coord);
  }

  DecomposedGraph dg;
  for (const Feature& f : layout.features) {
    auto& fc = cuts[static_cast<std::size_t>(f.id)];
    std::sort(fc.begin(), fc.end());
    fc.erase(std::unique(fc.begin(), fc.end()), fc.end());

    const Axis axis = long_axis(f);
    const Rect fb = f.bbox();
    std::vector<Coord> bounds;
    bounds.push_back(detail::axis_lo(fb, axis));
    bounds.insert(bounds.end(), fc.begin(), fc.end());
    bounds.push_back(detail::axis_hi(fb, axis));

    int prev_seg = -1;
    for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
      std::vector<Rect> seg;
      for (const Rect& r : f.rects)
        if (auto c = detail::clip_to_band(r, axis, bounds[b], bounds[b + 1])) seg.push_back(*c);
      const int id = dg.m++;
      dg.seg_owner.push_back(f.id);
      dg.seg_rects.push_back(std::move(seg));
      if (prev_seg >= 0) dg.stitch_edges.emplace_back(prev_seg, id);
      prev_seg = id;
    }
  }

  // Conflict edges over segments, same distance rule and grid index as the
  // layout graph.
  struct Entry {
    Rect rect;
    int seg;
  };
  std::vector<Entry> entries;
  for (int s = 0; s < dg.m; ++s)
    for (const Rect& r : dg.seg_rects[static_cast<std::size_t>(s)]) entries.push_back({r, s});
  detail::GridIndex grid(d, entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    grid.insert(entries[i].rect, static_cast<int>(i));

  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Entry& a = entries[i];
    grid.query_expanded(a.rect, d, [&](int j) {
      const Entry& b = entries[static_cast<std::size_t>(j)];
      if (b.seg <= a.seg) return;
      if (dg.seg_owner[static_cast<std::size_t>(a.seg)] ==
          dg.seg_owner[static_cast<std::size_t>(b.seg)])
        return;
      if (gap_sq(a.rect, b.rect) < d2) edges.emplace_back(a.seg, b.seg);
    });
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  dg.conflict_edges = std::move(edges);

  dg.ce_adj.assign(static_cast<std::size_t>(dg.m), {});
  dg.se_adj.assign(static_cast<std::size_t>(dg.m), {});
  for (auto [i, j] : dg.conflict_edges) {
    dg.ce_adj[static_cast<std::size_t>(i)].push_back(j);
    dg.ce_adj[static_cast<std::size_t>(j)].push_back(i);
  }
  for (auto [i, j] : dg.stitch_edges) {
    dg.se_adj[static_cast<std::size_t>(i)].push_back(j);
    dg.se_adj[static_cast<std::size_t>(j)].push_back(i);
  }
  return dg;
}

}  // namespace mpld
