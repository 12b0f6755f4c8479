// Shared layouts and generators for the test suites.
#pragma once

#include <random>
#include <vector>

#include "mpld/coloring.hpp"
#include "mpld/geometry.hpp"

namespace fixtures {

// Four mutually conflicting features (a 4-clique at d = 120) arranged so that
// projection leaves exactly two uncovered gaps on the tall wire T. Without
// stitches the best 3-coloring pays one conflict; with stitches one stitch
// resolves everything.
//
//   T  - tall wire x[0,40], y[0,820]
//   P  - bar + column + bridge, hugging T at y~[0,40] and y~[420,460]
//   Q  - column + top bar, hugging T at y~[740,780]
//   R  - tooth next to T plus a long arm running under everything
inline mpld::Layout golden_quad() {
  using mpld::Rect;
  mpld::Layout layout;
  layout.min_color_dist_nm = 120;
  std::vector<Rect> rects = {
      // T
      {0, 0, 40, 820, 1},
      // P: bar, column, bridge
      {100, 0, 400, 40, 1},
      {360, 0, 400, 460, 1},
      {100, 420, 400, 460, 1},
      // Q: column, top bar
      {460, 0, 500, 740, 1},
      {100, 740, 500, 780, 1},
      // R: tooth, arm
      {-159, -100, -119, 160, 1},
      {-159, -140, 500, -100, 1},
  };
  layout.features = mpld::merge_connected_rects(rects);
  return layout;
}

// Scatters axis-aligned bars on a loose grid; pitch is chosen relative to the
// coloring distance so conflicts are common but cliques stay small. Smaller
// pitch factors pack tighter and conflict more.
inline mpld::Layout random_layout(std::mt19937& rng, int n_features, mpld::Coord d = 120,
                                  double pitch_factor = 2.0) {
  using mpld::Coord;
  mpld::Layout layout;
  layout.min_color_dist_nm = d;
  std::uniform_int_distribution<int> jitter(0, d / 2);
  std::uniform_int_distribution<int> len(d / 2, 2 * d);
  std::uniform_int_distribution<int> orient(0, 1);

  const int cols = std::max(2, static_cast<int>(std::sqrt(double(n_features)) + 0.5));
  const Coord pitch = static_cast<Coord>(pitch_factor * d);
  std::vector<mpld::Rect> rects;
  for (int i = 0; i < n_features; ++i) {
    const Coord cx = static_cast<Coord>((i % cols) * pitch + jitter(rng));
    const Coord cy = static_cast<Coord>((i / cols) * pitch + jitter(rng));
    const Coord w = orient(rng) ? static_cast<Coord>(len(rng)) : Coord(40);
    const Coord h = w == 40 ? static_cast<Coord>(len(rng)) : Coord(40);
    rects.push_back({cx, cy, static_cast<Coord>(cx + w), static_cast<Coord>(cy + h), 1});
  }
  layout.features = mpld::merge_connected_rects(rects);
  return layout;
}

// Random coloring instance: undirected simple CE set at the given density,
// plus a few SE edges on pairs not already in CE.
inline mpld::ColoringInstance random_instance(std::mt19937& rng, int n, double density,
                                              int stitch_edges, int k, double alpha = 0.1) {
  mpld::ColoringInstance inst;
  inst.k = k;
  inst.alpha = alpha;
  inst.graph.n = n;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<int, int>> free_pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng) < density)
        inst.graph.ce.emplace_back(i, j);
      else
        free_pairs.emplace_back(i, j);
    }
  std::shuffle(free_pairs.begin(), free_pairs.end(), rng);
  for (int s = 0; s < stitch_edges && s < static_cast<int>(free_pairs.size()); ++s)
    inst.graph.se.push_back(free_pairs[static_cast<std::size_t>(s)]);
  std::sort(inst.graph.se.begin(), inst.graph.se.end());
  return inst;
}

}  // namespace fixtures
