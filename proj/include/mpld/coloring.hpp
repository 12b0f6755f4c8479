#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <vector>

#include "mpld/error.hpp"
#include "mpld/stitch.hpp"

namespace mpld {

/// Abstract coloring problem: conflict edges cost 1 when endpoints match,
/// stitch edges cost alpha when they differ. Parallel edges and (for quotient
/// graphs) self-loops are allowed; each entry counts once.
struct ColoringGraph {
  int n = 0;
  std::vector<std::pair<int, int>> ce;
  std::vector<std::pair<int, int>> se;

  static ColoringGraph from_decomposed(const DecomposedGraph& dg) {
    return ColoringGraph{dg.m, dg.conflict_edges, dg.stitch_edges};
  }
  static ColoringGraph from_layout_graph(const LayoutGraph& g) {
    return ColoringGraph{g.n, g.conflict_edges, {}};
  }
};

struct ColoringInstance {
  ColoringGraph graph;
  int k = 3;
  double alpha = 0.1;
};

struct Solution {
  std::vector<int> colors;
  int conflict_count = 0;
  int stitch_count = 0;
  double cost = 0.0;
  bool optimal = true;
};

/// Recounts conflicts and stitches from scratch; the single source of truth
/// for costs.
inline Solution make_solution(const ColoringInstance& inst, std::vector<int> colors,
                              bool optimal = true) {
  for (int v = 0; v < inst.graph.n; ++v)
    if (colors[static_cast<std::size_t>(v)] < 0 || colors[static_cast<std::size_t>(v)] >= inst.k)
      raise(ErrorCode::UncoloredVertex, "vertex " + std::to_string(v) + " has no legal color");
  Solution s;
  s.colors = std::move(colors);
  for (auto [i, j] : inst.graph.ce)
    if (s.colors[static_cast<std::size_t>(i)] == s.colors[static_cast<std::size_t>(j)])
      ++s.conflict_count;
  for (auto [i, j] : inst.graph.se)
    if (s.colors[static_cast<std::size_t>(i)] != s.colors[static_cast<std::size_t>(j)])
      ++s.stitch_count;
  s.cost = s.conflict_count + inst.alpha * s.stitch_count;
  s.optimal = optimal;
  return s;
}

namespace detail {

struct AdjEntry {
  int to;
  bool stitch;
};

inline std::vector<std::vector<AdjEntry>> build_adjacency(const ColoringGraph& g) {
  std::vector<std::vector<AdjEntry>> adj(static_cast<std::size_t>(g.n));
  for (auto [i, j] : g.ce) {
    adj[static_cast<std::size_t>(i)].push_back({j, false});
    if (i != j) adj[static_cast<std::size_t>(j)].push_back({i, false});
  }
  for (auto [i, j] : g.se) {
    adj[static_cast<std::size_t>(i)].push_back({j, true});
    if (i != j) adj[static_cast<std::size_t>(j)].push_back({i, true});
  }
  return adj;
}

/// BFS order over the whole graph starting each unvisited sweep from the
/// highest-degree vertex (ties: lowest id). Dense conflicts are decided early.
inline std::vector<int> bfs_order_from_max_degree(const ColoringGraph& g) {
  const auto adj = build_adjacency(g);
  const int n = g.n;
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) degree[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());

  std::vector<int> by_degree(static_cast<std::size_t>(n));
  std::iota(by_degree.begin(), by_degree.end(), 0);
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](int a, int b) { return degree[static_cast<std::size_t>(a)] > degree[static_cast<std::size_t>(b)]; });

  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int root : by_degree) {
    if (seen[static_cast<std::size_t>(root)]) continue;
    std::queue<int> q;
    q.push(root);
    seen[static_cast<std::size_t>(root)] = true;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      order.push_back(v);
      std::vector<int> next;
      for (const AdjEntry& e : adj[static_cast<std::size_t>(v)])
        if (!seen[static_cast<std::size_t>(e.to)]) {
          seen[static_cast<std::size_t>(e.to)] = true;
          next.push_back(e.to);
        }
      std::sort(next.begin(), next.end());
      for (int u : next) q.push(u);
    }
  }
  return order;
}

}  // namespace detail

}  // namespace mpld
