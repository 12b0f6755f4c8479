#pragma once

#include <chrono>

#include "mpld/coloring.hpp"

namespace mpld {

/// DFS color assignment with incremental cost and incumbent pruning.
///
/// Vertices are explored in BFS order from the highest-degree vertex, colors
/// in ascending index. The partial cost counts only fully decided edges, so
/// pruning at `partial >= best` is sound. Exhausting the search proves
/// optimality; running out of budget returns the best complete coloring found
/// so far, flagged non-optimal.
inline Solution solve_backtracking(const ColoringInstance& inst,
                                   double time_budget_s = 3600.0) {
  const int n = inst.graph.n;
  if (n == 0) return make_solution(inst, {});

  const auto order = detail::bfs_order_from_max_degree(inst.graph);
  const auto adj = detail::build_adjacency(inst.graph);
  std::vector<int> rank(static_cast<std::size_t>(n));  // vertex -> position in order
  for (int i = 0; i < n; ++i) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

  std::vector<int> colors(static_cast<std::size_t>(n), -1);
  std::vector<int> best;
  double best_cost = std::numeric_limits<double>::infinity();
  bool exhausted = true;

  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(time_budget_s));
  long long steps = 0;

  // Cost added by coloring vertex v with c, against already-colored neighbors.
  auto delta_cost = [&](int v, int c) {
    double d = 0.0;
    for (const detail::AdjEntry& e : adj[static_cast<std::size_t>(v)]) {
      if (e.to == v) continue;  // self-loops are charged up front
      const int nc = colors[static_cast<std::size_t>(e.to)];
      if (nc < 0) continue;
      if (e.stitch) {
        if (nc != c) d += inst.alpha;
      } else {
        if (nc == c) d += 1.0;
      }
    }
    return d;
  };

  std::vector<std::pair<int, double>> stack;  // (color tried at depth, partial cost before it)
  int depth = 0;
  double partial = 0.0;
  // conflict self-loops (quotient graphs) cost 1 whatever the color
  for (auto [i, j] : inst.graph.ce)
    if (i == j) partial += 1.0;

  // iterative DFS
  stack.push_back({-1, partial});
  while (!stack.empty()) {
    if ((++steps & 0x3ff) == 0 && std::chrono::steady_clock::now() > deadline) {
      exhausted = false;
      break;
    }
    auto& [c, before] = stack.back();
    const int v = order[static_cast<std::size_t>(depth)];
    // undo previous color at this depth
    if (c >= 0) {
      colors[static_cast<std::size_t>(v)] = -1;
      partial = before;
    }
    ++c;
    if (c >= inst.k) {
      stack.pop_back();
      --depth;
      continue;
    }
    const double next = partial + delta_cost(v, c);
    if (next >= best_cost) continue;  // prune; try next color
    colors[static_cast<std::size_t>(v)] = c;
    partial = next;
    if (depth + 1 == n) {
      best_cost = partial;
      best = colors;
      // keep scanning siblings for strictly better solutions
      colors[static_cast<std::size_t>(v)] = -1;
      partial = before;
      continue;
    }
    ++depth;
    stack.push_back({-1, partial});
  }

  if (best.empty()) {
    // Budget elapsed before any complete assignment: finish greedily so a
    // valid coloring is always returned.
    for (int i = 0; i < n; ++i) {
      const int v = order[static_cast<std::size_t>(i)];
      if (colors[static_cast<std::size_t>(v)] >= 0) continue;
      int pick = 0;
      double pick_cost = std::numeric_limits<double>::infinity();
      for (int cc = 0; cc < inst.k; ++cc) {
        const double d = delta_cost(v, cc);
        if (d < pick_cost) {
          pick_cost = d;
          pick = cc;
        }
      }
      colors[static_cast<std::size_t>(v)] = pick;
    }
    best = colors;
    exhausted = false;
  }
  return make_solution(inst, std::move(best), exhausted);
}

}  // namespace mpld
