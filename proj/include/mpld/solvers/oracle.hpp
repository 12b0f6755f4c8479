#pragma once

#include "mpld/coloring.hpp"

namespace mpld {

/// Exhaustive k^n ground truth: plain enumeration with no pruning, the cost
/// accumulated level by level over edges into lower-indexed vertices. Ties
/// break toward the lexicographically smallest color vector. Guarded at 16
/// vertices.
inline Solution oracle_solve(const ColoringInstance& inst) {
  const int n = inst.graph.n;
  if (n > 16) raise(ErrorCode::TooLarge, "oracle enumerates k^n; n must be <= 16");
  if (n == 0) return make_solution(inst, {});

  // edges grouped under their higher endpoint (self-loops are constant cost)
  struct Back {
    int to;
    bool stitch;
  };
  std::vector<std::vector<Back>> back(static_cast<std::size_t>(n));
  double base = 0.0;
  for (auto [i, j] : inst.graph.ce) {
    if (i == j)
      base += 1.0;
    else
      back[static_cast<std::size_t>(std::max(i, j))].push_back({std::min(i, j), false});
  }
  for (auto [i, j] : inst.graph.se)
    if (i != j) back[static_cast<std::size_t>(std::max(i, j))].push_back({std::min(i, j), true});

  std::vector<int> assign(static_cast<std::size_t>(n), 0);
  std::vector<double> level_cost(static_cast<std::size_t>(n) + 1, base);
  std::vector<int> best;
  double best_cost = std::numeric_limits<double>::infinity();

  int depth = 0;
  assign[0] = -1;
  while (depth >= 0) {
    int& c = assign[static_cast<std::size_t>(depth)];
    ++c;
    if (c >= inst.k) {
      c = -1;
      --depth;
      continue;
    }
    double cost = level_cost[static_cast<std::size_t>(depth)];
    for (const Back& e : back[static_cast<std::size_t>(depth)]) {
      if (e.stitch) {
        if (assign[static_cast<std::size_t>(e.to)] != c) cost += inst.alpha;
      } else {
        if (assign[static_cast<std::size_t>(e.to)] == c) cost += 1.0;
      }
    }
    if (depth + 1 == n) {
      if (cost < best_cost) {
        best_cost = cost;
        best = assign;
      }
      continue;
    }
    level_cost[static_cast<std::size_t>(depth) + 1] = cost;
    ++depth;
    assign[static_cast<std::size_t>(depth)] = -1;
  }
  return make_solution(inst, std::move(best));
}

}  // namespace mpld
