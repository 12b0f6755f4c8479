#pragma once

#include <chrono>

#include "mpld/coloring.hpp"

namespace mpld {

/// Toroidal doubly-linked sparse matrix for exact cover. One primary column
/// per vertex, one row per (vertex, color) choice; rows are inserted in
/// ascending color order so walking a column downward enumerates colors in
/// order. cover/uncover splice in O(1) per touched node and restore the
/// structure exactly.
class DlxMatrix {
 public:
  DlxMatrix(int vertices, int colors) : n_(vertices), k_(colors) {
    const int total = n_ + 1 + n_ * k_;  // headers + root + row nodes
    left_.resize(total);
    right_.resize(total);
    up_.resize(total);
    down_.resize(total);
    col_.resize(total);
    size_.assign(static_cast<std::size_t>(n_), 0);

    // header ring: root at index n_, headers 0..n_-1
    for (int c = 0; c <= n_; ++c) {
      left_[static_cast<std::size_t>(c)] = c == 0 ? n_ : c - 1;
      right_[static_cast<std::size_t>(c)] = c == n_ ? 0 : c + 1;
      up_[static_cast<std::size_t>(c)] = c;
      down_[static_cast<std::size_t>(c)] = c;
      col_[static_cast<std::size_t>(c)] = c;
    }
    for (int v = 0; v < n_; ++v)
      for (int c = 0; c < k_; ++c) {
        const int node = node_id(v, c);
        // vertical insert at the column bottom
        up_[static_cast<std::size_t>(node)] = up_[static_cast<std::size_t>(v)];
        down_[static_cast<std::size_t>(node)] = v;
        down_[static_cast<std::size_t>(up_[static_cast<std::size_t>(v)])] = node;
        up_[static_cast<std::size_t>(v)] = node;
        // single-node row: horizontally self-linked
        left_[static_cast<std::size_t>(node)] = node;
        right_[static_cast<std::size_t>(node)] = node;
        col_[static_cast<std::size_t>(node)] = v;
        ++size_[static_cast<std::size_t>(v)];
      }
  }

  int node_id(int v, int c) const { return n_ + 1 + v * k_ + c; }
  int vertex_of(int node) const { return (node - n_ - 1) / k_; }
  int color_of(int node) const { return (node - n_ - 1) % k_; }
  int root() const { return n_; }
  int column_size(int c) const { return size_[static_cast<std::size_t>(c)]; }
  int down(int node) const { return down_[static_cast<std::size_t>(node)]; }
  int up(int node) const { return up_[static_cast<std::size_t>(node)]; }
  int left(int node) const { return left_[static_cast<std::size_t>(node)]; }
  int right(int node) const { return right_[static_cast<std::size_t>(node)]; }

  void cover(int c) {
    left_[static_cast<std::size_t>(right_[static_cast<std::size_t>(c)])] =
        left_[static_cast<std::size_t>(c)];
    right_[static_cast<std::size_t>(left_[static_cast<std::size_t>(c)])] =
        right_[static_cast<std::size_t>(c)];
    for (int i = down_[static_cast<std::size_t>(c)]; i != c; i = down_[static_cast<std::size_t>(i)])
      for (int j = right_[static_cast<std::size_t>(i)]; j != i;
           j = right_[static_cast<std::size_t>(j)]) {
        up_[static_cast<std::size_t>(down_[static_cast<std::size_t>(j)])] =
            up_[static_cast<std::size_t>(j)];
        down_[static_cast<std::size_t>(up_[static_cast<std::size_t>(j)])] =
            down_[static_cast<std::size_t>(j)];
        --size_[static_cast<std::size_t>(col_[static_cast<std::size_t>(j)])];
      }
  }

  void uncover(int c) {
    for (int i = up_[static_cast<std::size_t>(c)]; i != c; i = up_[static_cast<std::size_t>(i)])
      for (int j = left_[static_cast<std::size_t>(i)]; j != i;
           j = left_[static_cast<std::size_t>(j)]) {
        ++size_[static_cast<std::size_t>(col_[static_cast<std::size_t>(j)])];
        up_[static_cast<std::size_t>(down_[static_cast<std::size_t>(j)])] = j;
        down_[static_cast<std::size_t>(up_[static_cast<std::size_t>(j)])] = j;
      }
    left_[static_cast<std::size_t>(right_[static_cast<std::size_t>(c)])] = c;
    right_[static_cast<std::size_t>(left_[static_cast<std::size_t>(c)])] = c;
  }

  /// Mutual link integrity over the REACHABLE structure (covered columns are
  /// intentionally bypassed by their former neighbors). On a fully restored
  /// matrix this covers every node.
  bool links_intact() const {
    int cols = 0;
    for (int c = right(root()); c != root(); c = right(c)) {
      if (left(right(c)) != c || right(left(c)) != c) return false;
      int rows = 0;
      for (int i = down(c); i != c; i = down(i)) {
        if (down(up_[static_cast<std::size_t>(i)]) != i) return false;
        if (up_[static_cast<std::size_t>(down_[static_cast<std::size_t>(i)])] != i) return false;
        ++rows;
      }
      if (rows != size_[static_cast<std::size_t>(c)]) return false;
      if (++cols > n_) return false;  // corrupted ring
    }
    return true;
  }

  bool operator==(const DlxMatrix& other) const {
    return left_ == other.left_ && right_ == other.right_ && up_ == other.up_ &&
           down_ == other.down_ && size_ == other.size_;
  }

 private:
  int n_, k_;
  std::vector<int> left_, right_, up_, down_, col_;
  std::vector<int> size_;
};

/// Exact-cover search over the matrix: columns are chosen in a fixed BFS
/// order rooted at the highest-degree vertex so dense conflicts conclude
/// early; rows (colors) are tried in ascending order. Edge costs to already
/// colored neighbors accumulate at row choice and bound the search against
/// the incumbent. Optimal when the search exhausts.
inline Solution solve_dlx(const ColoringInstance& inst, double time_budget_s = 3600.0) {
  const int n = inst.graph.n;
  if (n == 0) return make_solution(inst, {});
  const auto order = detail::bfs_order_from_max_degree(inst.graph);
  const auto adj = detail::build_adjacency(inst.graph);

  DlxMatrix matrix(n, inst.k);
  std::vector<int> colors(static_cast<std::size_t>(n), -1);
  std::vector<int> best;
  double best_cost = std::numeric_limits<double>::infinity();
  bool exhausted = true;

  double partial = 0.0;
  for (auto [i, j] : inst.graph.ce)
    if (i == j) partial += 1.0;

  auto delta_cost = [&](int v, int c) {
    double d = 0.0;
    for (const detail::AdjEntry& e : adj[static_cast<std::size_t>(v)]) {
      if (e.to == v) continue;
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

  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(time_budget_s));
  long long steps = 0;

  struct Frame {
    int column;
    int node;      // current row node within the column (column id before first)
    double before; // partial cost before this level's choice
  };
  std::vector<Frame> stack;
  stack.push_back({order[0], order[0], partial});
  matrix.cover(order[0]);

  while (!stack.empty()) {
    if ((++steps & 0x3ff) == 0 && std::chrono::steady_clock::now() > deadline) {
      exhausted = false;
      break;
    }
    Frame& f = stack.back();
    const int v = f.column;
    if (f.node != f.column) {  // undo previous row choice
      colors[static_cast<std::size_t>(v)] = -1;
      partial = f.before;
    }
    f.node = matrix.down(f.node);
    if (f.node == f.column) {  // column exhausted
      matrix.uncover(f.column);
      stack.pop_back();
      continue;
    }
    const int c = matrix.color_of(f.node);
    const double next = partial + delta_cost(v, c);
    if (next >= best_cost) continue;
    colors[static_cast<std::size_t>(v)] = c;
    partial = next;
    if (stack.size() == static_cast<std::size_t>(n)) {
      best_cost = partial;
      best = colors;
      colors[static_cast<std::size_t>(v)] = -1;
      partial = f.before;
      continue;
    }
    const int next_col = order[stack.size()];
    matrix.cover(next_col);
    stack.push_back({next_col, next_col, partial});
  }
  // unwind any live covers (budget path)
  while (!stack.empty()) {
    matrix.uncover(stack.back().column);
    stack.pop_back();
  }

  if (best.empty()) {
    for (int i = 0; i < n; ++i) {
      const int v = order[static_cast<std::size_t>(i)];
      if (colors[static_cast<std::size_t>(v)] >= 0) continue;
      int pick = 0;
      double pick_cost = std::numeric_limits<double>::infinity();
      for (int c = 0; c < inst.k; ++c) {
        const double d = delta_cost(v, c);
        if (d < pick_cost) {
          pick_cost = d;
          pick = c;
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
