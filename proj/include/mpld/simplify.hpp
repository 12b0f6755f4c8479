#pragma once

#include <algorithm>
#include <set>
#include <variant>
#include <vector>

#include "mpld/coloring.hpp"

namespace mpld {

// ---------------------------------------------------------------------------
// History events. Replaying the event list in reverse restores every removed
// or merged vertex; component splits are realigned by color rotation.
// ---------------------------------------------------------------------------

struct HiddenVertex {
  int v = -1;
  std::vector<int> ce_neighbors;  // alive neighbors at removal time
  std::vector<int> se_neighbors;
};

struct MergedPair {
  int kept = -1;
  int removed = -1;
};

struct ComponentSplit {
  std::vector<std::vector<int>> components;  // vertex lists, shared vertices duplicated
  std::vector<int> shared;                   // articulation vertices (empty for ICC)
};

using SimplifyEvent = std::variant<HiddenVertex, MergedPair, ComponentSplit>;

struct SimplifyHistory {
  std::vector<SimplifyEvent> events;
};

/// A piece of a larger graph; `to_parent[local] = parent vertex id`.
struct Subgraph {
  ColoringGraph graph;
  std::vector<int> to_parent;
};

enum class SimplifyLevel : int {
  None = 0,
  Icc = 1,
  HideSmallDegree = 2,
  Biconnected = 3,
  MergeSubK4 = 4,
};

// ---------------------------------------------------------------------------
// ICC: connected components over CE and SE.
// ---------------------------------------------------------------------------

struct IccResult {
  std::vector<Subgraph> components;  // ordered by smallest parent vertex id
  ComponentSplit event;
};

inline IccResult simplify_icc(const ColoringGraph& g) {
  const auto adj = detail::build_adjacency(g);
  std::vector<int> comp(static_cast<std::size_t>(g.n), -1);
  int comp_count = 0;
  for (int root = 0; root < g.n; ++root) {
    if (comp[static_cast<std::size_t>(root)] >= 0) continue;
    const int id = comp_count++;
    std::vector<int> stack{root};
    comp[static_cast<std::size_t>(root)] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto& e : adj[static_cast<std::size_t>(v)])
        if (comp[static_cast<std::size_t>(e.to)] < 0) {
          comp[static_cast<std::size_t>(e.to)] = id;
          stack.push_back(e.to);
        }
    }
  }

  IccResult out;
  // components are discovered in ascending smallest-vertex order already
  std::vector<std::vector<int>> members(static_cast<std::size_t>(comp_count));
  for (int v = 0; v < g.n; ++v) members[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])].push_back(v);

  std::vector<int> local(static_cast<std::size_t>(g.n), -1);
  for (const auto& m : members) {
    Subgraph sub;
    sub.to_parent = m;
    sub.graph.n = static_cast<int>(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) local[static_cast<std::size_t>(m[i])] = static_cast<int>(i);
    out.components.push_back(std::move(sub));
  }
  for (auto [i, j] : g.ce)
    out.components[static_cast<std::size_t>(comp[static_cast<std::size_t>(i)])].graph.ce.emplace_back(
        local[static_cast<std::size_t>(i)], local[static_cast<std::size_t>(j)]);
  for (auto [i, j] : g.se)
    out.components[static_cast<std::size_t>(comp[static_cast<std::size_t>(i)])].graph.se.emplace_back(
        local[static_cast<std::size_t>(i)], local[static_cast<std::size_t>(j)]);

  out.event.components = std::move(members);
  return out;
}

// ---------------------------------------------------------------------------
// HIDE_SMALL_DEGREE: iteratively peel vertices with CE+SE degree below k.
// ---------------------------------------------------------------------------

struct HideResult {
  Subgraph core;
  std::vector<HiddenVertex> events;  // in removal order
};

inline HideResult simplify_hide_small_degree(const ColoringGraph& g, int k) {
  const auto adj = detail::build_adjacency(g);
  std::vector<bool> alive(static_cast<std::size_t>(g.n), true);
  std::vector<int> degree(static_cast<std::size_t>(g.n), 0);
  for (int v = 0; v < g.n; ++v) {
    for (const auto& e : adj[static_cast<std::size_t>(v)])
      if (e.to != v) ++degree[static_cast<std::size_t>(v)];
    }

  HideResult out;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.n; ++v) {
      if (!alive[static_cast<std::size_t>(v)] || degree[static_cast<std::size_t>(v)] >= k) continue;
      HiddenVertex ev;
      ev.v = v;
      for (const auto& e : adj[static_cast<std::size_t>(v)]) {
        if (e.to == v || !alive[static_cast<std::size_t>(e.to)]) continue;
        (e.stitch ? ev.se_neighbors : ev.ce_neighbors).push_back(e.to);
        --degree[static_cast<std::size_t>(e.to)];
      }
      alive[static_cast<std::size_t>(v)] = false;
      out.events.push_back(std::move(ev));
      changed = true;
    }
  }

  std::vector<int> local(static_cast<std::size_t>(g.n), -1);
  for (int v = 0; v < g.n; ++v)
    if (alive[static_cast<std::size_t>(v)]) {
      local[static_cast<std::size_t>(v)] = static_cast<int>(out.core.to_parent.size());
      out.core.to_parent.push_back(v);
    }
  out.core.graph.n = static_cast<int>(out.core.to_parent.size());
  for (auto [i, j] : g.ce)
    if (alive[static_cast<std::size_t>(i)] && alive[static_cast<std::size_t>(j)])
      out.core.graph.ce.emplace_back(local[static_cast<std::size_t>(i)], local[static_cast<std::size_t>(j)]);
  for (auto [i, j] : g.se)
    if (alive[static_cast<std::size_t>(i)] && alive[static_cast<std::size_t>(j)])
      out.core.graph.se.emplace_back(local[static_cast<std::size_t>(i)], local[static_cast<std::size_t>(j)]);
  return out;
}

// ---------------------------------------------------------------------------
// BICONNECTED_COMPONENT: split at articulation vertices. Components partition
// the edges; articulation vertices are duplicated into each incident block.
// Output order is a BFS over the block-cut forest so that every component
// after the first shares at most one vertex with earlier ones.
// ---------------------------------------------------------------------------

struct BiconnectedResult {
  std::vector<Subgraph> components;
  ComponentSplit event;
};

namespace detail {

struct BccEdge {
  int u, v;
  bool stitch;
};

// Iterative Tarjan biconnected components over CE+SE.
inline void biconnected_blocks(const ColoringGraph& g, std::vector<std::vector<BccEdge>>& blocks,
                               std::vector<int>& articulation) {
  const int n = g.n;
  std::vector<std::vector<std::pair<int, bool>>> adj(static_cast<std::size_t>(n));
  for (auto [i, j] : g.ce)
    if (i != j) {
      adj[static_cast<std::size_t>(i)].push_back({j, false});
      adj[static_cast<std::size_t>(j)].push_back({i, false});
    }
  for (auto [i, j] : g.se)
    if (i != j) {
      adj[static_cast<std::size_t>(i)].push_back({j, true});
      adj[static_cast<std::size_t>(j)].push_back({i, true});
    }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<bool> is_art(static_cast<std::size_t>(n), false);
  std::vector<BccEdge> edge_stack;
  int timer = 0;

  struct Frame {
    int v;
    int parent;
    std::size_t next_edge;
    int children = 0;
  };

  for (int root = 0; root < n; ++root) {
    if (disc[static_cast<std::size_t>(root)] >= 0) continue;
    std::vector<Frame> stack;
    stack.push_back({root, -1, 0});
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& edges = adj[static_cast<std::size_t>(f.v)];
      if (f.next_edge < edges.size()) {
        const auto [u, stitch] = edges[f.next_edge++];
        if (u == f.parent) continue;
        if (disc[static_cast<std::size_t>(u)] < 0) {
          edge_stack.push_back({f.v, u, stitch});
          disc[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
          ++f.children;
          stack.push_back({u, f.v, 0});
        } else if (disc[static_cast<std::size_t>(u)] < disc[static_cast<std::size_t>(f.v)]) {
          edge_stack.push_back({f.v, u, stitch});
          low[static_cast<std::size_t>(f.v)] =
              std::min(low[static_cast<std::size_t>(f.v)], disc[static_cast<std::size_t>(u)]);
        }
      } else {
        const int v = f.v;
        const int parent = f.parent;
        stack.pop_back();
        if (parent < 0) continue;
        Frame& pf = stack.back();
        low[static_cast<std::size_t>(parent)] =
            std::min(low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(v)]);
        if (low[static_cast<std::size_t>(v)] >= disc[static_cast<std::size_t>(parent)]) {
          // pop one block ending with edge (parent, v)
          std::vector<BccEdge> block;
          while (!edge_stack.empty()) {
            const BccEdge e = edge_stack.back();
            edge_stack.pop_back();
            block.push_back(e);
            if (e.u == parent && e.v == v) break;
          }
          blocks.push_back(std::move(block));
          const bool root_frame = pf.parent < 0;
          if (!root_frame || pf.children > 1) is_art[static_cast<std::size_t>(parent)] = true;
        }
      }
    }
  }
  for (int v = 0; v < n; ++v)
    if (is_art[static_cast<std::size_t>(v)]) articulation.push_back(v);
}

}  // namespace detail

inline BiconnectedResult simplify_biconnected(const ColoringGraph& g) {
  std::vector<std::vector<detail::BccEdge>> blocks;
  std::vector<int> articulation;
  detail::biconnected_blocks(g, blocks, articulation);

  // vertex sets per block
  std::vector<std::vector<int>> members(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    std::set<int> verts;
    for (const auto& e : blocks[b]) {
      verts.insert(e.u);
      verts.insert(e.v);
    }
    members[b].assign(verts.begin(), verts.end());
  }
  // vertices with no incident edge become singleton blocks
  {
    std::vector<bool> seen(static_cast<std::size_t>(g.n), false);
    for (const auto& m : members)
      for (int v : m) seen[static_cast<std::size_t>(v)] = true;
    for (int v = 0; v < g.n; ++v)
      if (!seen[static_cast<std::size_t>(v)]) {
        members.push_back({v});
        blocks.push_back({});
      }
  }

  // order blocks as a BFS over the block-cut forest, roots at the block with
  // the smallest vertex; guarantees at most one already-colored shared vertex
  // when solutions are replayed in order
  const std::size_t nb = members.size();
  std::vector<std::size_t> order;
  {
    std::vector<std::size_t> by_min(nb);
    std::iota(by_min.begin(), by_min.end(), std::size_t{0});
    std::sort(by_min.begin(), by_min.end(), [&](std::size_t a, std::size_t b) {
      return members[a].front() != members[b].front() ? members[a].front() < members[b].front()
                                                      : a < b;
    });
    std::vector<std::vector<std::size_t>> blocks_of_vertex(static_cast<std::size_t>(g.n));
    for (std::size_t b = 0; b < nb; ++b)
      for (int v : members[b]) blocks_of_vertex[static_cast<std::size_t>(v)].push_back(b);
    std::vector<bool> visited(nb, false);
    for (std::size_t r : by_min) {
      if (visited[r]) continue;
      std::vector<std::size_t> queue{r};
      visited[r] = true;
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const std::size_t b = queue[qi];
        order.push_back(b);
        for (int v : members[b])
          for (std::size_t nbk : blocks_of_vertex[static_cast<std::size_t>(v)])
            if (!visited[nbk]) {
              visited[nbk] = true;
              queue.push_back(nbk);
            }
      }
    }
  }

  BiconnectedResult out;
  for (std::size_t b : order) {
    Subgraph sub;
    sub.to_parent = members[b];
    sub.graph.n = static_cast<int>(members[b].size());
    std::vector<std::pair<int, int>> lookup;  // parent id -> local
    for (std::size_t i = 0; i < members[b].size(); ++i) lookup.emplace_back(members[b][i], static_cast<int>(i));
    auto local = [&](int v) {
      return std::lower_bound(lookup.begin(), lookup.end(), std::pair{v, 0})->second;
    };
    for (const auto& e : blocks[b]) {
      const int lu = local(e.u), lv = local(e.v);
      auto& bucket = e.stitch ? sub.graph.se : sub.graph.ce;
      bucket.emplace_back(std::min(lu, lv), std::max(lu, lv));
    }
    std::sort(sub.graph.ce.begin(), sub.graph.ce.end());
    std::sort(sub.graph.se.begin(), sub.graph.se.end());
    out.event.components.push_back(members[b]);
    out.components.push_back(std::move(sub));
  }
  out.event.shared = std::move(articulation);
  return out;
}

// ---------------------------------------------------------------------------
// MERGE_SUBK4: in TPLD, the two non-adjacent vertices of a K4-minus-one-edge
// must take the same color, so they merge. Pairs joined by a stitch edge are
// left alone.
// ---------------------------------------------------------------------------

struct MergeResult {
  Subgraph reduced;
  std::vector<MergedPair> events;
};

inline MergeResult merge_subk4(const ColoringGraph& g, int k) {
  if (k != 3) raise(ErrorCode::WrongK, "sub-K4 merging applies to 3 colors only");

  std::vector<std::set<int>> ce(static_cast<std::size_t>(g.n)), se(static_cast<std::size_t>(g.n));
  for (auto [i, j] : g.ce)
    if (i != j) {
      ce[static_cast<std::size_t>(i)].insert(j);
      ce[static_cast<std::size_t>(j)].insert(i);
    }
  for (auto [i, j] : g.se)
    if (i != j) {
      se[static_cast<std::size_t>(i)].insert(j);
      se[static_cast<std::size_t>(j)].insert(i);
    }

  std::vector<int> root(static_cast<std::size_t>(g.n));
  std::iota(root.begin(), root.end(), 0);
  std::vector<bool> alive(static_cast<std::size_t>(g.n), true);

  MergeResult out;
  // canonical scan: smallest (a,b,c,d) first, restart after every merge
  auto find_forced_pair = [&]() -> std::pair<int, int> {
    for (int a = 0; a < g.n; ++a) {
      if (!alive[static_cast<std::size_t>(a)]) continue;
      for (int b : ce[static_cast<std::size_t>(a)]) {
        if (b <= a) continue;
        std::vector<int> common;
        std::set_intersection(ce[static_cast<std::size_t>(a)].begin(),
                              ce[static_cast<std::size_t>(a)].end(),
                              ce[static_cast<std::size_t>(b)].begin(),
                              ce[static_cast<std::size_t>(b)].end(), std::back_inserter(common));
        for (std::size_t ci = 0; ci < common.size(); ++ci)
          for (std::size_t di = ci + 1; di < common.size(); ++di) {
            const int c = common[ci], d = common[di];
            if (ce[static_cast<std::size_t>(c)].count(d)) continue;  // full K4, nothing forced
            if (se[static_cast<std::size_t>(c)].count(d)) continue;  // never merge across a stitch
            return {c, d};
          }
      }
    }
    return {-1, -1};
  };

  for (std::pair<int, int> pick = find_forced_pair(); pick.first >= 0;
       pick = find_forced_pair()) {
    const int c = pick.first, d = pick.second;
    for (int x : ce[static_cast<std::size_t>(d)]) {
      ce[static_cast<std::size_t>(x)].erase(d);
      if (x != c) {
        ce[static_cast<std::size_t>(x)].insert(c);
        ce[static_cast<std::size_t>(c)].insert(x);
      }
    }
    for (int x : se[static_cast<std::size_t>(d)]) {
      se[static_cast<std::size_t>(x)].erase(d);
      if (x != c) {
        se[static_cast<std::size_t>(x)].insert(c);
        se[static_cast<std::size_t>(c)].insert(x);
      }
    }
    ce[static_cast<std::size_t>(d)].clear();
    se[static_cast<std::size_t>(d)].clear();
    alive[static_cast<std::size_t>(d)] = false;
    root[static_cast<std::size_t>(d)] = c;
    out.events.push_back({c, d});
  }

  auto find_root = [&](int v) {
    while (root[static_cast<std::size_t>(v)] != v) v = root[static_cast<std::size_t>(v)];
    return v;
  };

  std::vector<int> local(static_cast<std::size_t>(g.n), -1);
  for (int v = 0; v < g.n; ++v)
    if (alive[static_cast<std::size_t>(v)]) {
      local[static_cast<std::size_t>(v)] = static_cast<int>(out.reduced.to_parent.size());
      out.reduced.to_parent.push_back(v);
    }
  out.reduced.graph.n = static_cast<int>(out.reduced.to_parent.size());
  // rebuild from the original edge lists so multiplicities carry the true cost
  for (auto [i, j] : g.ce) {
    const int a = find_root(i), b = find_root(j);
    out.reduced.graph.ce.emplace_back(local[static_cast<std::size_t>(std::min(a, b))],
                                      local[static_cast<std::size_t>(std::max(a, b))]);
  }
  for (auto [i, j] : g.se) {
    const int a = find_root(i), b = find_root(j);
    out.reduced.graph.se.emplace_back(local[static_cast<std::size_t>(std::min(a, b))],
                                      local[static_cast<std::size_t>(std::max(a, b))]);
  }
  std::sort(out.reduced.graph.ce.begin(), out.reduced.graph.ce.end());
  std::sort(out.reduced.graph.se.begin(), out.reduced.graph.se.end());
  return out;
}

// ---------------------------------------------------------------------------
// Driver: applies every technique up to `level` and returns the leaf
// instances to solve plus the history needed to recover the full coloring.
// ---------------------------------------------------------------------------

struct SimplifyStats {
  int initial_vertices = 0;
  int icc_components = 0;
  int after_hide = 0;        // surviving vertices
  int after_biconnected = 0; // leaf vertices (articulation points duplicated)
  int biconnected_leaves = 0;
  int after_merge = 0;       // leaf vertices after sub-K4 merging
};

/// One solver instance. `solve` is the graph to color; `pre_merge` is the
/// same piece before sub-K4 merging. The merge argument assumes a
/// conflict-free 3-coloring exists; when the solved merged leaf still has
/// conflicts, callers re-solve `pre_merge` instead (see
/// solve_leaf_with_fallback) and recovery accepts either form.
struct SimplifyLeaf {
  Subgraph solve;
  Subgraph pre_merge;
  bool merged = false;
};

struct SimplifyResult {
  std::vector<SimplifyLeaf> leaves;  // local graphs with to_parent = global ids
  SimplifyHistory history;
  SimplifyStats stats;
};

inline SimplifyResult simplify(const ColoringGraph& g, SimplifyLevel level, int k) {
  const int lvl = static_cast<int>(level);
  SimplifyResult out;
  out.stats.initial_vertices = g.n;

  // translate a subgraph's local ids through its to_parent map
  auto lift = [](const Subgraph& sub, const std::vector<int>& to_global) {
    Subgraph g2 = sub;
    g2.to_parent.clear();
    for (int p : sub.to_parent) g2.to_parent.push_back(to_global[static_cast<std::size_t>(p)]);
    return g2;
  };

  std::vector<Subgraph> comps;
  if (lvl >= 1) {
    IccResult icc = simplify_icc(g);
    out.history.events.push_back(icc.event);
    comps = std::move(icc.components);
  } else {
    Subgraph whole;
    whole.graph = g;
    whole.to_parent.resize(static_cast<std::size_t>(g.n));
    std::iota(whole.to_parent.begin(), whole.to_parent.end(), 0);
    comps.push_back(std::move(whole));
  }
  out.stats.icc_components = static_cast<int>(comps.size());

  int after_hide = 0, after_bcc = 0, leaf_count = 0, after_merge = 0;
  for (const Subgraph& comp : comps) {
    Subgraph core = comp;
    if (lvl >= 2) {
      HideResult hr = simplify_hide_small_degree(comp.graph, k);
      for (HiddenVertex ev : hr.events) {
        ev.v = comp.to_parent[static_cast<std::size_t>(ev.v)];
        for (int& u : ev.ce_neighbors) u = comp.to_parent[static_cast<std::size_t>(u)];
        for (int& u : ev.se_neighbors) u = comp.to_parent[static_cast<std::size_t>(u)];
        out.history.events.push_back(std::move(ev));
      }
      core = lift(hr.core, comp.to_parent);
    }
    after_hide += core.graph.n;
    if (core.graph.n == 0) continue;

    std::vector<Subgraph> pieces;
    if (lvl >= 3) {
      BiconnectedResult bc = simplify_biconnected(core.graph);
      ComponentSplit ev;
      for (auto& m : bc.event.components) {
        std::vector<int> globals;
        for (int v : m) globals.push_back(core.to_parent[static_cast<std::size_t>(v)]);
        ev.components.push_back(std::move(globals));
      }
      for (int v : bc.event.shared) ev.shared.push_back(core.to_parent[static_cast<std::size_t>(v)]);
      out.history.events.push_back(std::move(ev));
      for (Subgraph& piece : bc.components) pieces.push_back(lift(piece, core.to_parent));
    } else {
      pieces.push_back(core);
    }

    for (Subgraph& piece : pieces) {
      ++leaf_count;
      after_bcc += piece.graph.n;
      SimplifyLeaf leaf;
      leaf.pre_merge = piece;
      leaf.solve = piece;
      if (lvl >= 4 && k == 3) {
        MergeResult mr = merge_subk4(piece.graph, k);
        if (!mr.events.empty()) {
          for (MergedPair ev : mr.events) {
            ev.kept = piece.to_parent[static_cast<std::size_t>(ev.kept)];
            ev.removed = piece.to_parent[static_cast<std::size_t>(ev.removed)];
            out.history.events.push_back(ev);
          }
          leaf.solve = lift(mr.reduced, piece.to_parent);
          leaf.merged = true;
        }
      }
      after_merge += leaf.solve.graph.n;
      out.leaves.push_back(std::move(leaf));
    }
  }
  out.stats.after_hide = after_hide;
  out.stats.after_biconnected = after_bcc;
  out.stats.biconnected_leaves = leaf_count;
  out.stats.after_merge = after_merge;
  return out;
}

// ---------------------------------------------------------------------------
// Recovery: replay leaf solutions (rotating whole components so shared
// articulation vertices agree), then undo merges and hidden vertices in
// reverse order.
// ---------------------------------------------------------------------------

/// Colors one leaf with `fn` on the merged form; if conflicts remain and the
/// leaf was merged, re-solves the pre-merge form (the merge argument holds
/// only for conflict-free colorable pieces).
template <typename SolveFn>
std::vector<int> solve_leaf_with_fallback(const SimplifyLeaf& leaf, SolveFn&& fn) {
  Solution sol = fn(leaf.solve.graph);
  if (leaf.merged && sol.conflict_count > 0) sol = fn(leaf.pre_merge.graph);
  return std::move(sol.colors);
}

inline std::vector<int> recover_colors(const SimplifyResult& simp,
                                       const std::vector<std::vector<int>>& leaf_colors, int k,
                                       int total_vertices) {
  if (leaf_colors.size() != simp.leaves.size())
    raise(ErrorCode::InconsistentHistory, "one solution per leaf required");

  std::vector<int> colors(static_cast<std::size_t>(total_vertices), -1);

  // 1. leaf solutions with color rotation; a solution may cover either the
  //    merged or the pre-merge form of the leaf
  for (std::size_t li = 0; li < simp.leaves.size(); ++li) {
    const std::vector<int>& local = leaf_colors[li];
    const Subgraph* which = nullptr;
    if (static_cast<int>(local.size()) == simp.leaves[li].solve.graph.n)
      which = &simp.leaves[li].solve;
    else if (static_cast<int>(local.size()) == simp.leaves[li].pre_merge.graph.n)
      which = &simp.leaves[li].pre_merge;
    else
      raise(ErrorCode::InconsistentHistory, "leaf solution size mismatch");
    const Subgraph& leaf = *which;

    // rotation: match the first already-colored shared vertex
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    bool anchored = false;
    for (std::size_t v = 0; v < local.size(); ++v) {
      const int g = leaf.to_parent[v];
      const int fixed = colors[static_cast<std::size_t>(g)];
      if (fixed < 0) continue;
      if (!anchored) {
        const int from = local[v];
        std::swap(perm[static_cast<std::size_t>(from)], perm[static_cast<std::size_t>(fixed)]);
        anchored = true;
      }
      if (perm[static_cast<std::size_t>(local[v])] != fixed)
        raise(ErrorCode::InconsistentHistory, "no rotation aligns the shared vertices");
    }
    for (std::size_t v = 0; v < local.size(); ++v)
      colors[static_cast<std::size_t>(leaf.to_parent[v])] = perm[static_cast<std::size_t>(local[v])];
  }

  // 2. reverse replay of merges and hides
  for (auto it = simp.history.events.rbegin(); it != simp.history.events.rend(); ++it) {
    if (const auto* m = std::get_if<MergedPair>(&*it)) {
      if (colors[static_cast<std::size_t>(m->removed)] >= 0) continue;  // pre-merge fallback colored it
      const int kept = colors[static_cast<std::size_t>(m->kept)];
      if (kept < 0) raise(ErrorCode::InconsistentHistory, "merged target not colored");
      colors[static_cast<std::size_t>(m->removed)] = kept;
    } else if (const auto* h = std::get_if<HiddenVertex>(&*it)) {
      // avoid every conflict neighbor color, then match as many stitch
      // neighbors as possible, lowest color on ties
      std::vector<bool> banned(static_cast<std::size_t>(k), false);
      for (int u : h->ce_neighbors) {
        const int c = colors[static_cast<std::size_t>(u)];
        if (c < 0) raise(ErrorCode::InconsistentHistory, "hidden neighbor not colored");
        banned[static_cast<std::size_t>(c)] = true;
      }
      int best = -1, best_match = -1;
      for (int c = 0; c < k; ++c) {
        if (banned[static_cast<std::size_t>(c)]) continue;
        int match = 0;
        for (int u : h->se_neighbors)
          if (colors[static_cast<std::size_t>(u)] == c) ++match;
        if (match > best_match) {
          best_match = match;
          best = c;
        }
      }
      if (best < 0) raise(ErrorCode::InconsistentHistory, "degree bound violated on recovery");
      colors[static_cast<std::size_t>(h->v)] = best;
    }
    // ComponentSplit events carry no color work beyond step 1
  }
  return colors;
}

/// Full recovery to a costed Solution against the graph that was simplified.
inline Solution recover(const ColoringGraph& g, const SimplifyResult& simp,
                        const std::vector<std::vector<int>>& leaf_colors, int k, double alpha) {
  std::vector<int> colors = recover_colors(simp, leaf_colors, k, g.n);
  return make_solution({g, k, alpha}, std::move(colors));
}

}  // namespace mpld
