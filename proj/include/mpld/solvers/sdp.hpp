#pragma once

#include <array>
#include <cmath>
#include <random>
#include <set>

#include "mpld/coloring.hpp"
#include "mpld/solvers/backtrack.hpp"

namespace mpld {

struct SdpOptions {
  int rounds = 200;        // maximum coordinate-descent sweeps
  double tol = 1e-9;       // stop when a sweep improves less than this
  double merge_dot = 0.5;  // inner-product threshold for same-color grouping
  unsigned seed = 1;
  int restarts = 3;        // descent is local; keep the best of several starts
};

struct SdpInfo {
  double relaxed_objective = 0.0;  // lower-bound estimate (not certified)
  int sweeps = 0;
  bool converged = false;
};

namespace detail {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Block-coordinate descent on the vector relaxation: each vertex in turn
// moves to the normalized minimizer of its linear term (conflict neighbors
// push apart, stitch neighbors pull together).
inline std::vector<Vec3> sdp_descent(const ColoringInstance& inst, const SdpOptions& opt,
                                     SdpInfo* info) {
  const int n = inst.graph.n;
  const auto adj = build_adjacency(inst.graph);

  std::mt19937 rng(opt.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Vec3> vec(static_cast<std::size_t>(n));
  for (auto& v : vec) {
    double norm = 0.0;
    do {
      v = {gauss(rng), gauss(rng), gauss(rng)};
      norm = std::sqrt(dot(v, v));
    } while (norm < 1e-9);
    for (double& x : v) x /= norm;
  }

  auto objective = [&]() {
    double obj = 0.0;
    for (auto [i, j] : inst.graph.ce)
      obj += (2.0 / 3.0) * dot(vec[static_cast<std::size_t>(i)], vec[static_cast<std::size_t>(j)]) +
             1.0 / 3.0;
    for (auto [i, j] : inst.graph.se)
      obj += inst.alpha * (2.0 / 3.0) *
             (1.0 - dot(vec[static_cast<std::size_t>(i)], vec[static_cast<std::size_t>(j)]));
    return obj;
  };

  double prev = objective();
  int sweeps = 0;
  bool converged = false;
  for (; sweeps < opt.rounds; ++sweeps) {
    for (int v = 0; v < n; ++v) {
      Vec3 g{0.0, 0.0, 0.0};
      for (const AdjEntry& e : adj[static_cast<std::size_t>(v)]) {
        if (e.to == v) continue;
        const double w = e.stitch ? -inst.alpha : 1.0;
        for (int t = 0; t < 3; ++t) g[t] += w * vec[static_cast<std::size_t>(e.to)][t];
      }
      const double norm = std::sqrt(dot(g, g));
      if (norm < 1e-12) continue;
      for (int t = 0; t < 3; ++t) vec[static_cast<std::size_t>(v)][t] = -g[t] / norm;
    }
    const double cur = objective();
    if (prev - cur < opt.tol) {
      prev = cur;
      converged = true;
      ++sweeps;
      break;
    }
    prev = cur;
  }
  if (info) {
    info->relaxed_objective = prev;
    info->sweeps = sweeps;
    info->converged = converged;
  }
  return vec;
}

}  // namespace detail

/// Vector relaxation of 3-mask coloring: each vertex gets a unit vector in
/// R^3, the three ideal colors sit at mutual inner product -1/2, and the
/// relaxed objective
///     sum_CE (2/3)(v_i . v_j) + 1/3  +  alpha * sum_SE (2/3)(1 - v_i . v_j)
/// is minimized by block-coordinate descent. Vertices whose vectors point
/// nearly together (dot >= merge_dot) are grouped, the quotient graph is
/// colored exactly, and the grouping is expanded back. The result is always a
/// valid coloring; optimality is not guaranteed.
inline Solution solve_sdp_single(const ColoringInstance& inst, const SdpOptions& opt,
                                 SdpInfo* info) {
  if (inst.k != 3) raise(ErrorCode::UnsupportedK, "the vector relaxation is for k=3");
  const int n = inst.graph.n;
  if (n == 0) return make_solution(inst, {});

  const auto vec = detail::sdp_descent(inst, opt, info);

  // mapping: union vertices whose vectors agree, color the quotient exactly.
  // Pairs are taken by descending affinity and a pair joined by a conflict
  // edge never merges directly.
  std::set<std::pair<int, int>> ce_pairs;
  for (auto [i, j] : inst.graph.ce) ce_pairs.insert({std::min(i, j), std::max(i, j)});

  struct Affinity {
    double dot;
    int i, j;
  };
  std::vector<Affinity> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d =
          detail::dot(vec[static_cast<std::size_t>(i)], vec[static_cast<std::size_t>(j)]);
      if (d >= opt.merge_dot && !ce_pairs.count({i, j})) pairs.push_back({d, i, j});
    }
  std::sort(pairs.begin(), pairs.end(), [](const Affinity& a, const Affinity& b) {
    return a.dot != b.dot ? a.dot > b.dot : std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });

  std::vector<int> group(static_cast<std::size_t>(n));
  std::iota(group.begin(), group.end(), 0);
  auto find = [&](int v) {
    while (group[static_cast<std::size_t>(v)] != v)
      v = group[static_cast<std::size_t>(v)] =
          group[static_cast<std::size_t>(group[static_cast<std::size_t>(v)])];
    return v;
  };
  for (const Affinity& p : pairs) {
    const int a = find(p.i), b = find(p.j);
    if (a != b) group[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

  std::vector<int> rep(static_cast<std::size_t>(n), -1);
  int groups = 0;
  for (int v = 0; v < n; ++v) {
    const int r = find(v);
    if (rep[static_cast<std::size_t>(r)] < 0) rep[static_cast<std::size_t>(r)] = groups++;
  }

  // quotient keeps edge multiplicities (and self-loops for grouped conflict
  // pairs) so its objective matches the original instance exactly
  ColoringGraph quotient;
  quotient.n = groups;
  for (auto [i, j] : inst.graph.ce)
    quotient.ce.emplace_back(rep[static_cast<std::size_t>(find(i))],
                             rep[static_cast<std::size_t>(find(j))]);
  for (auto [i, j] : inst.graph.se)
    quotient.se.emplace_back(rep[static_cast<std::size_t>(find(i))],
                             rep[static_cast<std::size_t>(find(j))]);

  const Solution qsol = solve_backtracking({quotient, inst.k, inst.alpha});
  std::vector<int> colors(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    colors[static_cast<std::size_t>(v)] =
        qsol.colors[static_cast<std::size_t>(rep[static_cast<std::size_t>(find(v))])];

  // greedy 1-opt pass over the ungrouped instance: each vertex moves to its
  // cheapest color until no move helps
  const auto adj = detail::build_adjacency(inst.graph);
  bool changed = true;
  for (int sweep = 0; changed && sweep < n; ++sweep) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      double best_delta = 0.0;
      int best_color = colors[static_cast<std::size_t>(v)];
      for (int c = 0; c < inst.k; ++c) {
        if (c == colors[static_cast<std::size_t>(v)]) continue;
        double delta = 0.0;
        for (const detail::AdjEntry& e : adj[static_cast<std::size_t>(v)]) {
          if (e.to == v) continue;
          const int nc = colors[static_cast<std::size_t>(e.to)];
          if (e.stitch)
            delta += inst.alpha * ((nc != c) - (nc != colors[static_cast<std::size_t>(v)]));
          else
            delta += (nc == c) - (nc == colors[static_cast<std::size_t>(v)]);
        }
        if (delta < best_delta - 1e-12) {
          best_delta = delta;
          best_color = c;
        }
      }
      if (best_color != colors[static_cast<std::size_t>(v)]) {
        colors[static_cast<std::size_t>(v)] = best_color;
        changed = true;
      }
    }
  }
  return make_solution(inst, std::move(colors), /*optimal=*/false);
}

/// Best of several deterministic starts; the descent only finds local minima.
inline Solution solve_sdp(const ColoringInstance& inst, const SdpOptions& opt = {},
                          SdpInfo* info = nullptr) {
  Solution best;
  SdpInfo best_info;
  bool first = true;
  for (int r = 0; r < std::max(1, opt.restarts); ++r) {
    SdpOptions o = opt;
    o.seed = opt.seed + static_cast<unsigned>(r) * 7919u;
    SdpInfo i;
    Solution s = solve_sdp_single(inst, o, &i);
    if (first || s.cost < best.cost) {
      best = std::move(s);
      best_info = i;
      first = false;
    }
  }
  if (info) *info = best_info;
  return best;
}

/// Final relaxation vectors, exposed for convergence checks.
inline std::vector<std::array<double, 3>> sdp_relaxation_vectors(const ColoringInstance& inst,
                                                                 const SdpOptions& opt = {}) {
  if (inst.k != 3) raise(ErrorCode::UnsupportedK, "the vector relaxation is for k=3");
  return detail::sdp_descent(inst, opt, nullptr);
}

}  // namespace mpld
