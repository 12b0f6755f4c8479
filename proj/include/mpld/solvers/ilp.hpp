#pragma once

#include <chrono>
#include <sstream>
#include <string>

#include "mpld/coloring.hpp"

namespace mpld {

// ---------------------------------------------------------------------------
// ILP model: two bits per vertex encode its color, conflict and stitch edges
// get indicator binaries tied to the bits by linear inequalities. The model
// is solved by a built-in depth-first branch-and-bound; export_lp writes the
// standard LP text format for external solvers.
// ---------------------------------------------------------------------------

struct IlpConstraint {
  std::string name;
  std::vector<std::pair<double, int>> terms;  // coefficient, variable index
  char sense = 'L';                           // 'L': <= rhs, 'G': >= rhs
  double rhs = 0.0;
};

struct IlpModel {
  std::vector<std::string> var_names;           // all binary
  std::vector<double> objective;                // per variable
  std::vector<IlpConstraint> constraints;
  int n = 0;                                    // vertices
  int k = 3;
  double alpha = 0.1;
  std::vector<int> bit_vars;                    // 2 per vertex: b(i,1), b(i,2)
  std::vector<int> conflict_vars;               // one per CE edge
  std::vector<int> stitch_vars;                 // one per SE edge

  int bit(int v, int t) const { return bit_vars[static_cast<std::size_t>(2 * v + t)]; }
};

/// Builds the binary-encoded model. Colors map to bit pairs as
/// color = 2*b1 + b2; k=3 forbids the (1,1) pattern via b1 + b2 <= 1.
///
/// Conflict edge (i,j): per bit t, an XOR indicator d_t with the standard four
/// inequalities (d_t = b_it xor b_jt), then c_ij + d_1 + d_2 >= 1 so equal bit
/// pairs force c_ij = 1. Stitch edge: s_ij >= |b_it - b_jt| for both bits.
inline IlpModel build_ilp(const ColoringInstance& inst) {
  if (inst.k != 3 && inst.k != 4) raise(ErrorCode::UnsupportedK, "ILP model supports k=3 or 4");
  IlpModel m;
  m.n = inst.graph.n;
  m.k = inst.k;
  m.alpha = inst.alpha;

  auto add_var = [&](std::string name, double obj) {
    m.var_names.push_back(std::move(name));
    m.objective.push_back(obj);
    return static_cast<int>(m.var_names.size()) - 1;
  };

  for (int v = 0; v < m.n; ++v) {
    m.bit_vars.push_back(add_var("b_" + std::to_string(v) + "_1", 0.0));
    m.bit_vars.push_back(add_var("b_" + std::to_string(v) + "_2", 0.0));
    if (inst.k == 3) {
      IlpConstraint c;
      c.name = "pat_" + std::to_string(v);
      c.terms = {{1.0, m.bit(v, 0)}, {1.0, m.bit(v, 1)}};
      c.sense = 'L';
      c.rhs = 1.0;
      m.constraints.push_back(std::move(c));
    }
  }

  auto edge_tag = [](int i, int j) { return std::to_string(i) + "_" + std::to_string(j); };

  for (auto [i, j] : inst.graph.ce) {
    const std::string tag = edge_tag(i, j);
    const int c = add_var("c_" + tag, 1.0);
    m.conflict_vars.push_back(c);
    int d[2];
    for (int t = 0; t < 2; ++t) {
      d[t] = add_var("d_" + tag + "_" + std::to_string(t + 1), 0.0);
      const int bi = m.bit(i, t), bj = m.bit(j, t);
      const std::string base = "xor_" + tag + "_" + std::to_string(t + 1);
      m.constraints.push_back({base + "a", {{1.0, d[t]}, {-1.0, bi}, {1.0, bj}}, 'G', 0.0});
      m.constraints.push_back({base + "b", {{1.0, d[t]}, {1.0, bi}, {-1.0, bj}}, 'G', 0.0});
      m.constraints.push_back({base + "c", {{1.0, d[t]}, {-1.0, bi}, {-1.0, bj}}, 'L', 0.0});
      m.constraints.push_back({base + "d", {{1.0, d[t]}, {1.0, bi}, {1.0, bj}}, 'L', 2.0});
    }
    m.constraints.push_back(
        {"conf_" + tag, {{1.0, c}, {1.0, d[0]}, {1.0, d[1]}}, 'G', 1.0});
  }

  for (auto [i, j] : inst.graph.se) {
    const std::string tag = edge_tag(i, j);
    const int s = add_var("s_" + tag, inst.alpha);
    m.stitch_vars.push_back(s);
    for (int t = 0; t < 2; ++t) {
      const int bi = m.bit(i, t), bj = m.bit(j, t);
      const std::string base = "stitch_" + tag + "_" + std::to_string(t + 1);
      m.constraints.push_back({base + "a", {{1.0, s}, {-1.0, bi}, {1.0, bj}}, 'G', 0.0});
      m.constraints.push_back({base + "b", {{1.0, s}, {1.0, bi}, {-1.0, bj}}, 'G', 0.0});
    }
  }
  return m;
}

namespace detail {

inline void append_terms(std::ostringstream& os, const IlpModel& m,
                         const std::vector<std::pair<double, int>>& terms) {
  bool first = true;
  for (const auto& [coef, var] : terms) {
    if (coef >= 0 && !first) os << " + ";
    if (coef < 0) os << (first ? "- " : " - ");
    const double mag = std::abs(coef);
    if (mag != 1.0) os << mag << " ";
    os << m.var_names[static_cast<std::size_t>(var)];
    first = false;
  }
}

}  // namespace detail

/// Writes the model in the human-readable LP format (objective, subject-to,
/// bounds and binary sections).
inline std::string export_lp(const IlpModel& m) {
  std::ostringstream os;
  os << "Minimize\n obj:";
  bool any = false;
  for (std::size_t v = 0; v < m.objective.size(); ++v) {
    if (m.objective[v] == 0.0) continue;
    os << (any ? " + " : " ");
    if (m.objective[v] != 1.0) os << m.objective[v] << " ";
    os << m.var_names[v];
    any = true;
  }
  if (!any) os << " 0";
  os << "\nSubject To\n";
  for (const auto& c : m.constraints) {
    os << " " << c.name << ": ";
    detail::append_terms(os, m, c.terms);
    os << (c.sense == 'L' ? " <= " : " >= ") << c.rhs << "\n";
  }
  os << "Bounds\n";
  for (const auto& name : m.var_names) os << " 0 <= " << name << " <= 1\n";
  os << "Binary\n";
  for (const auto& name : m.var_names) os << " " << name << "\n";
  os << "End\n";
  return os.str();
}

/// Depth-first branch-and-bound on the model binaries: bits are fixed in
/// variable order (b_0_1, b_0_2, b_1_1, ...), 0 before 1. Once both bits of a
/// vertex are fixed its color is decided and the edge costs to earlier
/// decided vertices enter the bound; branches with bound >= incumbent are cut.
/// Exhausting the tree proves optimality of the model objective.
inline Solution solve_ilp(const IlpModel& m, const ColoringInstance& inst,
                          double time_budget_s = 3600.0) {
  if (m.n != inst.graph.n) raise(ErrorCode::UnsupportedK, "model/instance mismatch");
  const int n = m.n;
  if (n == 0) return make_solution(inst, {});
  const auto adj = detail::build_adjacency(inst.graph);

  std::vector<int> colors(static_cast<std::size_t>(n), -1);
  std::vector<int> best;
  double best_cost = std::numeric_limits<double>::infinity();
  bool exhausted = true;

  double self_loop_base = 0.0;
  for (auto [i, j] : inst.graph.ce)
    if (i == j) self_loop_base += 1.0;

  auto vertex_cost = [&](int v, int c) {
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
    int bit_value;    // -1 not yet branched, else last tried value
    double bound;     // bound before this bit's vertex was decided
  };
  // bits[0..2n): bit 2v is b_(v,1) (high), bit 2v+1 is b_(v,2) (low)
  std::vector<int> bits(static_cast<std::size_t>(2 * n), -1);
  std::vector<Frame> stack;
  stack.push_back({-1, self_loop_base});
  double bound = self_loop_base;
  int depth = 0;

  while (!stack.empty()) {
    if ((++steps & 0x3ff) == 0 && std::chrono::steady_clock::now() > deadline) {
      exhausted = false;
      break;
    }
    Frame& f = stack.back();
    const int v = depth / 2;
    const bool low_bit = depth % 2 == 1;
    // undo the previous attempt at this depth
    if (f.bit_value >= 0) {
      bits[static_cast<std::size_t>(depth)] = -1;
      if (low_bit) colors[static_cast<std::size_t>(v)] = -1;
      bound = f.bound;
    }
    ++f.bit_value;
    if (f.bit_value > 1) {
      stack.pop_back();
      --depth;
      continue;
    }
    bits[static_cast<std::size_t>(depth)] = f.bit_value;
    if (low_bit) {
      const int color = 2 * bits[static_cast<std::size_t>(depth - 1)] + f.bit_value;
      if (color >= inst.k) {  // k=3 forbidden pattern (1,1)
        bits[static_cast<std::size_t>(depth)] = -1;
        continue;
      }
      const double next = bound + vertex_cost(v, color);
      if (next >= best_cost) {
        bits[static_cast<std::size_t>(depth)] = -1;
        continue;
      }
      colors[static_cast<std::size_t>(v)] = color;
      bound = next;
    } else if (bound >= best_cost) {
      bits[static_cast<std::size_t>(depth)] = -1;
      continue;
    }
    if (depth + 1 == 2 * n) {
      best_cost = bound;
      best = colors;
      bits[static_cast<std::size_t>(depth)] = -1;
      if (low_bit) colors[static_cast<std::size_t>(v)] = -1;
      bound = f.bound;
      continue;
    }
    ++depth;
    stack.push_back({-1, bound});
  }

  if (best.empty()) {
    // budget elapsed before any leaf: finish greedily for a valid coloring
    for (int v = 0; v < n; ++v) {
      if (colors[static_cast<std::size_t>(v)] >= 0) continue;
      int pick = 0;
      double pick_cost = std::numeric_limits<double>::infinity();
      for (int c = 0; c < inst.k; ++c) {
        const double d = vertex_cost(v, c);
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

inline Solution solve_ilp(const ColoringInstance& inst, double time_budget_s = 3600.0) {
  return solve_ilp(build_ilp(inst), inst, time_budget_s);
}

/// Evaluates the model variables induced by a coloring and checks every
/// constraint; returns the model objective. Used by tests to tie the search
/// back to the model.
inline double evaluate_model(const IlpModel& m, const ColoringInstance& inst,
                             const Solution& sol) {
  std::vector<double> value(m.var_names.size(), 0.0);
  for (int v = 0; v < m.n; ++v) {
    const int color = sol.colors[static_cast<std::size_t>(v)];
    value[static_cast<std::size_t>(m.bit(v, 0))] = (color >> 1) & 1;
    value[static_cast<std::size_t>(m.bit(v, 1))] = color & 1;
  }
  // indicators take their minimal feasible values
  std::size_t ci = 0;
  for (auto [i, j] : inst.graph.ce) {
    const bool equal = sol.colors[static_cast<std::size_t>(i)] == sol.colors[static_cast<std::size_t>(j)];
    value[static_cast<std::size_t>(m.conflict_vars[ci++])] = equal ? 1.0 : 0.0;
  }
  std::size_t si = 0;
  for (auto [i, j] : inst.graph.se) {
    const bool differ = sol.colors[static_cast<std::size_t>(i)] != sol.colors[static_cast<std::size_t>(j)];
    value[static_cast<std::size_t>(m.stitch_vars[si++])] = differ ? 1.0 : 0.0;
  }
  // xor helpers: d = bi xor bj
  for (const auto& c : m.constraints) {
    if (c.name.rfind("xor_", 0) == 0 && c.name.back() == 'a') {
      // name xor_i_j_t{a}: derive d from its terms: d - bi + bj >= 0
      const int d = c.terms[0].second, bi = c.terms[1].second, bj = c.terms[2].second;
      value[static_cast<std::size_t>(d)] =
          value[static_cast<std::size_t>(bi)] != value[static_cast<std::size_t>(bj)] ? 1.0 : 0.0;
    }
  }
  for (const auto& c : m.constraints) {
    double lhs = 0.0;
    for (const auto& [coef, var] : c.terms) lhs += coef * value[static_cast<std::size_t>(var)];
    const bool ok = c.sense == 'L' ? lhs <= c.rhs + 1e-9 : lhs >= c.rhs - 1e-9;
    if (!ok) raise(ErrorCode::InconsistentHistory, "model constraint violated: " + c.name);
  }
  double obj = 0.0;
  for (std::size_t v = 0; v < value.size(); ++v) obj += m.objective[v] * value[v];
  return obj;
}

}  // namespace mpld
