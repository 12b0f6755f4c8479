#pragma once

#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>

#include "mpld/gds.hpp"
#include "mpld/json_io.hpp"
#include "mpld/layout_graph.hpp"
#include "mpld/simplify.hpp"
#include "mpld/solvers/backtrack.hpp"
#include "mpld/solvers/dlx.hpp"
#include "mpld/solvers/ilp.hpp"
#include "mpld/solvers/sdp.hpp"
#include "mpld/stitch.hpp"
#include "mpld/svg.hpp"

namespace mpld {

enum class Algorithm { Ilp, Sdp, Backtrack, DancingLinks };
enum class ShapeMode { Rectangle, Polygon };
enum class InputFormat { Auto, Gds, Json };

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Ilp: return "ILP";
    case Algorithm::Sdp: return "SDP";
    case Algorithm::Backtrack: return "BACKTRACK";
    case Algorithm::DancingLinks: return "DL";
  }
  return "?";
}

struct RunConfig {
  std::string input_path;
  InputFormat format = InputFormat::Auto;
  std::int32_t target_layer = 1;
  int k = 3;
  double alpha = 0.1;
  std::optional<std::int64_t> min_color_dist_nm;  // flag wins; else JSON value; else 120
  Algorithm algorithm = Algorithm::Ilp;
  int simplify_level = 3;
  int threads = 8;
  ShapeMode shape = ShapeMode::Polygon;
  bool stitch = true;
  std::optional<CandidatePolicy> stitch_policy;  // default: one-per-feature for DL, else all
  double time_budget_s = 3600.0;
  unsigned seed = 1;
  std::string out_gds;
  std::string out_svg;
  std::string report_path;
};

struct CostBreakdown {
  int conflict_count = 0;
  int stitch_count = 0;
  double cost = 0.0;
};

/// Exact recount of the objective over a decomposed graph.
inline CostBreakdown compute_cost(const DecomposedGraph& dg, std::span<const int> colors,
                                  double alpha) {
  if (colors.size() < static_cast<std::size_t>(dg.m))
    raise(ErrorCode::UncoloredVertex, "solution does not cover all segments");
  CostBreakdown out;
  for (auto [i, j] : dg.conflict_edges) {
    if (colors[static_cast<std::size_t>(i)] < 0 || colors[static_cast<std::size_t>(j)] < 0)
      raise(ErrorCode::UncoloredVertex, "segment without a color");
    out.conflict_count += colors[static_cast<std::size_t>(i)] == colors[static_cast<std::size_t>(j)];
  }
  for (auto [i, j] : dg.stitch_edges)
    out.stitch_count += colors[static_cast<std::size_t>(i)] != colors[static_cast<std::size_t>(j)];
  out.cost = out.conflict_count + alpha * out.stitch_count;
  return out;
}

namespace detail {

/// Fixed-size worker pool over [0, n); each index writes only its own slot so
/// results are independent of the thread count.
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      try {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

inline std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::IoError, "cannot open " + path);
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>());
}

inline void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::IoError, "cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << text;
}

inline InputFormat infer_format(const RunConfig& config) {
  if (config.format != InputFormat::Auto) return config.format;
  const auto dot = config.input_path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : config.input_path.substr(dot + 1);
  if (ext == "gds" || ext == "gdsii" || ext == "db") return InputFormat::Gds;
  if (ext == "json") return InputFormat::Json;
  raise(ErrorCode::ConfigError, "cannot infer input format from '" + config.input_path +
                                    "'; pass --format gds|json");
}

}  // namespace detail

struct RunResult {
  RunReport report;
  Layout layout;               // post shape-mode features
  DecomposedGraph graph;       // segments with CE and SE
  std::vector<StitchCandidate> candidates;
  SimplifyResult simplification;
  Solution solution;           // over segments, recounted on `graph`
};

/// Loads a layout from the configured input.
inline Layout load_layout(const RunConfig& config) {
  const InputFormat format = detail::infer_format(config);
  Layout layout;
  if (format == InputFormat::Gds) {
    const auto bytes = detail::read_file_bytes(config.input_path);
    layout = read_gds(bytes, config.target_layer);
    layout.min_color_dist_nm = config.min_color_dist_nm.value_or(120);
  } else {
    std::ifstream in(config.input_path);
    if (!in) raise(ErrorCode::IoError, "cannot open " + config.input_path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    layout = read_layout_json(text);
    if (config.min_color_dist_nm) layout.min_color_dist_nm = *config.min_color_dist_nm;
  }
  return layout;
}

/// Full decomposition flow on an in-memory layout: conflict graph, stitch
/// insertion (projection happens on whole components; independent-component
/// splitting removes nothing, so candidates are identical either way),
/// simplification to the configured level, per-leaf solving on a worker pool,
/// recovery, and a final recount over the decomposed graph.
inline RunResult run_on_layout(Layout layout, const RunConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  if (config.k != 3 && config.k != 4)
    raise(ErrorCode::ConfigError, "color count must be 3 or 4");
  if (config.algorithm == Algorithm::Sdp && config.k != 3)
    raise(ErrorCode::ConfigError, "the SDP engine supports 3 colors only");
  if (config.simplify_level < 0 || config.simplify_level > 4)
    raise(ErrorCode::ConfigError, "simplify level must be 0..4");

  if (config.shape == ShapeMode::Rectangle) {
    // every rectangle is its own pattern; no re-union
    std::vector<Feature> flat;
    for (const Feature& f : layout.features)
      for (const Rect& r : f.rects) {
        Feature single;
        single.id = static_cast<int>(flat.size());
        single.layer = f.layer;
        single.rects = {r};
        flat.push_back(std::move(single));
      }
    layout.features = std::move(flat);
  }

  RunResult result;
  const LayoutGraph lg = build_layout_graph(layout);

  if (config.stitch) {
    const CandidatePolicy policy = config.stitch_policy.value_or(
        config.algorithm == Algorithm::DancingLinks ? CandidatePolicy::OnePerFeature
                                                    : CandidatePolicy::All);
    result.candidates = generate_stitch_candidates(lg, layout, {policy, -1});
  }
  result.graph = build_decomposed_graph(lg, layout, result.candidates);

  const ColoringGraph whole = ColoringGraph::from_decomposed(result.graph);
  result.simplification =
      simplify(whole, static_cast<SimplifyLevel>(config.simplify_level), config.k);
  const auto& leaves = result.simplification.leaves;

  std::vector<std::vector<int>> leaf_colors(leaves.size());
  std::vector<ComponentReport> comp_reports(leaves.size());
  detail::parallel_for(static_cast<int>(leaves.size()), config.threads, [&](int i) {
    const SimplifyLeaf& leaf = leaves[static_cast<std::size_t>(i)];
    auto engine = [&](const ColoringGraph& g) -> Solution {
      const ColoringInstance inst{g, config.k, config.alpha};
      switch (config.algorithm) {
        case Algorithm::Backtrack: return solve_backtracking(inst, config.time_budget_s);
        case Algorithm::Ilp: return solve_ilp(build_ilp(inst), inst, config.time_budget_s);
        case Algorithm::DancingLinks: return solve_dlx(inst, config.time_budget_s);
        case Algorithm::Sdp: {
          SdpOptions opt;
          opt.seed = config.seed + static_cast<unsigned>(i) * 0x9e3779b9u;
          return solve_sdp(inst, opt);
        }
      }
      raise(ErrorCode::ConfigError, "unknown algorithm");
    };
    Solution sol = engine(leaf.solve.graph);
    if (leaf.merged && sol.conflict_count > 0) sol = engine(leaf.pre_merge.graph);
    ComponentReport& cr = comp_reports[static_cast<std::size_t>(i)];
    cr.id = i;
    cr.vertex_count = static_cast<int>(sol.colors.size());
    cr.conflict_count = sol.conflict_count;
    cr.stitch_count = sol.stitch_count;
    cr.cost = sol.cost;
    cr.optimal = sol.optimal;
    leaf_colors[static_cast<std::size_t>(i)] = std::move(sol.colors);
  });

  const std::vector<int> colors =
      recover_colors(result.simplification, leaf_colors, config.k, whole.n);
  result.solution = make_solution({whole, config.k, config.alpha}, colors);
  // keep the per-leaf optimality verdicts visible in the final flag
  for (const ComponentReport& cr : comp_reports) result.solution.optimal &= cr.optimal;

  RunReport& report = result.report;
  report.algorithm = algorithm_name(config.algorithm);
  report.k = config.k;
  report.alpha = config.alpha;
  report.conflict_count = result.solution.conflict_count;
  report.stitch_count = result.solution.stitch_count;
  report.cost = result.solution.cost;
  report.per_component = std::move(comp_reports);
  const SimplifyStats& st = result.simplification.stats;
  report.simplification = {
      {"icc_components", 1, st.icc_components},
      {"hide_small_degree", st.initial_vertices, st.after_hide},
      {"biconnected", st.after_hide, st.after_biconnected},
      {"merge_subk4", st.after_biconnected, st.after_merge},
  };
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  result.layout = std::move(layout);
  return result;
}

/// Builds a layout whose features are the decomposed segments, for colored
/// output writers.
inline Layout segment_layout(const Layout& layout, const DecomposedGraph& dg) {
  Layout segs;
  segs.db_unit_nm = layout.db_unit_nm;
  segs.min_color_dist_nm = layout.min_color_dist_nm;
  for (int s = 0; s < dg.m; ++s) {
    Feature f;
    f.id = s;
    f.layer = layout.features[static_cast<std::size_t>(dg.seg_owner[static_cast<std::size_t>(s)])].layer;
    f.rects = dg.seg_rects[static_cast<std::size_t>(s)];
    segs.features.push_back(std::move(f));
  }
  return segs;
}

/// Stitch cut lines (for rendering) from the candidates actually inserted.
inline std::vector<StitchLine> stitch_lines(const Layout& layout,
                                            std::span<const StitchCandidate> candidates) {
  std::vector<StitchLine> lines;
  for (const StitchCandidate& c : candidates) {
    const Rect b = layout.features[static_cast<std::size_t>(c.feature_id)].bbox();
    if (c.axis == Axis::Horizontal)
      lines.push_back({{c.cut_coord, b.y_lo}, {c.cut_coord, b.y_hi}});
    else
      lines.push_back({{b.x_lo, c.cut_coord}, {b.x_hi, c.cut_coord}});
  }
  return lines;
}

/// End-to-end run: load, decompose, write the configured outputs.
inline RunResult run(const RunConfig& config) {
  RunResult result = run_on_layout(load_layout(config), config);

  if (!config.out_gds.empty() || !config.out_svg.empty()) {
    const Layout segs = segment_layout(result.layout, result.graph);
    if (!config.out_gds.empty())
      detail::write_file(config.out_gds, write_gds(segs, result.solution.colors,
                                                   ColorMap::sequential(config.k)));
    if (!config.out_svg.empty())
      detail::write_file(config.out_svg,
                         write_svg(segs, result.solution.colors,
                                   stitch_lines(result.layout, result.candidates)));
  }
  if (!config.report_path.empty())
    detail::write_file(config.report_path, write_report_json(result.report));
  return result;
}

}  // namespace mpld
