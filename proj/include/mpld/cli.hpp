#pragma once

#include <CLI11.hpp>
#include <iostream>

#include "mpld/pipeline.hpp"

namespace mpld {

/// Command-line front end. Exit codes: 0 success, 2 configuration error,
/// 3 I/O or parse error, 4 time budget exhausted without a solution.
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"multiple patterning layout decomposition"};
  app.get_formatter()->column_width(34);

  RunConfig config;
  std::string format = "auto";
  std::string algo = "ILP";
  std::string shape = "POLYGON";
  std::string policy;
  bool no_stitch = false;
  std::int64_t coloring_distance = -1;

  app.add_option("--in", config.input_path, "input layout file")->required();
  app.add_option("--format", format, "input format: gds|json (default: by extension)")
      ->check(CLI::IsMember({"auto", "gds", "json"}));
  app.add_option("--layer", config.target_layer, "layer to decompose (GDS input)");
  app.add_option("--out-gds", config.out_gds, "write colored segments as GDS");
  app.add_option("--out-svg", config.out_svg, "write a colored SVG rendering");
  app.add_option("--report", config.report_path, "write a JSON run report");
  app.add_option("--algo", algo, "coloring engine: ILP|SDP|BACKTRACK|DL")
      ->check(CLI::IsMember({"ILP", "SDP", "BACKTRACK", "DL"}));
  app.add_option("--color-num", config.k, "number of masks (3 or 4)")
      ->check(CLI::IsMember({3, 4}));
  app.add_option("--coloring-distance", coloring_distance,
                 "minimum coloring distance in nm (default 120)");
  app.add_option("--simplify-level", config.simplify_level,
                 "0 none, 1 +icc, 2 +hide-small-degree, 3 +biconnected, 4 +merge-subk4")
      ->check(CLI::Range(0, 4));
  app.add_option("--shape", shape, "pattern storage: RECTANGLE|POLYGON")
      ->check(CLI::IsMember({"RECTANGLE", "POLYGON"}));
  app.add_option("--thread-num", config.threads, "worker threads (default 8)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-stitch", no_stitch, "disable stitch insertion");
  app.add_option("--stitch-policy", policy, "candidate policy: all|one")
      ->check(CLI::IsMember({"all", "one"}));
  app.add_option("--alpha", config.alpha, "stitch weight in the objective (default 0.1)");
  app.add_option("--time-budget", config.time_budget_s, "per-component budget in seconds");
  app.add_option("--seed", config.seed, "SDP initialization seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  config.format = format == "gds" ? InputFormat::Gds
                : format == "json" ? InputFormat::Json
                                   : InputFormat::Auto;
  config.algorithm = algo == "SDP" ? Algorithm::Sdp
                   : algo == "BACKTRACK" ? Algorithm::Backtrack
                   : algo == "DL" ? Algorithm::DancingLinks
                                  : Algorithm::Ilp;
  config.shape = shape == "RECTANGLE" ? ShapeMode::Rectangle : ShapeMode::Polygon;
  config.stitch = !no_stitch;
  if (!policy.empty())
    config.stitch_policy =
        policy == "one" ? CandidatePolicy::OnePerFeature : CandidatePolicy::All;
  if (coloring_distance >= 0) config.min_color_dist_nm = coloring_distance;

  try {
    const RunResult result = run(config);
    out << "algorithm " << result.report.algorithm << "\n";
    out << "features " << result.layout.features.size() << "\n";
    out << "segments " << result.graph.m << "\n";
    out << "components " << result.report.per_component.size() << "\n";
    out << "conflicts " << result.report.conflict_count << "\n";
    out << "stitches " << result.report.stitch_count << "\n";
    out << "cost " << result.report.cost << "\n";
    out << "wall_time_s " << result.report.wall_time_s << "\n";
    if (!result.solution.optimal) out << "note: time budget hit, result not proven optimal\n";
    return 0;
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::ConfigError:
      case ErrorCode::WrongK:
      case ErrorCode::UnsupportedK:
        return 2;
      case ErrorCode::BudgetExceeded:
        return 4;
      default:
        return 3;
    }
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 3;
  }
}

}  // namespace mpld
