#pragma once

#include <json.hpp>
#include <span>
#include <string>

#include "mpld/geometry.hpp"

namespace mpld {

// JSON layout schema:
//   {
//     "db_unit_nm": 1,                         (optional, default 1)
//     "min_color_dist_nm": 120,
//     "rects":    [[x_lo, y_lo, x_hi, y_hi, layer], ...],
//     "polygons": [{"layer": 1, "pts": [[x, y], ...]}, ...]
//   }

namespace detail {

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what) {
  raise(ErrorCode::SchemaViolation, path + ": " + what);
}

inline std::int64_t require_int(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  return j.get<std::int64_t>();
}

}  // namespace detail

inline Layout read_layout_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    detail::schema_error("/", e.what());
  }
  if (!doc.is_object()) detail::schema_error("/", "expected an object");

  Layout layout;
  layout.db_unit_nm = doc.contains("db_unit_nm")
                          ? detail::require_int(doc["db_unit_nm"], "/db_unit_nm")
                          : 1;
  if (!doc.contains("min_color_dist_nm"))
    detail::schema_error("/min_color_dist_nm", "missing required key");
  layout.min_color_dist_nm = detail::require_int(doc["min_color_dist_nm"], "/min_color_dist_nm");
  if (layout.min_color_dist_nm <= 0)
    raise(ErrorCode::NegativeDistance, "min_color_dist_nm must be positive");

  std::vector<Rect> rects;
  if (doc.contains("rects")) {
    const auto& arr = doc["rects"];
    if (!arr.is_array()) detail::schema_error("/rects", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "/rects/" + std::to_string(i);
      const auto& r = arr[i];
      if (!r.is_array() || r.size() != 5)
        detail::schema_error(path, "expected [x_lo, y_lo, x_hi, y_hi, layer]");
      Rect rect{static_cast<Coord>(detail::require_int(r[0], path + "/0")),
                static_cast<Coord>(detail::require_int(r[1], path + "/1")),
                static_cast<Coord>(detail::require_int(r[2], path + "/2")),
                static_cast<Coord>(detail::require_int(r[3], path + "/3")),
                static_cast<std::int32_t>(detail::require_int(r[4], path + "/4"))};
      if (!rect.valid()) detail::schema_error(path, "rectangle has no area");
      rects.push_back(rect);
    }
  }
  if (doc.contains("polygons")) {
    const auto& arr = doc["polygons"];
    if (!arr.is_array()) detail::schema_error("/polygons", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "/polygons/" + std::to_string(i);
      const auto& p = arr[i];
      if (!p.is_object() || !p.contains("pts"))
        detail::schema_error(path, "expected {layer, pts}");
      const std::int32_t layer =
          p.contains("layer") ? static_cast<std::int32_t>(
                                    detail::require_int(p["layer"], path + "/layer"))
                              : 1;
      const auto& pts = p["pts"];
      if (!pts.is_array() || pts.size() < 4) detail::schema_error(path + "/pts", "need >= 4 points");
      std::vector<Point> loop;
      for (std::size_t q = 0; q < pts.size(); ++q) {
        const std::string ppath = path + "/pts/" + std::to_string(q);
        if (!pts[q].is_array() || pts[q].size() != 2) detail::schema_error(ppath, "expected [x, y]");
        loop.push_back({static_cast<Coord>(detail::require_int(pts[q][0], ppath + "/0")),
                        static_cast<Coord>(detail::require_int(pts[q][1], ppath + "/1"))});
      }
      const auto polygon_rects = decompose_polygon(loop, layer);
      rects.insert(rects.end(), polygon_rects.begin(), polygon_rects.end());
    }
  }
  layout.features = merge_connected_rects(rects);
  return layout;
}

inline std::string write_layout_json(const Layout& layout) {
  nlohmann::json doc;
  doc["db_unit_nm"] = layout.db_unit_nm;
  doc["min_color_dist_nm"] = layout.min_color_dist_nm;
  doc["rects"] = nlohmann::json::array();
  for (const Feature& f : layout.features)
    for (const Rect& r : f.rects)
      doc["rects"].push_back({r.x_lo, r.y_lo, r.x_hi, r.y_hi, r.layer});
  return doc.dump(2);
}

// ---------------------------------------------------------------------------
// Run report
// ---------------------------------------------------------------------------

struct ComponentReport {
  int id = 0;
  int vertex_count = 0;
  int conflict_count = 0;
  int stitch_count = 0;
  double cost = 0.0;
  bool optimal = true;
};

struct SimplifyReport {
  std::string technique;
  int before = 0;
  int after = 0;
};

struct RunReport {
  std::string algorithm;
  int k = 3;
  double alpha = 0.1;
  int conflict_count = 0;
  int stitch_count = 0;
  double cost = 0.0;
  double wall_time_s = 0.0;
  std::vector<ComponentReport> per_component;
  std::vector<SimplifyReport> simplification;
};

inline std::string write_report_json(const RunReport& r) {
  nlohmann::json doc;
  doc["algorithm"] = r.algorithm;
  doc["k"] = r.k;
  doc["alpha"] = r.alpha;
  doc["conflict_count"] = r.conflict_count;
  doc["stitch_count"] = r.stitch_count;
  doc["cost"] = r.cost;
  doc["wall_time_s"] = r.wall_time_s;
  doc["per_component"] = nlohmann::json::array();
  for (const ComponentReport& c : r.per_component) {
    doc["per_component"].push_back({{"id", c.id},
                                    {"vertex_count", c.vertex_count},
                                    {"conflict_count", c.conflict_count},
                                    {"stitch_count", c.stitch_count},
                                    {"cost", c.cost},
                                    {"optimal", c.optimal}});
  }
  doc["simplification"] = nlohmann::json::array();
  for (const SimplifyReport& s : r.simplification)
    doc["simplification"].push_back({{"technique", s.technique}, {"before", s.before}, {"after", s.after}});
  return doc.dump(2);
}

}  // namespace mpld
