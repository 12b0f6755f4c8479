#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mpld/geometry.hpp"

namespace mpld {

// GDSII stream subset: big-endian records [u16 length][u8 rectype][u8 datatype]
// [payload]. Lengths include the 4 header bytes and are always even.

namespace gds {

enum RecordType : std::uint8_t {
  HEADER = 0x00,
  BGNLIB = 0x01,
  LIBNAME = 0x02,
  UNITS = 0x03,
  ENDLIB = 0x04,
  BGNSTR = 0x05,
  STRNAME = 0x06,
  ENDSTR = 0x07,
  BOUNDARY = 0x08,
  PATH = 0x09,
  SREF = 0x0A,
  AREF = 0x0B,
  TEXT = 0x0C,
  LAYER = 0x0D,
  DATATYPE = 0x0E,
  XY = 0x10,
  ENDEL = 0x11,
};

enum DataType : std::uint8_t {
  NoData = 0x00,
  Int16 = 0x02,
  Int32 = 0x03,
  Real64 = 0x05,
  Ascii = 0x06,
};

}  // namespace gds

struct GdsRecord {
  std::uint16_t length = 0;
  std::uint8_t record_type = 0;
  std::uint8_t data_type = 0;
  std::vector<std::uint8_t> payload;
};

namespace detail {

inline void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

inline void put_i32(std::vector<std::uint8_t>& out, std::int32_t v) {
  const auto u = static_cast<std::uint32_t>(v);
  out.push_back(static_cast<std::uint8_t>(u >> 24));
  out.push_back(static_cast<std::uint8_t>((u >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((u >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>(u & 0xff));
}

// GDS REAL8: sign bit, excess-64 base-16 exponent, 56-bit mantissa in [1/16,1).
inline void put_real64(std::vector<std::uint8_t>& out, double value) {
  if (value == 0.0) {
    out.insert(out.end(), 8, 0);
    return;
  }
  const bool neg = value < 0;
  double m = std::abs(value);
  int exp = 64;
  while (m >= 1.0) {
    m /= 16.0;
    ++exp;
  }
  while (m < 1.0 / 16.0) {
    m *= 16.0;
    --exp;
  }
  auto mant = static_cast<std::uint64_t>(std::llround(m * 72057594037927936.0));  // 2^56
  if (mant >= (1ULL << 56)) {
    mant >>= 4;
    ++exp;
  }
  out.push_back(static_cast<std::uint8_t>((neg ? 0x80 : 0x00) | (exp & 0x7f)));
  for (int shift = 48; shift >= 0; shift -= 8)
    out.push_back(static_cast<std::uint8_t>((mant >> shift) & 0xff));
}

inline double read_real64(std::span<const std::uint8_t> b) {
  const bool neg = (b[0] & 0x80) != 0;
  const int exp = (b[0] & 0x7f) - 64;
  std::uint64_t mant = 0;
  for (int i = 1; i < 8; ++i) mant = (mant << 8) | b[i];
  const double value = static_cast<double>(mant) / 72057594037927936.0 * std::pow(16.0, exp);
  return neg ? -value : value;
}

inline void append_record(std::vector<std::uint8_t>& out, std::uint8_t rectype,
                          std::uint8_t datatype, std::span<const std::uint8_t> payload) {
  put_u16(out, static_cast<std::uint16_t>(4 + payload.size()));
  out.push_back(rectype);
  out.push_back(datatype);
  out.insert(out.end(), payload.begin(), payload.end());
}

inline void append_i16_record(std::vector<std::uint8_t>& out, std::uint8_t rectype,
                              std::span<const std::int16_t> values) {
  std::vector<std::uint8_t> payload;
  for (std::int16_t v : values) put_u16(payload, static_cast<std::uint16_t>(v));
  append_record(out, rectype, gds::Int16, payload);
}

}  // namespace detail

/// Splits a byte stream into raw records, enforcing framing rules only.
inline std::vector<GdsRecord> parse_gds_records(std::span<const std::uint8_t> bytes) {
  std::vector<GdsRecord> records;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    if (bytes.size() - pos < 4) raise(ErrorCode::TruncatedRecord, "record header cut short");
    const std::uint16_t length =
        static_cast<std::uint16_t>((bytes[pos] << 8) | bytes[pos + 1]);
    if (length % 2 != 0) raise(ErrorCode::OddRecordLength, "record length must be even");
    if (length < 4) raise(ErrorCode::TruncatedRecord, "record length below header size");
    if (bytes.size() - pos < length) raise(ErrorCode::TruncatedRecord, "payload cut short");
    GdsRecord rec;
    rec.length = length;
    rec.record_type = bytes[pos + 2];
    rec.data_type = bytes[pos + 3];
    rec.payload.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos) + 4,
                       bytes.begin() + static_cast<std::ptrdiff_t>(pos) + length);
    const bool endlib = rec.record_type == gds::ENDLIB;
    records.push_back(std::move(rec));
    pos += length;
    if (endlib) break;
  }
  return records;
}

struct GdsReadStats {
  int skipped_records = 0;   // unknown record types
  int skipped_structures = 0;  // structures after the first
  int skipped_boundaries = 0;  // boundaries on other layers
};

/// Reads all BOUNDARY elements of the first structure on `target_layer`.
/// Polygon outlines go through decompose_polygon and connected rectangles are
/// re-unioned into features. Unknown records are skipped and counted.
inline Layout read_gds(std::span<const std::uint8_t> bytes, std::int32_t target_layer,
                       GdsReadStats* stats = nullptr) {
  if (bytes.size() < 4 || bytes[2] != gds::HEADER)
    raise(ErrorCode::BadMagic, "stream does not start with a HEADER record");
  const auto records = parse_gds_records(bytes);
  if (records.empty() || records.back().record_type != gds::ENDLIB)
    raise(ErrorCode::MissingEndlib, "stream ended before ENDLIB");

  GdsReadStats local;
  Layout layout;
  layout.db_unit_nm = 1;

  std::vector<Rect> rects;
  int structures = 0;
  bool in_boundary = false;
  std::int32_t layer = 0;
  std::vector<Point> points;

  auto read_i16 = [](const GdsRecord& r, std::size_t at) {
    return static_cast<std::int16_t>((r.payload[at] << 8) | r.payload[at + 1]);
  };
  auto read_i32 = [](const GdsRecord& r, std::size_t at) {
    return static_cast<std::int32_t>((static_cast<std::uint32_t>(r.payload[at]) << 24) |
                                     (static_cast<std::uint32_t>(r.payload[at + 1]) << 16) |
                                     (static_cast<std::uint32_t>(r.payload[at + 2]) << 8) |
                                     static_cast<std::uint32_t>(r.payload[at + 3]));
  };

  for (const GdsRecord& rec : records) {
    switch (rec.record_type) {
      case gds::HEADER:
      case gds::BGNLIB:
      case gds::LIBNAME:
      case gds::STRNAME:
      case gds::ENDLIB:
        break;
      case gds::UNITS: {
        if (rec.payload.size() >= 16) {
          const double meters_per_db =
              detail::read_real64(std::span(rec.payload).subspan(8, 8));
          layout.db_unit_nm = std::max<std::int64_t>(1, std::llround(meters_per_db * 1e9));
        }
        break;
      }
      case gds::BGNSTR:
        ++structures;
        if (structures > 1) ++local.skipped_structures;
        break;
      case gds::ENDSTR:
        break;
      case gds::SREF:
      case gds::AREF:
        raise(ErrorCode::HierarchyNotSupported,
              "SREF/AREF found; only flat layouts are supported");
      case gds::BOUNDARY:
        if (structures == 1) {
          in_boundary = true;
          layer = 0;
          points.clear();
        }
        break;
      case gds::LAYER:
        if (in_boundary && rec.payload.size() >= 2) layer = read_i16(rec, 0);
        break;
      case gds::DATATYPE:
        break;
      case gds::XY:
        if (in_boundary) {
          for (std::size_t at = 0; at + 8 <= rec.payload.size(); at += 8) {
            const std::int64_t x = std::int64_t(read_i32(rec, at)) * layout.db_unit_nm;
            const std::int64_t y = std::int64_t(read_i32(rec, at + 4)) * layout.db_unit_nm;
            points.push_back({static_cast<Coord>(x), static_cast<Coord>(y)});
          }
        }
        break;
      case gds::ENDEL:
        if (in_boundary) {
          if (layer == target_layer && points.size() >= 4) {
            const auto polygon_rects = decompose_polygon(points, layer);
            rects.insert(rects.end(), polygon_rects.begin(), polygon_rects.end());
          } else if (layer != target_layer) {
            ++local.skipped_boundaries;
          }
          in_boundary = false;
        }
        break;
      default:
        ++local.skipped_records;
        break;
    }
  }

  layout.features = merge_connected_rects(rects);
  if (stats) *stats = local;
  return layout;
}

/// Maps solver colors to output GDS layers; must cover colors 0..k-1.
struct ColorMap {
  std::int32_t base_layer = 10;
  std::map<int, std::int32_t> color_to_layer;

  static ColorMap sequential(int k, std::int32_t base = 10) {
    ColorMap cm;
    cm.base_layer = base;
    for (int c = 0; c < k; ++c) cm.color_to_layer[c] = base + c;
    return cm;
  }
};

namespace detail {

inline void append_boundary(std::vector<std::uint8_t>& out, const Rect& r,
                            std::int32_t out_layer, std::int64_t db_unit_nm) {
  auto db = [&](Coord nm) {
    if (nm % db_unit_nm != 0)
      raise(ErrorCode::IoError, "coordinate not divisible by the database unit");
    return static_cast<std::int32_t>(nm / db_unit_nm);
  };
  append_record(out, gds::BOUNDARY, gds::NoData, {});
  const std::int16_t layer16[] = {static_cast<std::int16_t>(out_layer)};
  append_i16_record(out, gds::LAYER, layer16);
  const std::int16_t dt[] = {0};
  append_i16_record(out, gds::DATATYPE, dt);
  std::vector<std::uint8_t> xy;
  const std::int32_t pts[][2] = {{db(r.x_lo), db(r.y_lo)},
                                 {db(r.x_hi), db(r.y_lo)},
                                 {db(r.x_hi), db(r.y_hi)},
                                 {db(r.x_lo), db(r.y_hi)},
                                 {db(r.x_lo), db(r.y_lo)}};
  for (const auto& p : pts) {
    put_i32(xy, p[0]);
    put_i32(xy, p[1]);
  }
  append_record(out, gds::XY, gds::Int32, xy);
  append_record(out, gds::ENDEL, gds::NoData, {});
}

inline std::vector<std::uint8_t> write_gds_impl(const Layout& layout,
                                                const std::vector<std::int32_t>& layer_of) {
  std::vector<std::uint8_t> out;
  const std::int16_t version[] = {600};
  detail::append_i16_record(out, gds::HEADER, version);
  const std::int16_t dates[12] = {};
  detail::append_i16_record(out, gds::BGNLIB, dates);
  const std::uint8_t libname[] = {'M', 'P', 'L', 'D'};
  detail::append_record(out, gds::LIBNAME, gds::Ascii, libname);
  std::vector<std::uint8_t> units;
  detail::put_real64(units, 1e-3 * static_cast<double>(layout.db_unit_nm));
  detail::put_real64(units, 1e-9 * static_cast<double>(layout.db_unit_nm));
  detail::append_record(out, gds::UNITS, gds::Real64, units);
  detail::append_i16_record(out, gds::BGNSTR, dates);
  const std::uint8_t strname[] = {'T', 'O', 'P', '\0'};
  detail::append_record(out, gds::STRNAME, gds::Ascii, strname);
  for (std::size_t f = 0; f < layout.features.size(); ++f)
    for (const Rect& r : layout.features[f].rects)
      detail::append_boundary(out, r, layer_of[f], layout.db_unit_nm);
  detail::append_record(out, gds::ENDSTR, gds::NoData, {});
  detail::append_record(out, gds::ENDLIB, gds::NoData, {});
  return out;
}

}  // namespace detail

/// Writes every feature on its own stored layer.
inline std::vector<std::uint8_t> write_gds(const Layout& layout) {
  std::vector<std::int32_t> layers;
  for (const Feature& f : layout.features) layers.push_back(f.layer);
  return detail::write_gds_impl(layout, layers);
}

/// Writes every feature on the layer mapped from its solution color.
inline std::vector<std::uint8_t> write_gds(const Layout& layout, std::span<const int> colors,
                                           const ColorMap& map) {
  if (colors.size() < layout.features.size())
    raise(ErrorCode::UnmappedColor, "solution does not cover all features");
  std::vector<std::int32_t> layers;
  for (std::size_t f = 0; f < layout.features.size(); ++f) {
    const auto it = map.color_to_layer.find(colors[f]);
    if (it == map.color_to_layer.end())
      raise(ErrorCode::UnmappedColor, "no output layer for color " + std::to_string(colors[f]));
    layers.push_back(it->second);
  }
  return detail::write_gds_impl(layout, layers);
}

}  // namespace mpld
