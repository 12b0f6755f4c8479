#include <doctest.h>

#include <random>

#include "mpld/gds.hpp"
#include "mpld/json_io.hpp"
#include "support/fixtures.hpp"

using namespace mpld;

namespace {

// geometry equality: features compared as sorted rect lists, order-free
std::vector<std::vector<Rect>> canonical_features(const Layout& layout) {
  std::vector<std::vector<Rect>> out;
  for (const Feature& f : layout.features) {
    auto rects = f.rects;
    std::sort(rects.begin(), rects.end(), rect_less);
    out.push_back(std::move(rects));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return rect_less(a.front(), b.front());
  });
  return out;
}

}  // namespace

TEST_CASE("gds round-trip: one rectangle survives byte-exact") {
  Layout layout;
  layout.min_color_dist_nm = 120;
  layout.features = merge_connected_rects(std::vector<Rect>{{0, 0, 100, 40, 5}});
  const auto bytes = write_gds(layout);
  const Layout back = read_gds(bytes, 5);
  REQUIRE(back.features.size() == 1);
  CHECK(back.features[0].rects == layout.features[0].rects);
}

TEST_CASE("gds reader filters by target layer") {
  Layout layout;
  std::vector<Rect> rects = {{0, 0, 10, 10, 1}, {50, 0, 60, 10, 2}};
  layout.features = merge_connected_rects(rects);
  const auto bytes = write_gds(layout);
  GdsReadStats stats;
  const Layout l1 = read_gds(bytes, 1, &stats);
  CHECK(l1.features.size() == 1);
  CHECK(l1.features[0].rects[0].layer == 1);
  CHECK(stats.skipped_boundaries == 1);
}

TEST_CASE("gds L outline parses to one feature of two rects, matching JSON") {
  // hand-assembled stream with a single L-shaped boundary, closing point
  // repeated per GDS convention
  std::vector<std::uint8_t> bytes;
  const std::int16_t version[] = {600};
  detail::append_i16_record(bytes, gds::HEADER, version);
  const std::int16_t dates[12] = {};
  detail::append_i16_record(bytes, gds::BGNLIB, dates);
  std::vector<std::uint8_t> units;
  detail::put_real64(units, 1e-3);
  detail::put_real64(units, 1e-9);
  detail::append_record(bytes, gds::UNITS, gds::Real64, units);
  detail::append_i16_record(bytes, gds::BGNSTR, dates);
  const std::uint8_t strname[] = {'T', 'O', 'P', '\0'};
  detail::append_record(bytes, gds::STRNAME, gds::Ascii, strname);
  detail::append_record(bytes, gds::BOUNDARY, gds::NoData, {});
  const std::int16_t layer[] = {1};
  detail::append_i16_record(bytes, gds::LAYER, layer);
  const std::int16_t dt[] = {0};
  detail::append_i16_record(bytes, gds::DATATYPE, dt);
  std::vector<std::uint8_t> xy;
  const std::int32_t pts[][2] = {{0, 0}, {20, 0}, {20, 10}, {10, 10}, {10, 20},
                                 {0, 20}, {0, 0}};
  for (const auto& p : pts) {
    detail::put_i32(xy, p[0]);
    detail::put_i32(xy, p[1]);
  }
  detail::append_record(bytes, gds::XY, gds::Int32, xy);
  detail::append_record(bytes, gds::ENDEL, gds::NoData, {});
  detail::append_record(bytes, gds::ENDSTR, gds::NoData, {});
  detail::append_record(bytes, gds::ENDLIB, gds::NoData, {});

  const Layout from_gds = read_gds(bytes, 1);
  REQUIRE(from_gds.features.size() == 1);
  CHECK(from_gds.features[0].rects.size() == 2);

  const Layout from_json = read_layout_json(
      R"({"min_color_dist_nm":120,"polygons":[{"layer":1,"pts":[[0,0],[20,0],[20,10],[10,10],[10,20],[0,20]]}]})");
  CHECK(canonical_features(from_gds) == canonical_features(from_json));
}

TEST_CASE("gds round-trip survives 100 random rect features") {
  std::mt19937 rng(404);
  Layout layout = fixtures::random_layout(rng, 100);
  const auto bytes = write_gds(layout);
  const Layout back = read_gds(bytes, 1);
  CHECK(canonical_features(back) == canonical_features(layout));
}

TEST_CASE("colored write maps colors to layers") {
  Layout layout;
  layout.features = merge_connected_rects(std::vector<Rect>{{0, 0, 10, 10, 1}});
  const std::vector<int> colors = {0};
  const auto map = ColorMap::sequential(3, 10);
  const auto bytes = write_gds(layout, colors, map);
  const Layout on10 = read_gds(bytes, 10);
  CHECK(on10.features.size() == 1);

  try {
    write_gds(layout, std::vector<int>{7}, map);
    FAIL("expected UnmappedColor");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnmappedColor);
  }
}

TEST_CASE("empty layout writes a valid stream with zero boundaries") {
  Layout layout;
  const auto bytes = write_gds(layout);
  const auto records = parse_gds_records(bytes);
  for (const auto& r : records) {
    CHECK(r.length % 2 == 0);
    CHECK(r.length >= 4);
    CHECK(r.record_type != gds::BOUNDARY);
  }
  CHECK(read_gds(bytes, 1).features.empty());
}

TEST_CASE("every emitted record is even-length on random layouts") {
  std::mt19937 rng(11);
  const Layout layout = fixtures::random_layout(rng, 60);
  const auto bytes = write_gds(layout);
  CHECK(bytes.size() % 2 == 0);
  for (const auto& r : parse_gds_records(bytes)) {
    CHECK(r.length % 2 == 0);
    CHECK(r.length >= 4);
  }
}

TEST_CASE("gds error paths") {
  Layout layout;
  layout.features = merge_connected_rects(std::vector<Rect>{{0, 0, 10, 10, 1}});
  auto bytes = write_gds(layout);

  // truncated stream
  try {
    std::vector<std::uint8_t> cut(bytes.begin(), bytes.begin() + 9);
    read_gds(cut, 1);
    FAIL("expected TruncatedRecord");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TruncatedRecord);
  }

  // first record is not HEADER
  try {
    std::vector<std::uint8_t> shifted(bytes.begin() + 6, bytes.end());
    read_gds(shifted, 1);
    FAIL("expected BadMagic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadMagic);
  }

  // odd record length
  try {
    auto odd = bytes;
    odd[1] = 5;  // header record length 6 -> 5
    read_gds(odd, 1);
    FAIL("expected OddRecordLength");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OddRecordLength);
  }

  // missing ENDLIB
  try {
    std::vector<std::uint8_t> noend(bytes.begin(), bytes.end() - 4);
    read_gds(noend, 1);
    FAIL("expected MissingEndlib");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingEndlib);
  }

  // SREF rejected
  try {
    auto sref = write_gds(layout);
    // splice an SREF record just before ENDSTR (last 8 bytes are ENDSTR+ENDLIB)
    std::vector<std::uint8_t> spliced(sref.begin(), sref.end() - 8);
    detail::append_record(spliced, gds::SREF, gds::NoData, {});
    detail::append_record(spliced, gds::ENDSTR, gds::NoData, {});
    detail::append_record(spliced, gds::ENDLIB, gds::NoData, {});
    read_gds(spliced, 1);
    FAIL("expected HierarchyNotSupported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HierarchyNotSupported);
  }
}

TEST_CASE("unknown records are skipped and counted") {
  Layout layout;
  layout.features = merge_connected_rects(std::vector<Rect>{{0, 0, 10, 10, 1}});
  auto bytes = write_gds(layout);
  // insert a PROPATTR-ish record (0x2B) before ENDLIB
  std::vector<std::uint8_t> spliced(bytes.begin(), bytes.end() - 4);
  const std::uint8_t junk[] = {0x00, 0x2A};
  detail::append_record(spliced, 0x2B, gds::Int16, junk);
  detail::append_record(spliced, gds::ENDLIB, gds::NoData, {});
  GdsReadStats stats;
  const Layout back = read_gds(spliced, 1, &stats);
  CHECK(back.features.size() == 1);
  CHECK(stats.skipped_records == 1);
}

TEST_CASE("db unit scaling: UNITS of 2nm doubles coordinates") {
  Layout layout;
  layout.db_unit_nm = 2;
  layout.features = merge_connected_rects(std::vector<Rect>{{0, 0, 100, 40, 1}});
  const auto bytes = write_gds(layout);
  const Layout back = read_gds(bytes, 1);
  CHECK(back.db_unit_nm == 2);
  REQUIRE(back.features.size() == 1);
  CHECK(back.features[0].rects[0] == Rect{0, 0, 100, 40, 1});
}
