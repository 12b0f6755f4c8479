#include <doctest.h>

#include <random>

#include "mpld/geometry.hpp"
#include "support/oracles.hpp"

using namespace mpld;

TEST_CASE("decompose_polygon: rectangle loop is the identity") {
  const std::vector<Point> loop = {{0, 0}, {30, 0}, {30, 50}, {0, 50}};
  const auto rects = decompose_polygon(loop, 7);
  REQUIRE(rects.size() == 1);
  CHECK(rects[0] == Rect{0, 0, 30, 50, 7});
}

TEST_CASE("decompose_polygon: closed loop with repeated first point") {
  const std::vector<Point> loop = {{0, 0}, {30, 0}, {30, 50}, {0, 50}, {0, 0}};
  CHECK(decompose_polygon(loop).size() == 1);
}

TEST_CASE("decompose_polygon: L-shape splits at the notch y") {
  // covers (0,0)-(20,10) plus (0,10)-(10,20)
  const std::vector<Point> loop = {{0, 0}, {20, 0}, {20, 10}, {10, 10}, {10, 20}, {0, 20}};
  const auto rects = decompose_polygon(loop);
  REQUIRE(rects.size() == 2);
  CHECK(rects[0] == Rect{0, 0, 20, 10, 0});
  CHECK(rects[1] == Rect{0, 10, 10, 20, 0});
  CHECK(oracle::cover_matches_polygon(loop, rects));
}

TEST_CASE("decompose_polygon: U-shape yields 3 slabs matching the shoelace area") {
  // two 20-wide arms joined by a 10-high base, outline walked clockwise
  const std::vector<Point> loop = {{0, 0},  {70, 0},  {70, 40}, {50, 40},
                                   {50, 10}, {20, 10}, {20, 40}, {0, 40}};
  const auto rects = decompose_polygon(loop);
  CHECK(rects.size() == 3);
  std::int64_t area = 0;
  for (const auto& r : rects) area += r.area();
  CHECK(area == polygon_area(loop));
  CHECK(oracle::cover_matches_polygon(loop, rects));
}

TEST_CASE("decompose_polygon: area is exact on random staircase loops") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> step(1, 30);
  for (int it = 0; it < 50; ++it) {
    // staircase down-right, then a flat return: always simple and rectilinear
    std::vector<Point> loop;
    Coord x = 0, y = 100;
    loop.push_back({0, y});
    const int stairs = 2 + it % 5;
    for (int s = 0; s < stairs; ++s) {
      Coord nx = x + step(rng);
      Coord ny = y - step(rng) / 2 - 1;
      loop.push_back({nx, y});
      loop.push_back({nx, ny});
      x = nx;
      y = ny;
    }
    Coord xe = x + step(rng);
    loop.push_back({xe, y});
    loop.push_back({xe, -10});
    loop.push_back({0, -10});
    const auto rects = decompose_polygon(loop);
    std::int64_t area = 0;
    for (const auto& r : rects) area += r.area();
    CHECK(area == polygon_area(loop));
    CHECK(oracle::cover_matches_polygon(loop, rects));
  }
}

TEST_CASE("decompose_polygon rejects bad outlines") {
  CHECK_THROWS_AS(decompose_polygon(std::vector<Point>{{0, 0}, {10, 10}, {0, 10}, {10, 0}}),
                  Error);
  // diagonal edge
  try {
    decompose_polygon(std::vector<Point>{{0, 0}, {10, 5}, {10, 10}, {0, 10}});
    FAIL("expected NonRectilinear");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonRectilinear);
  }
  // rectilinear bowtie touches itself
  try {
    decompose_polygon(std::vector<Point>{{0, 0}, {20, 0}, {20, 10}, {5, 10}, {5, -5}, {15, -5},
                                         {15, 5}, {0, 5}});
    FAIL("expected SelfIntersecting");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SelfIntersecting);
  }
}

TEST_CASE("merge_connected_rects: gap keeps features apart, shared edge joins") {
  const std::vector<Rect> apart = {{0, 0, 10, 10, 1}, {15, 0, 25, 10, 1}};
  CHECK(merge_connected_rects(apart).size() == 2);

  const std::vector<Rect> shared = {{0, 0, 10, 10, 1}, {10, 0, 20, 10, 1}};
  CHECK(merge_connected_rects(shared).size() == 1);

  // corner-only contact does not connect
  const std::vector<Rect> corner = {{0, 0, 10, 10, 1}, {10, 10, 20, 20, 1}};
  CHECK(merge_connected_rects(corner).size() == 2);
}

TEST_CASE("merge_connected_rects: overlap/abut chain and isolated rect") {
  const std::vector<Rect> rects = {
      {0, 0, 12, 10, 1},    // A
      {8, 0, 20, 10, 1},    // B overlaps A
      {20, 0, 30, 10, 1},   // C abuts B
      {100, 100, 110, 110, 1},  // D isolated
  };
  const auto features = merge_connected_rects(rects);
  REQUIRE(features.size() == 2);
  CHECK(features[0].rects.size() == 3);
  CHECK(features[1].rects.size() == 1);
  CHECK(oracle::connected_groups(rects).size() == 2);
}

TEST_CASE("merge_connected_rects agrees with union-find oracle on random soup") {
  std::mt19937 rng(123);
  std::uniform_int_distribution<Coord> pos(0, 200);
  std::uniform_int_distribution<Coord> size(5, 40);
  for (int it = 0; it < 30; ++it) {
    std::vector<Rect> rects;
    for (int i = 0; i < 40; ++i) {
      const Coord x = pos(rng), y = pos(rng);
      rects.push_back({x, y, static_cast<Coord>(x + size(rng)), static_cast<Coord>(y + size(rng)), 1});
    }
    const auto features = merge_connected_rects(rects);
    const auto groups = oracle::connected_groups(rects);
    CHECK(features.size() == groups.size());

    // idempotence: re-merging each feature's rects yields one feature
    for (const auto& f : features) CHECK(merge_connected_rects(f.rects).size() == 1);
  }
}

TEST_CASE("gap_sq basics") {
  const Rect a{0, 0, 10, 10, 1};
  CHECK(gap_sq(a, Rect{5, 5, 15, 15, 1}) == 0);    // overlap
  CHECK(gap_sq(a, Rect{10, 0, 20, 10, 1}) == 0);   // touch
  CHECK(gap_sq(a, Rect{17, 0, 27, 10, 1}) == 49);  // aligned, gap 7
  const Rect diag{13, 14, 23, 24, 1};              // offset (3,4)
  CHECK(gap_sq(a, diag) == 25);
  CHECK(gap_sq(a, diag) == oracle::boundary_sample_gap_sq(a, diag));
}

TEST_CASE("gap_sq is symmetric and zero on self") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<Coord> pos(-100, 100);
  std::uniform_int_distribution<Coord> size(1, 50);
  for (int it = 0; it < 200; ++it) {
    const Coord ax = pos(rng), ay = pos(rng), bx = pos(rng), by = pos(rng);
    const Rect a{ax, ay, static_cast<Coord>(ax + size(rng)), static_cast<Coord>(ay + size(rng)), 1};
    const Rect b{bx, by, static_cast<Coord>(bx + size(rng)), static_cast<Coord>(by + size(rng)), 1};
    CHECK(gap_sq(a, b) == gap_sq(b, a));
    CHECK(gap_sq(a, a) == 0);
    const bool overlap = a.x_lo < b.x_hi && b.x_lo < a.x_hi && a.y_lo < b.y_hi && b.y_lo < a.y_hi;
    if (overlap)
      CHECK(gap_sq(a, b) == 0);  // boundary sampling misses containment
    else
      CHECK(gap_sq(a, b) == oracle::boundary_sample_gap_sq(a, b));
  }
}
