#include <doctest.h>

#include <random>

#include "mpld/solvers/backtrack.hpp"
#include "mpld/solvers/oracle.hpp"
#include "support/fixtures.hpp"

using namespace mpld;

namespace {

ColoringInstance k4_instance() {
  return {ColoringGraph{4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, {}}, 3, 0.1};
}

ColoringInstance golden_instance(CandidatePolicy policy = CandidatePolicy::All) {
  const Layout layout = fixtures::golden_quad();
  const auto g = build_layout_graph(layout);
  const auto cands = generate_stitch_candidates(g, layout, {policy, -1});
  const auto dg = build_decomposed_graph(g, layout, cands);
  return {ColoringGraph::from_decomposed(dg), 3, 0.1};
}

}  // namespace

TEST_CASE("oracle: single vertex and triangle") {
  const auto single = oracle_solve({ColoringGraph{1, {}, {}}, 3, 0.1});
  CHECK(single.cost == 0.0);
  CHECK(single.colors == std::vector<int>{0});

  const auto tri = oracle_solve({ColoringGraph{3, {{0, 1}, {0, 2}, {1, 2}}, {}}, 3, 0.1});
  CHECK(tri.cost == 0.0);
  CHECK(tri.colors == std::vector<int>{0, 1, 2});  // lexicographically smallest
}

TEST_CASE("oracle: K4 with three colors costs exactly one conflict") {
  const auto sol = oracle_solve(k4_instance());
  CHECK(sol.conflict_count == 1);
  CHECK(sol.stitch_count == 0);
  CHECK(sol.cost == 1.0);
}

TEST_CASE("oracle refuses oversized instances") {
  CHECK_THROWS_AS(oracle_solve({ColoringGraph{17, {}, {}}, 3, 0.1}), Error);
}

TEST_CASE("backtracking: empty graph, K4, and the golden instance") {
  CHECK(solve_backtracking({ColoringGraph{}, 3, 0.1}).cost == 0.0);
  CHECK(solve_backtracking(k4_instance()).cost == 1.0);

  const auto sol = solve_backtracking(golden_instance());
  CHECK(sol.optimal);
  CHECK(sol.conflict_count == 0);
  CHECK(sol.stitch_count == 1);
  CHECK(sol.cost == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("backtracking equals the oracle on random instances") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> dens(0.2, 0.6);
  std::uniform_int_distribution<int> nverts(2, 12);
  std::uniform_int_distribution<int> nstitch(0, 4);
  for (int it = 0; it < 200; ++it) {
    const int k = it % 2 == 0 ? 3 : 4;
    const auto inst =
        fixtures::random_instance(rng, nverts(rng), dens(rng), nstitch(rng), k);
    const auto expect = oracle_solve(inst);
    const auto got = solve_backtracking(inst);
    CHECK(got.optimal);
    CHECK(got.cost == doctest::Approx(expect.cost).epsilon(1e-12));
  }
}

TEST_CASE("backtracking budget exhaustion still returns a valid coloring") {
  std::mt19937 rng(5150);
  const auto inst = fixtures::random_instance(rng, 40, 0.5, 0, 3);
  const auto sol = solve_backtracking(inst, 0.0);
  CHECK_FALSE(sol.optimal);
  CHECK(sol.colors.size() == 40);
  for (int c : sol.colors) {
    CHECK(c >= 0);
    CHECK(c < 3);
  }
}

TEST_CASE("every solution's cost fields match an independent recount") {
  std::mt19937 rng(99);
  for (int it = 0; it < 50; ++it) {
    const auto inst = fixtures::random_instance(rng, 10, 0.4, 3, 3);
    const auto sol = solve_backtracking(inst);
    int cn = 0, st = 0;
    for (auto [i, j] : inst.graph.ce) cn += sol.colors[i] == sol.colors[j];
    for (auto [i, j] : inst.graph.se) st += sol.colors[i] != sol.colors[j];
    CHECK(sol.conflict_count == cn);
    CHECK(sol.stitch_count == st);
    CHECK(sol.cost == doctest::Approx(cn + inst.alpha * st).epsilon(1e-12));
  }
}
