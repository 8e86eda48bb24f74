#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "septree/gsh.hpp"
#include "septree/search.hpp"
#include "septree/separator.hpp"

using namespace septree;

TEST_SUITE("gsh") {

TEST_CASE("k=1 places the two bounding-box midlines") {
  const RoadGraph g = testfx::small_graph(61);
  const BoundingBox box = bounding_box(g);
  const GshIndex index = build_gsh_index(g, 1);
  REQUIRE(index.line_positions().size() == 2);
  CHECK(index.line_positions()[0] == (box.x_min + box.x_max) / 2.0);
  CHECK(index.line_positions()[1] == (box.y_min + box.y_max) / 2.0);
}

TEST_CASE("line positions are strictly increasing per axis") {
  const RoadGraph g = testfx::small_graph(62);
  const int k = 5;
  const GshIndex index = build_gsh_index(g, k);
  for (int j = 1; j < k; ++j) {
    CHECK(index.line_positions()[j] > index.line_positions()[j - 1]);
    CHECK(index.line_positions()[k + j] > index.line_positions()[k + j - 1]);
  }
}

TEST_CASE("separator with no crossing edges stores infinity and is skipped") {
  // Vertical path: every x-axis separator line cuts nothing.
  RoadGraph g({5.0, 5.0, 5.0, 5.0}, {0.0, 10.0, 20.0, 30.0},
              {{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 3.0}});
  GshBuildStats stats;
  const GshIndex index = build_gsh_index(g, 2, {}, &stats);
  for (int j = 1; j <= 2; ++j) {
    CHECK(stats.separator_sizes[j - 1] == 0);  // x lines
    CHECK(std::isinf(index.cost(Axis::x, 0, j)));
  }
  // Evaluation still works off the y separators alone.
  const double h = index.evaluate(0, 3);
  CHECK(std::isfinite(h));
  CHECK(h > 0.0);
  CHECK(h <= 6.0 + 1e-12);
}

TEST_CASE("per-separator costs match independent multi-source runs") {
  SyntheticParams p;
  p.rows = 50;
  p.cols = 50;
  p.drop_prob = 0.05;
  p.seed = 63;
  const RoadGraph g = generate_synthetic(p);
  const int k = 3;
  const GshIndex index = build_gsh_index(g, k);
  const auto n = static_cast<VertexId>(g.vertex_count());

  for (std::size_t li = 0; li < 2 * static_cast<std::size_t>(k); ++li) {
    const Axis axis = li < static_cast<std::size_t>(k) ? Axis::x : Axis::y;
    const int j = static_cast<int>(li < static_cast<std::size_t>(k)
                                       ? li + 1
                                       : li - k + 1);
    const AxisLine line{axis, index.line_positions()[li]};
    const auto sep = separator_of(cut_edges(g, line));
    REQUIRE(!sep.empty());
    const auto dist = multi_source_dijkstra(g, sep);
    for (VertexId v = 0; v < n; ++v)
      REQUIRE(index.cost(axis, v, j) == dist[v]);
  }
}

TEST_CASE("identity, symmetry, admissibility") {
  const RoadGraph g = testfx::small_graph(64);
  const GshIndex index = build_gsh_index(g, 4);
  const auto all = oracle::all_pairs_distances(g);
  const auto n = static_cast<VertexId>(g.vertex_count());
  std::mt19937_64 rng(20);
  for (int i = 0; i < 500; ++i) {
    const auto [s, t] = oracle::random_pair(rng, n);
    CHECK(index.evaluate(s, s) == 0.0);
    CHECK(index.evaluate(s, t) == index.evaluate(t, s));
    CHECK(index.evaluate(s, t) <= all[s][t] * (1.0 + 1e-9));
  }
}

TEST_CASE("straddling pair on a path graph uses the sum branch") {
  // Path along x, unit costs; the k=1 vertical midline is at x=4.5.
  RoadGraph g({0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
              {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1},
               {5, 6, 1}, {6, 7, 1}, {7, 8, 1}, {8, 9, 1}});
  const GshIndex index = build_gsh_index(g, 1);
  // Cut edge (4,5): S = {5}; c(0,S) = 5, c(9,S) = 4; y line cuts nothing.
  const auto dist = dijkstra_all(g, 5);
  CHECK(index.evaluate(0, 9) == dist[0] + dist[9]);
  const GshSeparationInfo info = gsh_separation_diagnostics(index, 0, 9);
  CHECK(info.separated);
  CHECK(info.determined);
}

TEST_CASE("GSH-guided A* preserves Dijkstra optimality") {
  const RoadGraph g = testfx::small_graph(68);
  const GshIndex index = build_gsh_index(g, 5);
  std::mt19937_64 rng(21);
  for (int i = 0; i < 30; ++i) {
    const auto [s, t] = oracle::random_pair(rng, g.vertex_count());
    const PathResult r =
        astar(g, s, t, [&](VertexId v) { return index.evaluate(v, t); });
    REQUIRE(r.found);
    CHECK(r.cost == dijkstra_all(g, s)[t]);
  }
}

TEST_CASE("stale fingerprint is rejected") {
  const RoadGraph g = testfx::small_graph(65);
  const RoadGraph other = testfx::small_graph(66);
  const GshIndex index = build_gsh_index(g, 2);
  CHECK(gsh_evaluate(index, g, 1, 2) >= 0.0);
  CHECK_THROWS_AS(gsh_evaluate(index, other, 1, 2), stale_index_error);
}

TEST_CASE("build validation") {
  const RoadGraph g = testfx::small_graph(67);
  CHECK_THROWS_AS(build_gsh_index(g, 0), validation_error);
  RoadGraph disconnected({0, 1, 10, 11}, {0, 0, 0, 0},
                         {{0, 1, 1.0}, {2, 3, 1.0}});
  CHECK_THROWS_AS(build_gsh_index(disconnected, 2), validation_error);
}

}  // TEST_SUITE
