#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "septree/graph.hpp"

using namespace septree;

TEST_SUITE("graph") {

TEST_CASE("builder validates costs, coordinates, and structure") {
  std::vector<double> xs{0.0, 1.0};
  std::vector<double> ys{0.0, 0.0};
  CHECK_THROWS_AS(RoadGraph(xs, ys, {{0, 1, 0.0}}), validation_error);
  CHECK_THROWS_AS(RoadGraph(xs, ys, {{0, 1, -2.0}}), validation_error);
  CHECK_THROWS_AS(RoadGraph(xs, ys, {{0, 0, 1.0}}), structural_error);
  CHECK_THROWS_AS(RoadGraph(xs, ys, {{0, 2, 1.0}}), structural_error);
  CHECK_THROWS_AS(RoadGraph({0.0, NAN}, ys, {{0, 1, 1.0}}), validation_error);
}

TEST_CASE("parallel edges collapse to the minimum cost") {
  RoadGraph g({0.0, 1.0}, {0.0, 0.0}, {{0, 1, 5.0}, {1, 0, 7.0}});
  CHECK(g.edge_count() == 1);
  REQUIRE(g.arcs(0).size() == 1);
  CHECK(g.arcs(0)[0].cost == 5.0);
  CHECK(g.arcs(1)[0].cost == 5.0);
}

TEST_CASE("adjacency is symmetric and sorted") {
  const RoadGraph g = testfx::small_graph(3);
  const auto n = static_cast<VertexId>(g.vertex_count());
  for (VertexId u = 0; u < n; ++u) {
    VertexId prev = 0;
    bool first = true;
    for (const Arc& a : g.arcs(u)) {
      if (!first) CHECK(a.to > prev);
      prev = a.to;
      first = false;
      bool mirrored = false;
      for (const Arc& back : g.arcs(a.to)) {
        if (back.to == u && back.cost == a.cost) mirrored = true;
      }
      CHECK(mirrored);
    }
  }
}

TEST_CASE("synthetic 2x2 grid with no drops is the full grid") {
  SyntheticParams p;
  p.rows = 2;
  p.cols = 2;
  p.drop_prob = 0.0;
  p.seed = 1;
  const RoadGraph g = generate_synthetic(p);
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 4);
}

TEST_CASE("synthetic generation is a pure function of its arguments") {
  SyntheticParams p;
  p.rows = 20;
  p.cols = 15;
  p.drop_prob = 0.1;
  p.seed = 99;
  const RoadGraph a = generate_synthetic(p);
  const RoadGraph b = generate_synthetic(p);
  REQUIRE(a.vertex_count() == b.vertex_count());
  REQUIRE(a.edge_count() == b.edge_count());
  CHECK(a.fingerprint() == b.fingerprint());
  for (VertexId v = 0; v < a.vertex_count(); ++v) {
    CHECK(a.x(v) == b.x(v));  // bit-equal
    CHECK(a.y(v) == b.y(v));
  }
}

TEST_CASE("synthetic 100x100 with drops stays connected via LCC") {
  const RoadGraph& g = testfx::grid100();
  CHECK(g.vertex_count() > 9000);
  CHECK(g.vertex_count() <= 10000);
  CHECK(oracle::bfs_connected(g));
}

TEST_CASE("synthetic parameter validation") {
  SyntheticParams p;
  p.rows = 1;
  p.cols = 5;
  CHECK_THROWS_AS(generate_synthetic(p), validation_error);
  p.rows = 5;
  p.drop_prob = 0.3;
  CHECK_THROWS_AS(generate_synthetic(p), validation_error);
  p.drop_prob = 0.0;
  p.speed_classes = {};
  CHECK_THROWS_AS(generate_synthetic(p), validation_error);
}

TEST_CASE("largest_connected_component keeps the larger side") {
  // Two triangles, second one with a pendant vertex (4 vertices total).
  std::vector<double> xs{0, 1, 2, 10, 11, 12, 13};
  std::vector<double> ys(7, 0.0);
  std::vector<Edge> edges{{0, 1, 1}, {1, 2, 1}, {0, 2, 1},
                          {3, 4, 1}, {4, 5, 1}, {3, 5, 1}, {5, 6, 1}};
  const auto [comp, map] = largest_connected_component(RoadGraph(xs, ys, edges));
  CHECK(comp.vertex_count() == 4);
  CHECK(comp.edge_count() == 4);
  CHECK(map[0] == kInvalidVertex);
  CHECK(map[3] != kInvalidVertex);
  CHECK(map[6] != kInvalidVertex);
}

TEST_CASE("largest_connected_component of a connected graph is the identity") {
  const RoadGraph g = testfx::small_graph(7);
  const auto [comp, map] = largest_connected_component(g);
  CHECK(comp.vertex_count() == g.vertex_count());
  CHECK(comp.edge_count() == g.edge_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) CHECK(map[v] == v);
  CHECK(comp.fingerprint() == g.fingerprint());
}

TEST_CASE("LCC output is connected for heavy drop rates") {
  SyntheticParams p;
  p.rows = 30;
  p.cols = 30;
  p.drop_prob = 0.25;
  p.seed = 5;
  const RoadGraph g = generate_synthetic(p);
  CHECK(oracle::bfs_connected(g));
}

TEST_CASE("bounding box") {
  CHECK_THROWS_AS(bounding_box(RoadGraph({}, {}, {})), validation_error);

  RoadGraph single({3.0}, {4.0}, {});
  const BoundingBox b1 = bounding_box(single);
  CHECK(b1 == BoundingBox{3.0, 3.0, 4.0, 4.0});

  RoadGraph two({0.0, 10.0}, {0.0, 5.0}, {{0, 1, 1.0}});
  CHECK(bounding_box(two) == BoundingBox{0.0, 10.0, 0.0, 5.0});
}

TEST_CASE("bounding box matches a linear scan on random points") {
  std::mt19937_64 rng(11);
  std::vector<double> xs(1000), ys(1000);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = static_cast<double>(rng() % 100000) / 7.0 - 5000.0;
    ys[i] = static_cast<double>(rng() % 100000) / 3.0 - 9000.0;
  }
  RoadGraph g(xs, ys, {});
  double xmin = xs[0], xmax = xs[0], ymin = ys[0], ymax = ys[0];
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xmin = std::min(xmin, xs[i]);
    xmax = std::max(xmax, xs[i]);
    ymin = std::min(ymin, ys[i]);
    ymax = std::max(ymax, ys[i]);
  }
  CHECK(bounding_box(g) == BoundingBox{xmin, xmax, ymin, ymax});
}

TEST_CASE("euclidean distance") {
  RoadGraph g({0.0, 3.0}, {0.0, 4.0}, {{0, 1, 1.0}});
  CHECK(euclidean_distance(g, 0, 0) == 0.0);
  CHECK(euclidean_distance(g, 0, 1) == 5.0);
  CHECK_THROWS_AS(euclidean_distance(g, 0, 2), validation_error);
}

TEST_CASE("euclidean distance matches hypot on random pairs") {
  const RoadGraph& g = testfx::grid100();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto [u, v] = oracle::random_pair(rng, g.vertex_count());
    const double d = euclidean_distance(g, u, v);
    const double h = std::hypot(g.x(u) - g.x(v), g.y(u) - g.y(v));
    CHECK(d == doctest::Approx(h).epsilon(1e-12));
  }
}

}  // TEST_SUITE
