#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "septree/separator.hpp"

using namespace septree;

namespace {

// True iff removing `removed` leaves no path from any vertex of `from` to
// any vertex of `to` inside the graph.
bool disconnected(const RoadGraph& g, const std::vector<VertexId>& removed,
                  const std::vector<VertexId>& from,
                  const std::vector<VertexId>& to) {
  std::vector<char> mask(g.vertex_count(), 0);
  for (VertexId v : removed) mask[v] = 1;
  std::vector<char> target(g.vertex_count(), 0);
  for (VertexId v : to) target[v] = 1;
  for (VertexId s : from) {
    const auto seen = oracle::bfs_reachable(g, s, &mask);
    for (std::size_t v = 0; v < seen.size(); ++v)
      if (seen[v] && target[v]) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("separator") {

TEST_CASE("line left of all vertices cuts nothing") {
  const RoadGraph g = testfx::small_graph(1);
  const BoundingBox box = bounding_box(g);
  const auto f = cut_edges(g, AxisLine{Axis::x, box.x_min - 100.0});
  CHECK(f.empty());
}

TEST_CASE("single straddling edge is cut and oriented") {
  RoadGraph g({0.0, 10.0}, {0.0, 0.0}, {{1, 0, 2.0}});
  const auto f = cut_edges(g, AxisLine{Axis::x, 5.0});
  REQUIRE(f.size() == 1);
  CHECK(f[0].low == 0);
  CHECK(f[0].high == 1);
}

TEST_CASE("vertex exactly on the line belongs to the <= side") {
  // Edge from x=0 to x=5 with the line at x=5: both endpoints <= 5, no cut.
  RoadGraph g({0.0, 5.0, 10.0}, {0.0, 0.0, 0.0}, {{0, 1, 1.0}, {1, 2, 1.0}});
  const auto f = cut_edges(g, AxisLine{Axis::x, 5.0});
  REQUIRE(f.size() == 1);
  CHECK(f[0].low == 1);
  CHECK(f[0].high == 2);

  const SeparatorCut cut = build_cut(g, AxisLine{Axis::x, 5.0});
  CHECK(cut.separator == std::vector<VertexId>{2});
  CHECK(cut.left_side == std::vector<VertexId>{0, 1});
  CHECK(cut.right_side.empty());
}

TEST_CASE("cut over a grid midline matches an exhaustive scan") {
  SyntheticParams p;
  p.rows = 20;
  p.cols = 20;
  p.drop_prob = 0.05;
  p.seed = 33;
  const RoadGraph g = generate_synthetic(p);
  const BoundingBox box = bounding_box(g);
  const AxisLine line{Axis::x, (box.x_min + box.x_max) / 2.0};
  const auto f = cut_edges(g, line);

  std::size_t expected = 0;
  for_each_edge(g, [&](VertexId u, VertexId w, double) {
    const double a = std::min(g.x(u), g.x(w));
    const double b = std::max(g.x(u), g.x(w));
    if (a <= line.position && b > line.position) ++expected;
  });
  CHECK(f.size() == expected);
  for (const CutEdge& e : f) {
    CHECK(g.x(e.low) <= line.position);
    CHECK(g.x(e.high) > line.position);
  }
}

TEST_CASE("empty cut yields left-only partition") {
  RoadGraph g({0.0, 1.0}, {0.0, 0.0}, {{0, 1, 1.0}});
  const SeparatorCut cut = build_cut(g, AxisLine{Axis::x, 50.0});
  CHECK(cut.cut_edges.empty());
  CHECK(cut.separator.empty());
  CHECK(cut.left_side == std::vector<VertexId>{0, 1});
  CHECK(cut.right_side.empty());
}

TEST_CASE("4-cycle crossing the line twice yields a 2-vertex separator") {
  //  0(0,0) -- 1(10,0)
  //   |          |
  //  3(0,10) -- 2(10,10)
  RoadGraph g({0, 10, 10, 0}, {0, 0, 10, 10},
              {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 1.0}});
  const SeparatorCut cut = build_cut(g, AxisLine{Axis::x, 5.0});
  CHECK(cut.separator.size() == 2);
  CHECK(disconnected(g, cut.separator, cut.left_side, cut.right_side));
}

TEST_CASE("separation property on random graphs") {
  for (std::uint64_t seed : {2ull, 4ull, 6ull}) {
    SyntheticParams p;
    p.rows = 12;
    p.cols = 12;
    p.drop_prob = 0.15;
    p.seed = seed;
    const RoadGraph g = generate_synthetic(p);
    const BoundingBox box = bounding_box(g);
    for (Axis axis : {Axis::x, Axis::y}) {
      for (double frac : {0.3, 0.5, 0.8}) {
        const AxisLine line{axis, box.lo(axis) + frac * box.extent(axis)};
        const SeparatorCut cut = build_cut(g, line);
        CHECK(disconnected(g, cut.separator, cut.left_side, cut.right_side));
        // Partition check.
        CHECK(cut.left_side.size() + cut.right_side.size() +
                  cut.separator.size() ==
              g.vertex_count());
      }
    }
  }
}

TEST_CASE("scoped cut only sees edges inside the scope") {
  RoadGraph g({0.0, 10.0, 0.0, 10.0}, {0.0, 0.0, 5.0, 5.0},
              {{0, 1, 1.0}, {2, 3, 1.0}, {0, 2, 1.0}, {1, 3, 1.0}});
  const std::vector<VertexId> scope{0, 1};
  const auto f = cut_edges(g, scope, AxisLine{Axis::x, 5.0});
  REQUIRE(f.size() == 1);
  CHECK(f[0].low == 0);
  CHECK(f[0].high == 1);
}

TEST_CASE("identical inputs produce identical separators") {
  const RoadGraph g = testfx::small_graph(3);
  const BoundingBox box = bounding_box(g);
  const AxisLine line{Axis::y, (box.y_min + box.y_max) / 2.0};
  const SeparatorCut a = build_cut(g, line);
  const SeparatorCut b = build_cut(g, line);
  CHECK(a.separator == b.separator);
  CHECK(a.left_side == b.left_side);
  CHECK(a.right_side == b.right_side);
}

TEST_CASE("line_at_fraction midpoint matches the tree split formula") {
  const double lo = 1.25, hi = 907.5;
  CHECK(line_at_fraction(lo, hi, 1, 2) == (lo + hi) / 2.0);
  CHECK(line_at_fraction(lo, hi, 1, 4) < line_at_fraction(lo, hi, 2, 4));
  CHECK_THROWS_AS(line_at_fraction(lo, hi, 0, 2), validation_error);
  CHECK_THROWS_AS(line_at_fraction(lo, hi, 2, 2), validation_error);
}

}  // TEST_SUITE
