#pragma once

#include <span>
#include <vector>

#include "septree/graph.hpp"

namespace septree {

/// Infinite axis-aligned line in the plane embedding: x = position for
/// Axis::x, y = position for Axis::y.
struct AxisLine {
  Axis axis = Axis::x;
  double position = 0.0;
};

/// A cut edge, oriented with the smaller-coordinate endpoint first:
/// coord(low) <= line.position < coord(high).
struct CutEdge {
  VertexId low;
  VertexId high;
};

/// Line-cut separator of the scope subgraph. The separator vertices are
/// the larger-coordinate endpoints of the cut edges; removing them leaves
/// no edge between left_side and right_side. The three vertex sets
/// partition the scope and are sorted by id.
struct SeparatorCut {
  std::vector<CutEdge> cut_edges;
  std::vector<VertexId> separator;
  std::vector<VertexId> left_side;   // coord <= position, minus separator
  std::vector<VertexId> right_side;  // coord >  position, minus separator
};

/// Edges (u,w) with both endpoints in scope and coord(u) <= position <
/// coord(w). A vertex exactly on the line counts as the <= side, so edges
/// lying entirely on the line are not cut. May be empty.
std::vector<CutEdge> cut_edges(const RoadGraph& g,
                               std::span<const VertexId> scope,
                               const AxisLine& line);

/// Same with scope = all vertices.
std::vector<CutEdge> cut_edges(const RoadGraph& g, const AxisLine& line);

/// Same with the scope given as a per-vertex membership mask.
std::vector<CutEdge> cut_edges_masked(const RoadGraph& g,
                                      std::span<const std::uint8_t> scope_mask,
                                      const AxisLine& line);

/// Sorted, deduplicated larger-coordinate endpoints of a cut.
std::vector<VertexId> separator_of(std::span<const CutEdge> edges);

SeparatorCut build_cut(const RoadGraph& g, std::span<const VertexId> scope,
                       const AxisLine& line);

SeparatorCut build_cut(const RoadGraph& g, const AxisLine& line);

/// Position of the line dividing [lo, hi] at fraction num/den (0 < num <
/// den). The halfway case is computed as (lo + hi) / 2 so that separator
/// trees and equally-spaced separator sets place coinciding lines
/// bit-identically.
double line_at_fraction(double lo, double hi, int num, int den);

}  // namespace septree
