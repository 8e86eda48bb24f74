#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "septree/errors.hpp"

namespace septree {

using VertexId = std::uint32_t;
inline constexpr VertexId kInvalidVertex = static_cast<VertexId>(-1);

enum class Axis : std::uint8_t { x = 0, y = 1 };

inline const char* axis_name(Axis a) { return a == Axis::x ? "x" : "y"; }

/// Undirected edge with a positive travel-time cost in seconds.
struct Edge {
  VertexId u;
  VertexId v;
  double cost;
};

/// One adjacency entry.
struct Arc {
  VertexId to;
  double cost;
};

struct BoundingBox {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double diagonal() const;
  double extent(Axis a) const { return a == Axis::x ? width() : height(); }
  double lo(Axis a) const { return a == Axis::x ? x_min : y_min; }
  double hi(Axis a) const { return a == Axis::x ? x_max : y_max; }

  bool operator==(const BoundingBox&) const = default;
};

/// Cheap identity check between a graph and a preprocessing artifact:
/// vertex/edge counts plus a CRC-32 over the adjacency structure and costs.
struct GraphFingerprint {
  std::uint64_t vertex_count = 0;
  std::uint64_t edge_count = 0;
  std::uint32_t cost_crc32 = 0;

  bool operator==(const GraphFingerprint&) const = default;
};

/// Undirected plane-embedded road graph with positive edge costs (seconds).
///
/// Immutable after construction; safe for concurrent reads from any number
/// of query threads. Vertex ids are dense 0..n-1. Adjacency is stored CSR,
/// sorted by neighbor id, with parallel input edges collapsed to their
/// minimum cost. Self-loops, nonpositive or non-finite costs, and non-finite
/// coordinates are rejected.
class RoadGraph {
 public:
  RoadGraph() = default;
  RoadGraph(std::vector<double> x, std::vector<double> y,
            const std::vector<Edge>& edges);

  std::size_t vertex_count() const { return x_.size(); }
  /// Number of undirected edges (each stored as two arcs).
  std::size_t edge_count() const { return edge_count_; }

  double x(VertexId v) const { return x_[v]; }
  double y(VertexId v) const { return y_[v]; }
  double coord(VertexId v, Axis a) const {
    return a == Axis::x ? x_[v] : y_[v];
  }

  std::span<const Arc> arcs(VertexId v) const {
    return {arcs_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  const GraphFingerprint& fingerprint() const { return fingerprint_; }

  /// Throws validation_error if v is not a vertex of this graph.
  void check_vertex(VertexId v) const;

  bool is_connected() const;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
  std::size_t edge_count_ = 0;
  GraphFingerprint fingerprint_;
};

/// Visits every undirected edge once, as (u, w, cost) with u < w.
template <typename Fn>
void for_each_edge(const RoadGraph& g, Fn&& fn) {
  const auto n = static_cast<VertexId>(g.vertex_count());
  for (VertexId u = 0; u < n; ++u) {
    for (const Arc& a : g.arcs(u)) {
      if (a.to > u) fn(u, a.to, a.cost);
    }
  }
}

struct SyntheticParams {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double cell_size = 100.0;  // meters
  /// Draw per edge; cost = Euclidean length / speed. m/s.
  std::vector<double> speed_classes = {8.33, 13.89, 25.0};
  double drop_prob = 0.0;  // must be < 0.3
  std::uint64_t seed = 0;
};

/// Jittered grid graph restricted to its largest connected component.
/// Pure function of its arguments: the same params give a bit-identical
/// graph on any platform.
RoadGraph generate_synthetic(const SyntheticParams& params);

/// Returns the largest connected component (ties broken toward the
/// component discovered first, i.e. the one with the smallest vertex id)
/// and the old-to-new id map, kInvalidVertex for dropped vertices.
std::pair<RoadGraph, std::vector<VertexId>> largest_connected_component(
    const RoadGraph& g);

/// Componentwise min/max of the vertex coordinates.
/// Throws validation_error on an empty graph.
BoundingBox bounding_box(const RoadGraph& g);

/// Planar Euclidean distance between two vertices, meters.
double euclidean_distance(const RoadGraph& g, VertexId u, VertexId v);

}  // namespace septree
