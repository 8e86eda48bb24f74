#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <type_traits>
#include <vector>

#include "septree/graph.hpp"

namespace septree {

inline constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

/// Traversal counters. "Settled" means popped from the priority queue with
/// its final distance; each vertex is counted once even if an inconsistent
/// heuristic forces a re-expansion.
struct QueryStats {
  std::uint64_t settled_count = 0;
  std::uint64_t relaxed_edge_count = 0;
  std::uint64_t path_vertex_count = 0;
};

struct PathResult {
  bool found = false;
  double cost = kInfiniteCost;
  std::vector<VertexId> path;  // s..t inclusive; empty when not found
  QueryStats stats;
};

/// Single-source shortest-path distances; kInfiniteCost where unreachable.
std::vector<double> dijkstra_all(const RoadGraph& g, VertexId source,
                                 QueryStats* stats = nullptr);

/// dist[v] = min over sources u of c(v, u). Throws validation_error on an
/// empty source set.
std::vector<double> multi_source_dijkstra(const RoadGraph& g,
                                          std::span<const VertexId> sources);

/// Restriction of multi_source_dijkstra to the subgraph induced by the
/// vertices with scope_mask[v] != 0. Vertices outside the scope keep
/// kInfiniteCost and are never relaxed.
std::vector<double> multi_source_dijkstra_within(
    const RoadGraph& g, std::span<const VertexId> sources,
    std::span<const std::uint8_t> scope_mask);

namespace detail {

struct QueueEntry {
  double f;
  double g;
  VertexId v;
};

// Pop order: smallest f, then largest g (prefer entries deeper along a
// path, which trims f-plateaus), then smallest id. Total order makes runs
// deterministic.
struct QueueOrder {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    return a.v > b.v;
  }
};

using SearchQueue =
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder>;

}  // namespace detail

/// A* from s to t with heuristic h(v) estimating the remaining cost to t.
///
/// Requires h admissible (h(v) <= c(v,t)) and nonnegative with h(t) == 0;
/// consistency is NOT assumed: a vertex whose tentative distance improves
/// after it was settled is re-opened, so the returned cost always equals
/// the Dijkstra distance. An unreachable target yields found == false
/// rather than an error. If settled_order is given, settled vertices are
/// appended in settling order (each once).
template <typename H>
  requires std::is_invocable_r_v<double, H, VertexId>
PathResult astar(const RoadGraph& g, VertexId s, VertexId t, H&& h,
                 std::vector<VertexId>* settled_order = nullptr) {
  g.check_vertex(s);
  g.check_vertex(t);

  const std::size_t n = g.vertex_count();
  std::vector<double> dist(n, kInfiniteCost);
  std::vector<VertexId> parent(n, kInvalidVertex);
  std::vector<char> settled(n, 0);

  PathResult result;
  detail::SearchQueue queue;
  dist[s] = 0.0;
  queue.push({h(s), 0.0, s});

  while (!queue.empty()) {
    const auto entry = queue.top();
    queue.pop();
    const VertexId u = entry.v;
    if (entry.g != dist[u]) continue;  // stale
    if (!settled[u]) {
      settled[u] = 1;
      ++result.stats.settled_count;
      if (settled_order) settled_order->push_back(u);
    }
    if (u == t) {
      result.found = true;
      result.cost = dist[t];
      for (VertexId v = t;; v = parent[v]) {
        result.path.push_back(v);
        if (v == s) break;
      }
      std::reverse(result.path.begin(), result.path.end());
      result.stats.path_vertex_count = result.path.size();
      return result;
    }
    for (const Arc& a : g.arcs(u)) {
      ++result.stats.relaxed_edge_count;
      const double nd = entry.g + a.cost;
      if (nd < dist[a.to]) {
        dist[a.to] = nd;
        parent[a.to] = u;
        queue.push({nd + h(a.to), nd, a.to});
      }
    }
  }
  return result;  // found == false
}

inline constexpr auto zero_heuristic = [](VertexId) { return 0.0; };

}  // namespace septree
