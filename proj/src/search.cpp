#include "septree/search.hpp"

#include <algorithm>

namespace septree {

namespace {

std::vector<double> run_dijkstra(const RoadGraph& g,
                                 std::span<const VertexId> sources,
                                 const std::uint8_t* scope_mask,
                                 QueryStats* stats) {
  const std::size_t n = g.vertex_count();
  std::vector<double> dist(n, kInfiniteCost);
  detail::SearchQueue queue;
  for (VertexId s : sources) {
    g.check_vertex(s);
    if (scope_mask && !scope_mask[s]) continue;
    if (dist[s] != 0.0) {
      dist[s] = 0.0;
      queue.push({0.0, 0.0, s});
    }
  }
  while (!queue.empty()) {
    const auto entry = queue.top();
    queue.pop();
    const VertexId u = entry.v;
    if (entry.g != dist[u]) continue;
    if (stats) ++stats->settled_count;
    for (const Arc& a : g.arcs(u)) {
      if (scope_mask && !scope_mask[a.to]) continue;
      if (stats) ++stats->relaxed_edge_count;
      const double nd = entry.g + a.cost;
      if (nd < dist[a.to]) {
        dist[a.to] = nd;
        queue.push({nd, nd, a.to});
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<double> dijkstra_all(const RoadGraph& g, VertexId source,
                                 QueryStats* stats) {
  const VertexId sources[1] = {source};
  return run_dijkstra(g, sources, nullptr, stats);
}

std::vector<double> multi_source_dijkstra(const RoadGraph& g,
                                          std::span<const VertexId> sources) {
  if (sources.empty())
    throw validation_error("multi_source_dijkstra needs a nonempty source set");
  return run_dijkstra(g, sources, nullptr, nullptr);
}

std::vector<double> multi_source_dijkstra_within(
    const RoadGraph& g, std::span<const VertexId> sources,
    std::span<const std::uint8_t> scope_mask) {
  if (sources.empty())
    throw validation_error("multi_source_dijkstra needs a nonempty source set");
  if (scope_mask.size() != g.vertex_count())
    throw validation_error("scope mask size mismatch");
  return run_dijkstra(g, sources, scope_mask.data(), nullptr);
}

}  // namespace septree
