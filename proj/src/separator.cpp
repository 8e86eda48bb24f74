#include "septree/separator.hpp"

#include <algorithm>

namespace septree {

namespace {

std::vector<CutEdge> collect_cut_edges(const RoadGraph& g,
                                       const std::uint8_t* in_scope,
                                       const AxisLine& line) {
  std::vector<CutEdge> out;
  for_each_edge(g, [&](VertexId u, VertexId w, double) {
    if (in_scope && (!in_scope[u] || !in_scope[w])) return;
    double cu = g.coord(u, line.axis);
    double cw = g.coord(w, line.axis);
    if (cu > cw) std::swap(u, w);  // orient low -> high
    cu = g.coord(u, line.axis);
    cw = g.coord(w, line.axis);
    if (cu <= line.position && cw > line.position) out.push_back({u, w});
  });
  return out;
}

std::vector<std::uint8_t> scope_mask_of(const RoadGraph& g,
                                        std::span<const VertexId> scope) {
  std::vector<std::uint8_t> mask(g.vertex_count(), 0);
  for (VertexId v : scope) {
    g.check_vertex(v);
    mask[v] = 1;
  }
  return mask;
}

SeparatorCut assemble(const RoadGraph& g, std::span<const VertexId> scope,
                      const AxisLine& line, std::vector<CutEdge> edges) {
  SeparatorCut cut;
  cut.cut_edges = std::move(edges);
  cut.separator = separator_of(cut.cut_edges);
  // Separator vertices all lie strictly on the > side of the line, so the
  // left side is exactly the <= part of the scope.
  for (VertexId v : scope) {
    if (g.coord(v, line.axis) <= line.position) {
      cut.left_side.push_back(v);
    } else if (!std::binary_search(cut.separator.begin(), cut.separator.end(),
                                   v)) {
      cut.right_side.push_back(v);
    }
  }
  std::sort(cut.left_side.begin(), cut.left_side.end());
  std::sort(cut.right_side.begin(), cut.right_side.end());
  return cut;
}

std::vector<VertexId> all_vertices(const RoadGraph& g) {
  std::vector<VertexId> v(g.vertex_count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<VertexId>(i);
  return v;
}

}  // namespace

std::vector<CutEdge> cut_edges(const RoadGraph& g,
                               std::span<const VertexId> scope,
                               const AxisLine& line) {
  const auto mask = scope_mask_of(g, scope);
  return collect_cut_edges(g, mask.data(), line);
}

std::vector<CutEdge> cut_edges(const RoadGraph& g, const AxisLine& line) {
  return collect_cut_edges(g, nullptr, line);
}

std::vector<CutEdge> cut_edges_masked(const RoadGraph& g,
                                      std::span<const std::uint8_t> scope_mask,
                                      const AxisLine& line) {
  if (scope_mask.size() != g.vertex_count())
    throw validation_error("scope mask size mismatch");
  return collect_cut_edges(g, scope_mask.data(), line);
}

std::vector<VertexId> separator_of(std::span<const CutEdge> edges) {
  std::vector<VertexId> sep;
  sep.reserve(edges.size());
  for (const CutEdge& e : edges) sep.push_back(e.high);
  std::sort(sep.begin(), sep.end());
  sep.erase(std::unique(sep.begin(), sep.end()), sep.end());
  return sep;
}

SeparatorCut build_cut(const RoadGraph& g, std::span<const VertexId> scope,
                       const AxisLine& line) {
  const auto mask = scope_mask_of(g, scope);
  return assemble(g, scope, line, collect_cut_edges(g, mask.data(), line));
}

SeparatorCut build_cut(const RoadGraph& g, const AxisLine& line) {
  const auto scope = all_vertices(g);
  return assemble(g, scope, line, collect_cut_edges(g, nullptr, line));
}

double line_at_fraction(double lo, double hi, int num, int den) {
  if (num <= 0 || num >= den)
    throw validation_error("line fraction must satisfy 0 < num < den");
  if (2 * num == den) return (lo + hi) / 2.0;
  return lo + (hi - lo) * (static_cast<double>(num) / den);
}

}  // namespace septree
