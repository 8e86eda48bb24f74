#include "septree/lsh.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "septree/parallel.hpp"
#include "septree/search.hpp"

namespace septree {

namespace {

struct NodeTask {
  std::vector<VertexId> scope;  // ascending ids
  double lo;
  double hi;
};

struct NodeOutcome {
  std::vector<VertexId> left;
  std::vector<VertexId> right;
  std::size_t separator_size = 0;
  bool ran_dijkstra = false;
};

void check_depth_param(int k) {
  if (k < 1 || k > kMaxTreeDepth)
    throw validation_error("tree depth k must lie in [1, " +
                           std::to_string(kMaxTreeDepth) + "], got " +
                           std::to_string(k));
}

}  // namespace

AxisLabels build_axis_labels(const RoadGraph& g, Axis axis, int k,
                             const LshBuildOptions& options,
                             AxisBuildStats* stats) {
  check_depth_param(k);
  if (!g.is_connected())
    throw validation_error("separator-tree build requires a connected graph");

  const std::size_t n = g.vertex_count();
  const BoundingBox box = bounding_box(g);

  AxisLabels labels;
  labels.axis = axis;
  labels.k = k;
  labels.codes.assign(n, 0);
  labels.valid_depths.assign(n, 0);
  labels.costs.assign(n * static_cast<std::size_t>(k), kInfiniteCost);

  if (stats) {
    *stats = AxisBuildStats{};
    stats->level_separator_vertices.assign(static_cast<std::size_t>(k), 0);
  }

  std::vector<NodeTask> level;
  {
    NodeTask root;
    root.scope.resize(n);
    for (std::size_t v = 0; v < n; ++v)
      root.scope[v] = static_cast<VertexId>(v);
    root.lo = box.lo(axis);
    root.hi = box.hi(axis);
    level.push_back(std::move(root));
  }

  for (int d = 1; d <= k && !level.empty(); ++d) {
    std::vector<NodeOutcome> outcomes(level.size());

    parallel_for(level.size(), options.threads, [&](std::size_t i) {
      const NodeTask& node = level[i];
      NodeOutcome& out = outcomes[i];
      const double split = (node.lo + node.hi) / 2.0;
      const AxisLine line{axis, split};

      std::vector<std::uint8_t> scope_mask;
      std::vector<VertexId> separator;
      if (options.cost_scope == CostScope::full_graph) {
        separator = separator_of(cut_edges(g, line));
      } else {
        scope_mask.assign(n, 0);
        for (VertexId v : node.scope) scope_mask[v] = 1;
        separator = separator_of(cut_edges_masked(g, scope_mask, line));
      }

      out.left.reserve(node.scope.size());
      for (VertexId v : node.scope) {
        const bool above = g.coord(v, axis) > split;
        if (above) {
          labels.codes[v] |= 1u << (d - 1);
          out.right.push_back(v);
        } else {
          out.left.push_back(v);
        }
        labels.valid_depths[v] = static_cast<std::uint8_t>(d);
      }

      out.separator_size = separator.size();
      if (!separator.empty()) {
        out.ran_dijkstra = true;
        const std::vector<double> dist =
            options.cost_scope == CostScope::full_graph
                ? multi_source_dijkstra(g, separator)
                : multi_source_dijkstra_within(g, separator, scope_mask);
        const std::size_t column = static_cast<std::size_t>(d - 1);
        for (VertexId v : node.scope)
          labels.costs[static_cast<std::size_t>(v) * k + column] = dist[v];
      }
    });

    std::vector<NodeTask> next;
    next.reserve(2 * level.size());
    for (std::size_t i = 0; i < level.size(); ++i) {
      const double split = (level[i].lo + level[i].hi) / 2.0;
      NodeOutcome& out = outcomes[i];
      if (stats) {
        ++stats->nodes_visited;
        if (out.separator_size > 0) ++stats->nonempty_separator_nodes;
        if (out.ran_dijkstra) ++stats->dijkstra_invocations;
        stats->level_separator_vertices[static_cast<std::size_t>(d - 1)] +=
            out.separator_size;
      }
      if (d == k) continue;
      if (!out.left.empty())
        next.push_back({std::move(out.left), level[i].lo, split});
      if (!out.right.empty())
        next.push_back({std::move(out.right), split, level[i].hi});
    }
    level = std::move(next);
  }

  return labels;
}

LshIndex::LshIndex(AxisLabels x, AxisLabels y, BoundingBox box,
                   GraphFingerprint fp, CostScope scope)
    : x_(std::move(x)),
      y_(std::move(y)),
      box_(box),
      fingerprint_(fp),
      cost_scope_(scope) {
  if (x_.k != y_.k)
    throw validation_error("axis labels disagree on tree depth");
  if (x_.vertex_count() != y_.vertex_count())
    throw validation_error("axis labels disagree on vertex count");
}

LshIndex build_lsh_index(const RoadGraph& g, int k,
                         const LshBuildOptions& options, LshBuildStats* stats) {
  AxisLabels x = build_axis_labels(g, Axis::x, k, options,
                                   stats ? &stats->x : nullptr);
  AxisLabels y = build_axis_labels(g, Axis::y, k, options,
                                   stats ? &stats->y : nullptr);
  return LshIndex(std::move(x), std::move(y), bounding_box(g),
                  g.fingerprint(), options.cost_scope);
}

namespace {

struct AxisScan {
  double best = 0.0;       // max contribution seen
  double best_sum = -1.0;  // the separation contribution, < 0 if none
  int separation_level = 0;
  int levels_scanned = 0;
};

AxisScan scan_axis(const AxisLabels& a, VertexId s, VertexId t, int d) {
  AxisScan r;
  const int limit = std::min(
      {d, static_cast<int>(a.valid_depths[s]),
       static_cast<int>(a.valid_depths[t])});
  const std::uint32_t code_s = a.codes[s];
  const std::uint32_t code_t = a.codes[t];
  const double* row_s = a.costs.data() + static_cast<std::size_t>(s) * a.k;
  const double* row_t = a.costs.data() + static_cast<std::size_t>(t) * a.k;
  for (int i = 0; i < limit; ++i) {
    ++r.levels_scanned;
    const bool finite = std::isfinite(row_s[i]) && std::isfinite(row_t[i]);
    if (((code_s ^ code_t) >> i & 1u) == 0) {
      if (finite) r.best = std::max(r.best, std::fabs(row_s[i] - row_t[i]));
    } else {
      // First differing bit ends this axis's scan. An empty separator
      // (infinite cost) contributes nothing.
      if (finite) {
        r.best_sum = row_s[i] + row_t[i];
        r.best = std::max(r.best, r.best_sum);
        r.separation_level = i + 1;
      }
      break;
    }
  }
  return r;
}

void check_evaluate_args(const LshIndex& index, VertexId s, VertexId t,
                         int d) {
  const auto n = index.vertex_count();
  if (s >= n || t >= n)
    throw validation_error("vertex id out of range for index (n=" +
                           std::to_string(n) + ")");
  if (d < 1 || d > index.depth())
    throw validation_error("evaluation depth must lie in [1, " +
                           std::to_string(index.depth()) + "], got " +
                           std::to_string(d));
}

}  // namespace

double LshIndex::evaluate(VertexId s, VertexId t, int d) const {
  check_evaluate_args(*this, s, t, d);
  const AxisScan sx = scan_axis(x_, s, t, d);
  const AxisScan sy = scan_axis(y_, s, t, d);
  return std::max(sx.best, sy.best);
}

void LshIndex::ensure_matches(const RoadGraph& g) const {
  if (!(fingerprint_ == g.fingerprint()))
    throw stale_index_error(
        "index fingerprint does not match the graph; rebuild the index");
}

double lsh_evaluate(const LshIndex& index, const RoadGraph& g, VertexId s,
                    VertexId t, int d) {
  index.ensure_matches(g);
  return index.evaluate(s, t, d);
}

SeparationInfo separation_diagnostics(const LshIndex& index, VertexId s,
                                      VertexId t, int d) {
  check_evaluate_args(index, s, t, d);
  const AxisScan sx = scan_axis(index.labels(Axis::x), s, t, d);
  const AxisScan sy = scan_axis(index.labels(Axis::y), s, t, d);

  SeparationInfo info;
  info.value = std::max(sx.best, sy.best);
  info.levels_scanned_x = sx.levels_scanned;
  info.levels_scanned_y = sy.levels_scanned;
  info.separated = sx.separation_level > 0 || sy.separation_level > 0;
  if (info.separated) {
    if (sy.separation_level > 0 &&
        (sx.separation_level == 0 ||
         sy.separation_level < sx.separation_level)) {
      info.first_axis = Axis::y;
      info.first_level = sy.separation_level;
    } else {
      info.first_axis = Axis::x;
      info.first_level = sx.separation_level;
    }
    info.determined = std::max(sx.best_sum, sy.best_sum) >= info.value;
  }
  return info;
}

}  // namespace septree
