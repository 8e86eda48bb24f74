#include "septree/gsh.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "septree/lsh.hpp"
#include "septree/parallel.hpp"
#include "septree/search.hpp"

namespace septree {

GshIndex::GshIndex(int k, BoundingBox box, GraphFingerprint fp,
                   std::vector<double> line_positions,
                   std::vector<std::uint32_t> x_codes,
                   std::vector<std::uint32_t> y_codes,
                   std::vector<double> x_costs, std::vector<double> y_costs)
    : k_(k),
      box_(box),
      fingerprint_(fp),
      line_positions_(std::move(line_positions)),
      x_codes_(std::move(x_codes)),
      y_codes_(std::move(y_codes)),
      x_costs_(std::move(x_costs)),
      y_costs_(std::move(y_costs)) {
  const auto n = x_codes_.size();
  const auto kk = static_cast<std::size_t>(k_);
  if (line_positions_.size() != 2 * kk || y_codes_.size() != n ||
      x_costs_.size() != n * kk || y_costs_.size() != n * kk)
    throw validation_error("inconsistent GSH index arrays");
}

GshIndex build_gsh_index(const RoadGraph& g, int k,
                         const GshBuildOptions& options, GshBuildStats* stats) {
  if (k < 1 || k > kMaxTreeDepth)
    throw validation_error("separator count per axis must lie in [1, " +
                           std::to_string(kMaxTreeDepth) + "], got " +
                           std::to_string(k));
  if (!g.is_connected())
    throw validation_error("GSH build requires a connected graph");

  const std::size_t n = g.vertex_count();
  const BoundingBox box = bounding_box(g);
  const auto kk = static_cast<std::size_t>(k);

  // k vertical lines, then k horizontal, equally spaced in the box.
  std::vector<double> positions(2 * kk);
  for (int j = 1; j <= k; ++j) {
    positions[j - 1] = line_at_fraction(box.x_min, box.x_max, j, k + 1);
    positions[kk + j - 1] = line_at_fraction(box.y_min, box.y_max, j, k + 1);
  }

  std::vector<std::uint32_t> x_codes(n, 0), y_codes(n, 0);
  std::vector<double> x_costs(n * kk, kInfiniteCost);
  std::vector<double> y_costs(n * kk, kInfiniteCost);
  std::vector<std::size_t> sep_sizes(2 * kk, 0);

  parallel_for(2 * kk, options.threads, [&](std::size_t li) {
    const Axis axis = li < kk ? Axis::x : Axis::y;
    const int j = static_cast<int>(li < kk ? li : li - kk);  // 0-based
    const AxisLine line{axis, positions[li]};
    auto& codes = axis == Axis::x ? x_codes : y_codes;
    auto& costs = axis == Axis::x ? x_costs : y_costs;

    for (std::size_t v = 0; v < n; ++v) {
      if (g.coord(static_cast<VertexId>(v), axis) > line.position)
        codes[v] |= 1u << j;
    }

    const std::vector<VertexId> sep = separator_of(cut_edges(g, line));
    sep_sizes[li] = sep.size();
    if (sep.empty()) return;  // column stays infinite
    const std::vector<double> dist = multi_source_dijkstra(g, sep);
    for (std::size_t v = 0; v < n; ++v)
      costs[v * kk + static_cast<std::size_t>(j)] = dist[v];
  });

  if (stats) stats->separator_sizes = std::move(sep_sizes);
  return GshIndex(k, box, g.fingerprint(), std::move(positions),
                  std::move(x_codes), std::move(y_codes), std::move(x_costs),
                  std::move(y_costs));
}

namespace {

void check_pair(const GshIndex& index, VertexId s, VertexId t) {
  const auto n = index.vertex_count();
  if (s >= n || t >= n)
    throw validation_error("vertex id out of range for index (n=" +
                           std::to_string(n) + ")");
}

struct GshScan {
  double best = 0.0;
  double best_sum = -1.0;
};

void scan_gsh_axis(const GshIndex& index, Axis axis, VertexId s, VertexId t,
                   GshScan& r) {
  const int k = index.separators_per_axis();
  const auto& codes = index.codes(axis);
  const auto& costs = index.costs(axis);
  const std::uint32_t diff = codes[s] ^ codes[t];
  const double* row_s = costs.data() + static_cast<std::size_t>(s) * k;
  const double* row_t = costs.data() + static_cast<std::size_t>(t) * k;
  for (int j = 0; j < k; ++j) {
    const double cs = row_s[j];
    const double ct = row_t[j];
    if (!std::isfinite(cs) || !std::isfinite(ct)) continue;
    if ((diff >> j) & 1u) {
      const double sum = cs + ct;
      r.best = std::max(r.best, sum);
      r.best_sum = std::max(r.best_sum, sum);
    } else {
      r.best = std::max(r.best, std::fabs(cs - ct));
    }
  }
}

}  // namespace

double GshIndex::evaluate(VertexId s, VertexId t) const {
  check_pair(*this, s, t);
  GshScan r;
  scan_gsh_axis(*this, Axis::x, s, t, r);
  scan_gsh_axis(*this, Axis::y, s, t, r);
  return r.best;
}

void GshIndex::ensure_matches(const RoadGraph& g) const {
  if (!(fingerprint_ == g.fingerprint()))
    throw stale_index_error(
        "index fingerprint does not match the graph; rebuild the index");
}

double gsh_evaluate(const GshIndex& index, const RoadGraph& g, VertexId s,
                    VertexId t) {
  index.ensure_matches(g);
  return index.evaluate(s, t);
}

GshSeparationInfo gsh_separation_diagnostics(const GshIndex& index, VertexId s,
                                             VertexId t) {
  check_pair(index, s, t);
  GshScan r;
  scan_gsh_axis(index, Axis::x, s, t, r);
  scan_gsh_axis(index, Axis::y, s, t, r);
  GshSeparationInfo info;
  info.value = r.best;
  info.separated = r.best_sum >= 0.0;
  info.determined = info.separated && r.best_sum >= r.best;
  return info;
}

}  // namespace septree
