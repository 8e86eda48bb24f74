#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "septree/graph.hpp"
#include "septree/separator.hpp"

namespace septree {

/// Where separator cuts and c(v, S) distances are computed during the
/// recursive build.
///
/// full_graph: at every tree node the infinite line cuts ALL graph edges
/// and distances are full-graph, which makes both heuristic branches
/// unconditional lower bounds (any path crossing the line contains the
/// larger endpoint of a crossing edge). This is the default and the only
/// mode with an admissibility guarantee.
///
/// subgraph: the literal recursive formulation — cuts and distances are
/// restricted to the node's scope. Kept for comparison; deep separators
/// are then not full-graph separators and the heuristic may overshoot.
enum class CostScope : std::uint8_t { full_graph = 0, subgraph = 1 };

inline const char* cost_scope_name(CostScope s) {
  return s == CostScope::full_graph ? "full-graph" : "subgraph";
}

/// One axis's separator-tree labelling: a k-bit side code, a k-vector of
/// costs (seconds, +inf where the level's separator was empty), and the
/// number of levels actually populated.
///
/// Bit i-1 of code is the side of the level-i line: 0 for coord <= split,
/// 1 for coord > split. Levels are 1-based throughout.
struct AxisLabels {
  Axis axis = Axis::x;
  int k = 0;
  std::vector<std::uint32_t> codes;
  std::vector<std::uint8_t> valid_depths;
  std::vector<double> costs;  // vertex-major, n * k

  std::size_t vertex_count() const { return codes.size(); }
  bool bit(VertexId v, int level) const {
    return (codes[v] >> (level - 1)) & 1u;
  }
  double cost(VertexId v, int level) const {
    return costs[static_cast<std::size_t>(v) * k + (level - 1)];
  }
  int valid_depth(VertexId v) const { return valid_depths[v]; }

  bool operator==(const AxisLabels&) const = default;
};

struct AxisBuildStats {
  std::uint64_t nodes_visited = 0;  // tree nodes with nonempty scope
  std::uint64_t nonempty_separator_nodes = 0;
  std::uint64_t dijkstra_invocations = 0;
  std::vector<std::uint64_t> level_separator_vertices;  // size k
};

struct LshBuildStats {
  AxisBuildStats x;
  AxisBuildStats y;
};

struct LshBuildOptions {
  CostScope cost_scope = CostScope::full_graph;
  int threads = 1;  // tree nodes of one level build concurrently
};

inline constexpr int kMaxTreeDepth = 24;  // bounds code storage

/// Separator-tree preprocessing for one axis: midpoint subdivision of the
/// coordinate extent, one line-cut separator per tree node, one
/// multi-source Dijkstra per nonempty separator. Deterministic for fixed
/// inputs regardless of thread count.
AxisLabels build_axis_labels(const RoadGraph& g, Axis axis, int k,
                             const LshBuildOptions& options = {},
                             AxisBuildStats* stats = nullptr);

/// The stored preprocessing artifact: x and y separator trees of equal
/// depth plus the graph fingerprint they were built from.
class LshIndex {
 public:
  LshIndex() = default;
  LshIndex(AxisLabels x, AxisLabels y, BoundingBox box, GraphFingerprint fp,
           CostScope scope);

  int depth() const { return x_.k; }
  std::size_t vertex_count() const { return x_.vertex_count(); }
  const AxisLabels& labels(Axis a) const { return a == Axis::x ? x_ : y_; }
  const BoundingBox& box() const { return box_; }
  const GraphFingerprint& fingerprint() const { return fingerprint_; }
  CostScope cost_scope() const { return cost_scope_; }

  /// Local separator heuristic using the top d levels of both trees:
  /// per axis, levels contribute |cost_s - cost_t| while the code bits
  /// agree; the first differing bit contributes cost_s + cost_t and ends
  /// that axis's scan. Infinite costs are skipped (a differing bit with an
  /// infinite cost contributes 0 and still ends the scan). Returns the max
  /// over both axes; always >= 0 and 0 for s == t.
  double evaluate(VertexId s, VertexId t, int d) const;

  /// Throws stale_index_error if the graph does not match the fingerprint
  /// recorded at build time.
  void ensure_matches(const RoadGraph& g) const;

  bool operator==(const LshIndex&) const = default;

 private:
  AxisLabels x_;
  AxisLabels y_;
  BoundingBox box_;
  GraphFingerprint fingerprint_;
  CostScope cost_scope_ = CostScope::full_graph;
};

LshIndex build_lsh_index(const RoadGraph& g, int k,
                         const LshBuildOptions& options = {},
                         LshBuildStats* stats = nullptr);

/// Fingerprint-checked evaluation.
double lsh_evaluate(const LshIndex& index, const RoadGraph& g, VertexId s,
                    VertexId t, int d);

/// How the heuristic value for one pair came about.
struct SeparationInfo {
  double value = 0.0;
  /// Some axis scan hit a differing bit with both costs finite.
  bool separated = false;
  /// Axis and level (1-based) of the first separation; lowest level wins,
  /// X on ties. Meaningful only when separated.
  Axis first_axis = Axis::x;
  int first_level = 0;
  /// The final max is attained by a separation (sum-branch) contribution;
  /// ties count as determined. Implies separated.
  bool determined = false;
  /// Levels examined per axis (including skipped infinite-cost levels).
  int levels_scanned_x = 0;
  int levels_scanned_y = 0;
};

SeparationInfo separation_diagnostics(const LshIndex& index, VertexId s,
                                      VertexId t, int d);

}  // namespace septree
