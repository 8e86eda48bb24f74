#pragma once

#include <cstdint>
#include <vector>

#include "septree/graph.hpp"
#include "septree/separator.hpp"

namespace septree {

struct GshBuildOptions {
  int threads = 1;
};

struct GshBuildStats {
  /// Separator vertex counts, x lines then y lines.
  std::vector<std::size_t> separator_sizes;
};

/// Flat baseline: k equally-spaced vertical and k horizontal line-cut
/// separators over the whole graph, with c(v, S) stored per vertex and
/// separator. A vertex exactly on a line counts as the <= side, matching
/// the cut rule; an empty separator stores +inf and is skipped at
/// evaluation time.
class GshIndex {
 public:
  GshIndex() = default;
  GshIndex(int k, BoundingBox box, GraphFingerprint fp,
           std::vector<double> line_positions,  // 2k: x asc, then y asc
           std::vector<std::uint32_t> x_codes,
           std::vector<std::uint32_t> y_codes, std::vector<double> x_costs,
           std::vector<double> y_costs);

  int separators_per_axis() const { return k_; }
  std::size_t separator_count() const {
    return 2 * static_cast<std::size_t>(k_);
  }
  std::size_t vertex_count() const { return x_codes_.size(); }
  const std::vector<double>& line_positions() const { return line_positions_; }
  const BoundingBox& box() const { return box_; }
  const GraphFingerprint& fingerprint() const { return fingerprint_; }

  const std::vector<std::uint32_t>& codes(Axis a) const {
    return a == Axis::x ? x_codes_ : y_codes_;
  }
  const std::vector<double>& costs(Axis a) const {
    return a == Axis::x ? x_costs_ : y_costs_;
  }
  /// Cost to the j-th (1-based) separator of an axis.
  double cost(Axis a, VertexId v, int j) const {
    return costs(a)[static_cast<std::size_t>(v) * k_ + (j - 1)];
  }
  bool side(Axis a, VertexId v, int j) const {
    return (codes(a)[v] >> (j - 1)) & 1u;
  }

  /// Max over all 2k separators of the separator heuristic: cost_s +
  /// cost_t when the pair is on strictly opposite sides of the line,
  /// |cost_s - cost_t| otherwise; infinite-cost separators are skipped.
  double evaluate(VertexId s, VertexId t) const;

  void ensure_matches(const RoadGraph& g) const;

  bool operator==(const GshIndex&) const = default;

 private:
  int k_ = 0;
  BoundingBox box_;
  GraphFingerprint fingerprint_;
  std::vector<double> line_positions_;
  std::vector<std::uint32_t> x_codes_;
  std::vector<std::uint32_t> y_codes_;
  std::vector<double> x_costs_;  // vertex-major, n * k
  std::vector<double> y_costs_;
};

GshIndex build_gsh_index(const RoadGraph& g, int k,
                         const GshBuildOptions& options = {},
                         GshBuildStats* stats = nullptr);

/// Fingerprint-checked evaluation.
double gsh_evaluate(const GshIndex& index, const RoadGraph& g, VertexId s,
                    VertexId t);

struct GshSeparationInfo {
  double value = 0.0;
  bool separated = false;   // some finite separator strictly separates
  bool determined = false;  // the max is a separation term (ties count)
};

GshSeparationInfo gsh_separation_diagnostics(const GshIndex& index, VertexId s,
                                             VertexId t);

}  // namespace septree
