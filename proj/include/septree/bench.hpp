#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "septree/graph.hpp"
#include "septree/gsh.hpp"
#include "septree/lsh.hpp"

namespace septree {

/// Euclidean distance bin in meters, 0 <= lo < hi.
struct DistanceBin {
  double lo = 0.0;
  double hi = 0.0;
};

struct SampledPairs {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  std::uint64_t draws = 0;   // random draws spent
  bool truncated = false;    // retry budget exhausted before count reached
};

/// Annulus pair sampling: s is drawn uniformly in the bounding box and
/// snapped to the nearest vertex within min(500 m, lo/2); t is drawn
/// uniformly by area in the annulus [lo, hi] around s and snapped the same
/// way, with the vertex distance re-verified afterwards. Deterministic for
/// a fixed seed. Gives up after 1000 * count draws and returns fewer pairs
/// with truncated = true. Throws validation_error when the bin cannot fit
/// inside the map (lo >= bounding-box diagonal).
SampledPairs sample_pairs(const RoadGraph& g, const DistanceBin& bin,
                          std::size_t count, std::uint64_t seed);

using PairList = std::vector<std::pair<VertexId, VertexId>>;
using HeuristicEvaluator = std::function<double(VertexId s, VertexId t)>;

/// Per-pair metric plus its mean. Pairs that are unreachable or have zero
/// true cost are excluded from the mean and counted; their per_pair slot
/// holds NaN.
struct MetricReport {
  double mean = 0.0;
  std::vector<double> per_pair;
  std::size_t excluded = 0;
};

/// qual(s,t) = h(s,t) / c(s,t) with the true cost taken from Dijkstra.
MetricReport quality(const RoadGraph& g, const HeuristicEvaluator& h,
                     std::span<const std::pair<VertexId, VertexId>> pairs,
                     int threads = 1);

/// eff(s,t) = fastest-path vertex count / A*-settled vertex count, with A*
/// guided by h (must be admissible).
MetricReport efficiency(const RoadGraph& g, const HeuristicEvaluator& h,
                        std::span<const std::pair<VertexId, VertexId>> pairs,
                        int threads = 1);

struct SeparationCurves {
  std::vector<int> depths;
  std::vector<double> p_separated;
  std::vector<double> p_determined;
};

/// Fraction of pairs separated / separator-determined at each depth.
/// p_separated is nondecreasing in depth on a fixed pair set.
SeparationCurves separation_report(
    const LshIndex& index, const RoadGraph& g,
    std::span<const std::pair<VertexId, VertexId>> pairs,
    std::span<const int> depths);

struct BenchConfig {
  std::vector<DistanceBin> bins;
  std::vector<int> depths;  // LSH depths; GSH uses k = depth (2k separators)
  bool run_lsh = true;
  bool run_gsh = true;
  bool run_dijkstra = false;
  std::size_t pairs_per_bin = 3000;
  std::uint64_t seed = 0;
  CostScope cost_scope = CostScope::full_graph;
  int threads = 1;
  bool collect_raw = false;
};

struct BenchRow {
  DistanceBin bin;
  std::string heuristic;  // "dijkstra", "gsh", "lsh"
  int depth = 0;          // 0 for dijkstra
  std::size_t pairs = 0;  // pairs contributing to the means
  double mean_qual = 0.0;
  double mean_eff = 0.0;
  double p_separated = 0.0;
  double p_determined = 0.0;
  std::size_t dropped = 0;
};

struct RawPairRecord {
  VertexId s = 0;
  VertexId t = 0;
  double truth = 0.0;
  double h = 0.0;
  double qual = 0.0;
  double eff = 0.0;
  std::uint64_t settled = 0;
  std::uint64_t path_vertices = 0;
  bool separated = false;
  bool determined = false;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  /// Parallel to rows; filled only when BenchConfig::collect_raw.
  std::vector<std::vector<RawPairRecord>> raw;
  std::vector<std::string> warnings;
};

/// Runs the full experiment grid. Pairs are sampled once per bin and
/// reused across every heuristic and depth, so LSH means are monotone in
/// depth row-to-row. The true cost denominator is computed once per pair
/// as dijkstra_all(g, s)[t]. Pure function of (graph, config).
BenchReport run_benchmark(const RoadGraph& g, const BenchConfig& config);

/// CSV schema:
/// bin_lo_m,bin_hi_m,heuristic,depth,pairs,mean_qual,mean_eff,p_separated,p_determined,dropped_pairs
void write_report_csv(const BenchReport& report, std::ostream& sink);

/// Full report including raw per-pair rows when collected.
void write_report_json(const BenchReport& report, std::ostream& sink);

/// Standard bins (1-5, 5-10, 10-20, 20-50, 50-100 km) truncated to the
/// given map diagonal.
std::vector<DistanceBin> default_bins(double diagonal_meters);

}  // namespace septree
