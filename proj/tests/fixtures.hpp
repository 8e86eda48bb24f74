// Shared, lazily built test fixtures. Building the larger graphs and
// indexes once keeps the unit suite fast.
#pragma once

#include "septree/graph.hpp"
#include "septree/lsh.hpp"

namespace septree::testfx {

/// ~10k-vertex jittered grid, connected, deterministic.
inline const RoadGraph& grid100() {
  static const RoadGraph g = [] {
    SyntheticParams p;
    p.rows = 100;
    p.cols = 100;
    p.cell_size = 100.0;
    p.drop_prob = 0.05;
    p.seed = 20240601;
    return generate_synthetic(p);
  }();
  return g;
}

inline LshBuildStats& grid100_lsh9_stats() {
  static LshBuildStats stats;
  return stats;
}

/// Depth-9 LSH index over grid100, full-graph mode, with build stats
/// captured in grid100_lsh9_stats().
inline const LshIndex& grid100_lsh9() {
  static const LshIndex index = [] {
    LshBuildOptions options;
    options.threads = 4;
    return build_lsh_index(grid100(), 9, options, &grid100_lsh9_stats());
  }();
  return index;
}

/// Small connected graph (~280 vertices) for exhaustive all-pairs checks.
inline RoadGraph small_graph(std::uint64_t seed, double drop_prob = 0.1) {
  SyntheticParams p;
  p.rows = 17;
  p.cols = 17;
  p.cell_size = 100.0;
  p.drop_prob = drop_prob;
  p.seed = seed;
  return generate_synthetic(p);
}

}  // namespace septree::testfx
