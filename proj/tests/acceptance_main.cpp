// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any fails. Heavier setups (the 100x100 and 200x200 grids) are shared
// between criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "septree/bench.hpp"
#include "septree/dimacs.hpp"
#include "septree/graph.hpp"
#include "septree/gsh.hpp"
#include "septree/index_io.hpp"
#include "septree/lsh.hpp"
#include "septree/parallel.hpp"
#include "septree/search.hpp"

using namespace septree;

namespace {

int g_failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int criterion, bool pass, const std::string& what,
            const std::string& details, double seconds) {
  std::printf("[%s] criterion %d: %s — %s (%.1f s)\n", pass ? "PASS" : "FAIL",
              criterion, what.c_str(), details.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

RoadGraph make_grid(std::size_t rows, std::size_t cols, double drop,
                    std::uint64_t seed,
                    std::vector<double> speeds = {8.33, 13.89, 25.0}) {
  SyntheticParams p;
  p.rows = rows;
  p.cols = cols;
  p.cell_size = 100.0;
  p.speed_classes = std::move(speeds);
  p.drop_prob = drop;
  p.seed = seed;
  return generate_synthetic(p);
}

int worker_threads() { return resolve_thread_count(0); }

// Shared 100x100 setup for criteria 2, 3, 6.
struct Grid100Setup {
  RoadGraph g;
  LshIndex lsh;                        // k = 9
  std::vector<DistanceBin> bins;       // 4 bins, 125 pairs each
  std::vector<PairList> bin_pairs;     // per bin
  PairList all_pairs;                  // concatenated, 500 pairs
  std::vector<double> truths;          // dijkstra_all(g, s)[t] per pair
};

Grid100Setup build_grid100_setup() {
  Grid100Setup setup;
  setup.g = make_grid(100, 100, 0.05, 424242);
  LshBuildOptions options;
  options.threads = worker_threads();
  setup.lsh = build_lsh_index(setup.g, 9, options);
  setup.bins = {{200.0, 500.0},
                {500.0, 1000.0},
                {1000.0, 2000.0},
                {2000.0, 5000.0}};
  for (std::size_t b = 0; b < setup.bins.size(); ++b) {
    const SampledPairs sampled =
        sample_pairs(setup.g, setup.bins[b], 125, 1000 + b);
    setup.bin_pairs.push_back(sampled.pairs);
    setup.all_pairs.insert(setup.all_pairs.end(), sampled.pairs.begin(),
                           sampled.pairs.end());
  }
  setup.truths.assign(setup.all_pairs.size(), 0.0);
  parallel_for(setup.all_pairs.size(), worker_threads(), [&](std::size_t i) {
    setup.truths[i] =
        dijkstra_all(setup.g, setup.all_pairs[i].first)[setup.all_pairs[i]
                                                            .second];
  });
  return setup;
}

// Shared 200x200 setup for criteria 4, 5, 9.
struct Grid200Setup {
  RoadGraph g;
  LshIndex lsh;  // k = 7
  GshIndex gsh;  // k = 7 -> 14 separators, equal storage
  LshBuildStats lsh_stats;
  PairList pairs;  // shortest bin [200, 500] m
  double build_seconds = 0.0;
};

Grid200Setup build_grid200_setup() {
  Grid200Setup setup;
  // Road-like metric: slow residential streets with occasional highway
  // edges. The wide speed spread and maze-like drop rate make short trips
  // expensive relative to separator distances, the regime where the
  // hierarchical separators pay off.
  setup.g = make_grid(200, 200, 0.29, 777777, {1.5, 30.0});
  Timer t;
  LshBuildOptions options;
  options.threads = worker_threads();
  setup.lsh = build_lsh_index(setup.g, 7, options, &setup.lsh_stats);
  GshBuildOptions gsh_options;
  gsh_options.threads = worker_threads();
  setup.gsh = build_gsh_index(setup.g, 7, gsh_options);
  setup.build_seconds = t.seconds();
  const SampledPairs sampled =
      sample_pairs(setup.g, {200.0, 500.0}, 600, 31337);
  setup.pairs = sampled.pairs;
  return setup;
}

// --- criterion 1 --------------------------------------------------------

void criterion_1_admissibility() {
  Timer timer;
  const double drops[] = {0.0, 0.1, 0.2};
  const int k = 6;
  std::uint64_t checks = 0;
  std::size_t violations = 0;
  double worst_ratio = 0.0;
  for (int gi = 0; gi < 20; ++gi) {
    const RoadGraph g = make_grid(17, 17, drops[gi % 3], 9000 + gi);
    const LshIndex lsh = build_lsh_index(g, k);
    const GshIndex gsh = build_gsh_index(g, k);
    const auto n = static_cast<VertexId>(g.vertex_count());
    std::vector<std::vector<double>> all(n);
    parallel_for(n, worker_threads(),
                 [&](std::size_t s) { all[s] = dijkstra_all(g, (VertexId)s); });
    for (VertexId s = 0; s < n; ++s) {
      for (VertexId t = 0; t < n; ++t) {
        const double truth = all[s][t];
        const double bound = truth * (1.0 + 1e-9);
        for (int d = 1; d <= k; ++d) {
          const double h = lsh.evaluate(s, t, d);
          if (h > bound) ++violations;
          if (truth > 0.0) worst_ratio = std::max(worst_ratio, h / truth);
          ++checks;
        }
        if (gsh.evaluate(s, t) > bound) ++violations;
        ++checks;
      }
    }
  }
  const double elapsed = timer.seconds();
  std::ostringstream details;
  details << "20 graphs, " << checks << " pair-depth checks, " << violations
          << " violations, worst LSH ratio " << worst_ratio;
  report(1, violations == 0 && elapsed < 60.0,
         "admissibility vs all-pairs Dijkstra (tolerance 1e-9)",
         details.str(), elapsed);
}

// --- criteria 2, 3, 6 ---------------------------------------------------

void criterion_2_optimality(const Grid100Setup& setup) {
  Timer timer;
  std::size_t mismatches = 0;
  std::vector<std::uint8_t> ok(setup.all_pairs.size(), 0);
  parallel_for(setup.all_pairs.size(), worker_threads(), [&](std::size_t i) {
    const auto [s, t] = setup.all_pairs[i];
    const PathResult r = astar(setup.g, s, t, [&](VertexId v) {
      return setup.lsh.evaluate(v, t, 9);
    });
    ok[i] = r.found && r.cost == setup.truths[i];  // bitwise
  });
  for (std::size_t i = 0; i < ok.size(); ++i)
    if (!ok[i]) ++mismatches;
  const double elapsed = timer.seconds();
  std::ostringstream details;
  details << setup.all_pairs.size() << " pairs, k=9 d=9, " << mismatches
          << " cost mismatches";
  report(2, mismatches == 0 && elapsed < 60.0,
         "A* with LSH returns bitwise Dijkstra costs", details.str(),
         elapsed);
}

void criterion_3_monotonicity(const Grid100Setup& setup) {
  Timer timer;
  const int k = 9;
  std::size_t pair_violations = 0;
  for (const auto& [s, t] : setup.all_pairs) {
    double prev = 0.0;
    for (int d = 1; d <= k; ++d) {
      const double h = setup.lsh.evaluate(s, t, d);
      if (h < prev) ++pair_violations;
      prev = h;
    }
  }

  std::size_t mean_violations = 0;
  std::size_t offset = 0;
  for (std::size_t b = 0; b < setup.bin_pairs.size(); ++b) {
    const PairList& pairs = setup.bin_pairs[b];
    double prev_mean = 0.0;
    for (int d = 1; d <= k; ++d) {
      double sum = 0.0;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [s, t] = pairs[i];
        sum += setup.lsh.evaluate(s, t, d) / setup.truths[offset + i];
      }
      const double mean = sum / static_cast<double>(pairs.size());
      if (mean < prev_mean) ++mean_violations;
      prev_mean = mean;
    }
    offset += pairs.size();
  }
  std::ostringstream details;
  details << setup.all_pairs.size() << " pairs x depths 1..9, "
          << pair_violations << " per-pair violations, " << mean_violations
          << " per-bin mean violations (exact comparison)";
  report(3, pair_violations == 0 && mean_violations == 0,
         "LSH value and mean quality nondecreasing in depth", details.str(),
         timer.seconds());
}

void criterion_6_degenerate_anchors(const Grid100Setup& setup) {
  Timer timer;
  const auto zero = [](VertexId, VertexId) { return 0.0; };
  const MetricReport zero_q = quality(setup.g, zero, setup.all_pairs,
                                      worker_threads());

  const auto exact = [&](VertexId s, VertexId t) {
    return dijkstra_all(setup.g, s)[t];
  };
  const MetricReport exact_q = quality(setup.g, exact, setup.all_pairs, 1);

  // Exact-heuristic efficiency via a per-target distance table.
  struct ExactToTarget {
    const RoadGraph& g;
    VertexId cached_t = kInvalidVertex;
    std::vector<double> table;
    double operator()(VertexId v, VertexId t) {
      if (t != cached_t) {
        table = dijkstra_all(g, t);
        cached_t = t;
      }
      return table[v];
    }
  };
  ExactToTarget exact_table{setup.g, kInvalidVertex, {}};
  const MetricReport exact_eff = efficiency(
      setup.g,
      [&exact_table](VertexId v, VertexId t) { return exact_table(v, t); },
      setup.all_pairs, /*threads=*/1);

  const bool pass = zero_q.mean == 0.0 && exact_q.mean == 1.0 &&
                    exact_eff.mean <= 1.0 && exact_eff.mean >= 0.30;
  std::ostringstream details;
  details << "zero-h mean quality " << zero_q.mean << ", exact-h mean quality "
          << exact_q.mean << ", exact-h mean efficiency " << exact_eff.mean
          << " (needs = 0, = 1, >= 0.30)";
  report(6, pass, "degenerate-heuristic anchors", details.str(),
         timer.seconds());
}

// --- criteria 4, 5, 9 ---------------------------------------------------

void criterion_4_lsh_beats_gsh(const Grid200Setup& setup) {
  Timer timer;
  const int d = 7;
  const auto lsh_eval = [&](VertexId s, VertexId t) {
    return setup.lsh.evaluate(s, t, d);
  };
  const auto gsh_eval = [&](VertexId s, VertexId t) {
    return setup.gsh.evaluate(s, t);
  };
  const int threads = worker_threads();
  const MetricReport lsh_q = quality(setup.g, lsh_eval, setup.pairs, threads);
  const MetricReport gsh_q = quality(setup.g, gsh_eval, setup.pairs, threads);
  const MetricReport lsh_e =
      efficiency(setup.g, lsh_eval, setup.pairs, threads);
  const MetricReport gsh_e =
      efficiency(setup.g, gsh_eval, setup.pairs, threads);

  const double elapsed = timer.seconds() + setup.build_seconds;
  const bool pass = setup.pairs.size() >= 500 &&
                    lsh_q.mean >= gsh_q.mean + 0.05 &&
                    lsh_e.mean > gsh_e.mean && elapsed < 600.0;
  std::ostringstream details;
  details << setup.pairs.size() << " pairs in [200,500] m, k=7 equal storage: "
          << "quality lsh " << lsh_q.mean << " vs gsh " << gsh_q.mean
          << " (gap needs >= 0.05), efficiency lsh " << lsh_e.mean
          << " vs gsh " << gsh_e.mean;
  report(4, pass, "LSH beats GSH at short range", details.str(), elapsed);
}

void criterion_5_separation_saturation(const Grid200Setup& setup) {
  Timer timer;
  std::vector<int> depths;
  for (int d = 1; d <= 7; ++d) depths.push_back(d);
  const SeparationCurves curves =
      separation_report(setup.lsh, setup.g, setup.pairs, depths);
  bool monotone = true;
  for (std::size_t i = 1; i < curves.p_separated.size(); ++i)
    if (curves.p_separated[i] < curves.p_separated[i - 1]) monotone = false;
  const double p7 = curves.p_separated.back();
  std::ostringstream details;
  details << "p_separated(d=7) = " << p7 << " (needs >= 0.95), curve";
  for (double p : curves.p_separated) details << " " << p;
  report(5, p7 >= 0.95 && monotone,
         "separation probability saturates with depth", details.str(),
         timer.seconds());
}

void criterion_9_preprocessing_work(const Grid200Setup& setup) {
  Timer timer;
  bool pass = true;
  std::ostringstream details;
  for (const auto& [name, axis] : {std::pair{"x", &setup.lsh_stats.x},
                                   std::pair{"y", &setup.lsh_stats.y}}) {
    if (axis->dijkstra_invocations != axis->nonempty_separator_nodes)
      pass = false;
    if (axis->nodes_visited > (1u << 8) - 2) pass = false;
    details << name << ": nodes=" << axis->nodes_visited
            << " nonempty=" << axis->nonempty_separator_nodes
            << " dijkstras=" << axis->dijkstra_invocations << "  ";
  }
  details << "(needs dijkstras == nonempty nodes, nodes <= 254 per axis)";
  report(9, pass, "one multi-source Dijkstra per nonempty separator node",
         details.str(), timer.seconds());
}

// --- criterion 7 --------------------------------------------------------

void criterion_7_level1_equivalence() {
  Timer timer;
  const RoadGraph g = make_grid(17, 17, 0.1, 5150);
  const LshIndex lsh = build_lsh_index(g, 3);
  const GshIndex gsh = build_gsh_index(g, 1);
  const auto n = static_cast<VertexId>(g.vertex_count());
  std::size_t mismatches = 0;
  for (VertexId s = 0; s < n; ++s)
    for (VertexId t = 0; t < n; ++t)
      if (lsh.evaluate(s, t, 1) != gsh.evaluate(s, t)) ++mismatches;
  std::ostringstream details;
  details << n << " vertices, all " << static_cast<std::size_t>(n) * n
          << " pairs, " << mismatches << " mismatches (exact comparison)";
  report(7, mismatches == 0, "LSH level 1 equals GSH k=1", details.str(),
         timer.seconds());
}

// --- criterion 8 --------------------------------------------------------

void criterion_8_round_trip() {
  Timer timer;
  std::mt19937_64 rng(88);
  std::size_t structural_failures = 0;
  std::size_t fuzz_survivors = 0;
  std::size_t fuzz_total = 0;
  for (int i = 0; i < 10; ++i) {
    const RoadGraph g = make_grid(10 + i, 12, (i % 3) * 0.1, 8800 + i);
    const int k = 1 + (i % 5);
    std::string bytes;
    bool equal = false;
    if (i % 2 == 0) {
      const LshIndex index = build_lsh_index(g, k);
      std::ostringstream out(std::ios::binary);
      save_index(index, out);
      bytes = out.str();
      std::ostringstream out2(std::ios::binary);
      save_index(index, out2);
      if (out2.str() != bytes) ++structural_failures;
      std::istringstream in(bytes, std::ios::binary);
      equal = load_lsh_index(in) == index;
    } else {
      const GshIndex index = build_gsh_index(g, k);
      std::ostringstream out(std::ios::binary);
      save_index(index, out);
      bytes = out.str();
      std::ostringstream out2(std::ios::binary);
      save_index(index, out2);
      if (out2.str() != bytes) ++structural_failures;
      std::istringstream in(bytes, std::ios::binary);
      equal = load_gsh_index(in) == index;
    }
    if (!equal) ++structural_failures;

    for (int m = 0; m < 10; ++m) {
      ++fuzz_total;
      std::string mutated = bytes;
      const std::size_t pos = rng() % mutated.size();
      mutated[pos] =
          static_cast<char>(mutated[pos] ^ static_cast<char>(1 + rng() % 255));
      std::istringstream in(mutated, std::ios::binary);
      try {
        (void)load_index(in);
        ++fuzz_survivors;  // a corrupted file must never load
      } catch (const format_error&) {
      }
    }
  }
  std::ostringstream details;
  details << "10 indexes byte-stable and structurally equal ("
          << structural_failures << " failures), " << fuzz_total
          << " corrupted loads, " << fuzz_survivors << " accepted";
  report(8, structural_failures == 0 && fuzz_survivors == 0,
         "index round-trip and corruption fuzz", details.str(),
         timer.seconds());
}

}  // namespace

int main() {
  std::printf("septree acceptance suite (threads: %d)\n", worker_threads());

  criterion_1_admissibility();

  const Grid100Setup grid100 = build_grid100_setup();
  criterion_2_optimality(grid100);
  criterion_3_monotonicity(grid100);

  const Grid200Setup grid200 = build_grid200_setup();
  criterion_4_lsh_beats_gsh(grid200);
  criterion_5_separation_saturation(grid200);
  criterion_6_degenerate_anchors(grid100);
  criterion_7_level1_equivalence();
  criterion_8_round_trip();
  criterion_9_preprocessing_work(grid200);

  if (g_failures == 0) {
    std::printf("all 9 criteria passed\n");
  } else {
    std::printf("%d criteria FAILED\n", g_failures);
  }
  return g_failures;
}
