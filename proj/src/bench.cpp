#include "septree/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include <json.hpp>

#include "septree/detail/rng.hpp"
#include "septree/parallel.hpp"
#include "septree/search.hpp"

namespace septree {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Uniform bucket grid over the vertex positions for nearest-vertex snaps.
class PointGrid {
 public:
  explicit PointGrid(const RoadGraph& g) : g_(g), box_(bounding_box(g)) {
    const std::size_t n = g.vertex_count();
    const auto target = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(n))));
    cells_x_ = std::clamp<std::size_t>(target, 1, 2048);
    cells_y_ = cells_x_;
    if (box_.width() <= 0.0) cells_x_ = 1;
    if (box_.height() <= 0.0) cells_y_ = 1;
    cell_w_ = cells_x_ > 1 ? box_.width() / static_cast<double>(cells_x_) : 0.0;
    cell_h_ =
        cells_y_ > 1 ? box_.height() / static_cast<double>(cells_y_) : 0.0;

    std::vector<std::size_t> counts(cells_x_ * cells_y_ + 1, 0);
    std::vector<std::size_t> cell_of(n);
    for (std::size_t v = 0; v < n; ++v) {
      cell_of[v] = cell_index(g.x(static_cast<VertexId>(v)),
                              g.y(static_cast<VertexId>(v)));
      ++counts[cell_of[v] + 1];
    }
    for (std::size_t c = 0; c < cells_x_ * cells_y_; ++c)
      counts[c + 1] += counts[c];
    offsets_ = counts;
    members_.resize(n);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t v = 0; v < n; ++v)
      members_[cursor[cell_of[v]]++] = static_cast<VertexId>(v);
  }

  /// Nearest vertex to (x, y); ties go to the smaller id.
  std::pair<VertexId, double> nearest(double x, double y) const {
    const std::size_t qx = clamp_cell_x(x);
    const std::size_t qy = clamp_cell_y(y);
    VertexId best = kInvalidVertex;
    double best_d2 = std::numeric_limits<double>::infinity();
    const double min_cell =
        std::min(cell_w_ > 0.0 ? cell_w_ : std::numeric_limits<double>::infinity(),
                 cell_h_ > 0.0 ? cell_h_ : std::numeric_limits<double>::infinity());
    const std::size_t max_ring = std::max(cells_x_, cells_y_);
    for (std::size_t ring = 0; ring <= max_ring; ++ring) {
      if (best != kInvalidVertex && ring >= 1) {
        const double safe = static_cast<double>(ring - 1) * min_cell;
        if (std::isfinite(safe) && best_d2 <= safe * safe) break;
      }
      scan_ring(qx, qy, ring, x, y, best, best_d2);
    }
    return {best, std::sqrt(best_d2)};
  }

 private:
  std::size_t clamp_cell_x(double x) const {
    if (cells_x_ <= 1 || cell_w_ <= 0.0) return 0;
    const double f = (x - box_.x_min) / cell_w_;
    if (f <= 0.0) return 0;
    const auto i = static_cast<std::size_t>(f);
    return std::min(i, cells_x_ - 1);
  }
  std::size_t clamp_cell_y(double y) const {
    if (cells_y_ <= 1 || cell_h_ <= 0.0) return 0;
    const double f = (y - box_.y_min) / cell_h_;
    if (f <= 0.0) return 0;
    const auto i = static_cast<std::size_t>(f);
    return std::min(i, cells_y_ - 1);
  }
  std::size_t cell_index(double x, double y) const {
    return clamp_cell_y(y) * cells_x_ + clamp_cell_x(x);
  }

  void scan_cell(std::size_t cx, std::size_t cy, double x, double y,
                 VertexId& best, double& best_d2) const {
    const std::size_t c = cy * cells_x_ + cx;
    for (std::size_t i = offsets_[c]; i < offsets_[c + 1]; ++i) {
      const VertexId v = members_[i];
      const double dx = g_.x(v) - x;
      const double dy = g_.y(v) - y;
      const double d2 = dx * dx + dy * dy;
      if (d2 < best_d2 || (d2 == best_d2 && v < best)) {
        best_d2 = d2;
        best = v;
      }
    }
  }

  void scan_ring(std::size_t qx, std::size_t qy, std::size_t ring, double x,
                 double y, VertexId& best, double& best_d2) const {
    const auto sx = static_cast<std::ptrdiff_t>(qx);
    const auto sy = static_cast<std::ptrdiff_t>(qy);
    const auto r = static_cast<std::ptrdiff_t>(ring);
    for (std::ptrdiff_t dy = -r; dy <= r; ++dy) {
      const std::ptrdiff_t cy = sy + dy;
      if (cy < 0 || cy >= static_cast<std::ptrdiff_t>(cells_y_)) continue;
      const bool edge_row = (dy == -r || dy == r);
      const std::ptrdiff_t step = edge_row ? 1 : 2 * r;
      for (std::ptrdiff_t dx = -r; dx <= r; dx += (step == 0 ? 1 : step)) {
        const std::ptrdiff_t cx = sx + dx;
        if (cx < 0 || cx >= static_cast<std::ptrdiff_t>(cells_x_)) continue;
        scan_cell(static_cast<std::size_t>(cx), static_cast<std::size_t>(cy),
                  x, y, best, best_d2);
        if (step == 0) break;
      }
    }
  }

  const RoadGraph& g_;
  BoundingBox box_;
  std::size_t cells_x_ = 1;
  std::size_t cells_y_ = 1;
  double cell_w_ = 0.0;
  double cell_h_ = 0.0;
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> members_;
};

}  // namespace

SampledPairs sample_pairs(const RoadGraph& g, const DistanceBin& bin,
                          std::size_t count, std::uint64_t seed) {
  if (count < 1) throw validation_error("pair count must be >= 1");
  if (!(bin.lo >= 0.0) || !(bin.hi > bin.lo))
    throw validation_error("distance bin must satisfy 0 <= lo < hi");
  if (g.vertex_count() == 0) throw validation_error("empty graph");
  const BoundingBox box = bounding_box(g);
  if (bin.lo >= box.diagonal())
    throw validation_error("bin lies outside the map: lo exceeds the diagonal");

  const double snap_radius = std::min(500.0, bin.lo / 2.0);
  const PointGrid grid(g);
  std::mt19937_64 rng(seed);

  SampledPairs result;
  result.pairs.reserve(count);
  const std::uint64_t budget = 1000 * static_cast<std::uint64_t>(count);
  while (result.pairs.size() < count && result.draws < budget) {
    ++result.draws;
    const double sx = detail::uniform(rng, box.x_min, box.x_max);
    const double sy = detail::uniform(rng, box.y_min, box.y_max);
    const auto [sv, s_snap] = grid.nearest(sx, sy);
    if (!(s_snap <= snap_radius)) continue;

    const double radius =
        std::sqrt(bin.lo * bin.lo +
                  detail::u01(rng) * (bin.hi * bin.hi - bin.lo * bin.lo));
    const double angle = 2.0 * std::numbers::pi * detail::u01(rng);
    const double tx = g.x(sv) + radius * std::cos(angle);
    const double ty = g.y(sv) + radius * std::sin(angle);
    const auto [tv, t_snap] = grid.nearest(tx, ty);
    if (!(t_snap <= snap_radius)) continue;
    if (tv == sv) continue;
    const double d = euclidean_distance(g, sv, tv);
    if (d < bin.lo || d > bin.hi) continue;
    result.pairs.emplace_back(sv, tv);
  }
  result.truncated = result.pairs.size() < count;
  return result;
}

namespace {

std::vector<double> compute_truths(
    const RoadGraph& g, std::span<const std::pair<VertexId, VertexId>> pairs,
    int threads) {
  std::vector<double> truth(pairs.size(), kInfiniteCost);
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    truth[i] = dijkstra_all(g, pairs[i].first)[pairs[i].second];
  });
  return truth;
}

double mean_of(const std::vector<double>& values) {
  double sum = 0.0;
  std::size_t used = 0;
  for (double v : values) {
    if (!std::isnan(v)) {
      sum += v;
      ++used;
    }
  }
  return used ? sum / static_cast<double>(used) : 0.0;
}

bool usable_truth(double truth) {
  return std::isfinite(truth) && truth > 0.0;
}

}  // namespace

MetricReport quality(const RoadGraph& g, const HeuristicEvaluator& h,
                     std::span<const std::pair<VertexId, VertexId>> pairs,
                     int threads) {
  MetricReport report;
  report.per_pair.assign(pairs.size(), kNan);
  const std::vector<double> truth = compute_truths(g, pairs, threads);
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    if (!usable_truth(truth[i])) return;
    report.per_pair[i] = h(pairs[i].first, pairs[i].second) / truth[i];
  });
  for (double v : report.per_pair)
    if (std::isnan(v)) ++report.excluded;
  report.mean = mean_of(report.per_pair);
  return report;
}

MetricReport efficiency(const RoadGraph& g, const HeuristicEvaluator& h,
                        std::span<const std::pair<VertexId, VertexId>> pairs,
                        int threads) {
  MetricReport report;
  report.per_pair.assign(pairs.size(), kNan);
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    const auto [s, t] = pairs[i];
    if (s == t) return;
    const PathResult r =
        astar(g, s, t, [&](VertexId v) { return h(v, t); });
    if (!r.found) return;
    report.per_pair[i] = static_cast<double>(r.stats.path_vertex_count) /
                         static_cast<double>(r.stats.settled_count);
  });
  for (double v : report.per_pair)
    if (std::isnan(v)) ++report.excluded;
  report.mean = mean_of(report.per_pair);
  return report;
}

SeparationCurves separation_report(
    const LshIndex& index, const RoadGraph& g,
    std::span<const std::pair<VertexId, VertexId>> pairs,
    std::span<const int> depths) {
  index.ensure_matches(g);
  SeparationCurves curves;
  for (int d : depths) {
    std::size_t separated = 0, determined = 0;
    for (const auto& [s, t] : pairs) {
      const SeparationInfo info = separation_diagnostics(index, s, t, d);
      separated += info.separated;
      determined += info.determined;
    }
    const double denom = pairs.empty() ? 1.0 : static_cast<double>(pairs.size());
    curves.depths.push_back(d);
    curves.p_separated.push_back(static_cast<double>(separated) / denom);
    curves.p_determined.push_back(static_cast<double>(determined) / denom);
  }
  return curves;
}

namespace {

struct RowInputs {
  const RoadGraph& g;
  const PairList& pairs;
  const std::vector<double>& truth;
  int threads;
  bool collect_raw;
};

// Evaluates one (bin, heuristic, depth) row over a fixed pair set.
// diag may be null (dijkstra rows have no separation notion).
BenchRow evaluate_row(
    const RowInputs& in, const DistanceBin& bin, const std::string& name,
    int depth, const HeuristicEvaluator& h,
    const std::function<std::pair<bool, bool>(VertexId, VertexId)>& diag,
    std::vector<RawPairRecord>* raw_out) {
  const std::size_t n_pairs = in.pairs.size();
  std::vector<RawPairRecord> records(n_pairs);
  std::vector<std::uint8_t> used(n_pairs, 0);

  parallel_for(n_pairs, in.threads, [&](std::size_t i) {
    const auto [s, t] = in.pairs[i];
    if (!usable_truth(in.truth[i])) return;
    RawPairRecord& rec = records[i];
    rec.s = s;
    rec.t = t;
    rec.truth = in.truth[i];
    rec.h = h(s, t);
    rec.qual = rec.h / rec.truth;
    const PathResult r =
        astar(in.g, s, t, [&](VertexId v) { return h(v, t); });
    rec.settled = r.stats.settled_count;
    rec.path_vertices = r.stats.path_vertex_count;
    rec.eff = static_cast<double>(rec.path_vertices) /
              static_cast<double>(rec.settled);
    if (diag) {
      const auto [sep, det] = diag(s, t);
      rec.separated = sep;
      rec.determined = det;
    }
    used[i] = 1;
  });

  BenchRow row;
  row.bin = bin;
  row.heuristic = name;
  row.depth = depth;
  double qual_sum = 0.0, eff_sum = 0.0;
  std::size_t n_sep = 0, n_det = 0;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    if (!used[i]) {
      ++row.dropped;
      continue;
    }
    ++row.pairs;
    qual_sum += records[i].qual;
    eff_sum += records[i].eff;
    n_sep += records[i].separated;
    n_det += records[i].determined;
  }
  if (row.pairs > 0) {
    const auto denom = static_cast<double>(row.pairs);
    row.mean_qual = qual_sum / denom;
    row.mean_eff = eff_sum / denom;
    row.p_separated = static_cast<double>(n_sep) / denom;
    row.p_determined = static_cast<double>(n_det) / denom;
  }
  if (raw_out) {
    raw_out->clear();
    for (std::size_t i = 0; i < n_pairs; ++i)
      if (used[i]) raw_out->push_back(records[i]);
  }
  return row;
}

}  // namespace

BenchReport run_benchmark(const RoadGraph& g, const BenchConfig& config) {
  if (config.bins.empty()) throw validation_error("benchmark needs bins");
  if ((config.run_lsh || config.run_gsh) && config.depths.empty())
    throw validation_error("benchmark needs depths for lsh/gsh");
  if (config.pairs_per_bin < 1)
    throw validation_error("pairs_per_bin must be >= 1");
  for (int d : config.depths) {
    if (d < 1 || d > kMaxTreeDepth)
      throw validation_error("depth out of range: " + std::to_string(d));
  }

  const int max_depth =
      config.depths.empty()
          ? 1
          : *std::max_element(config.depths.begin(), config.depths.end());

  LshIndex lsh;
  if (config.run_lsh) {
    LshBuildOptions opts;
    opts.cost_scope = config.cost_scope;
    opts.threads = config.threads;
    lsh = build_lsh_index(g, max_depth, opts);
  }
  std::vector<GshIndex> gsh_by_depth;  // parallel to config.depths
  if (config.run_gsh) {
    GshBuildOptions opts;
    opts.threads = config.threads;
    for (int d : config.depths)
      gsh_by_depth.push_back(build_gsh_index(g, d, opts));
  }

  BenchReport report;
  auto add_row = [&](BenchRow row, std::vector<RawPairRecord> raw) {
    report.rows.push_back(std::move(row));
    report.raw.push_back(config.collect_raw ? std::move(raw)
                                            : std::vector<RawPairRecord>{});
  };

  for (std::size_t b = 0; b < config.bins.size(); ++b) {
    const DistanceBin& bin = config.bins[b];
    const SampledPairs sampled = sample_pairs(
        g, bin, config.pairs_per_bin, detail::mix_seed(config.seed, b));
    if (sampled.truncated) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "bin [%g, %g]: only %zu of %zu pairs sampled before the "
                    "retry budget ran out",
                    bin.lo, bin.hi, sampled.pairs.size(),
                    static_cast<std::size_t>(config.pairs_per_bin));
      report.warnings.emplace_back(msg);
    }
    const PairList& pairs = sampled.pairs;
    const std::vector<double> truth =
        compute_truths(g, pairs, config.threads);
    const RowInputs inputs{g, pairs, truth, config.threads,
                           config.collect_raw};

    if (config.run_dijkstra) {
      std::vector<RawPairRecord> raw;
      BenchRow row = evaluate_row(
          inputs, bin, "dijkstra", 0,
          [](VertexId, VertexId) { return 0.0; }, nullptr,
          config.collect_raw ? &raw : nullptr);
      add_row(std::move(row), std::move(raw));
    }
    for (std::size_t di = 0; di < config.depths.size(); ++di) {
      const int d = config.depths[di];
      if (config.run_lsh) {
        std::vector<RawPairRecord> raw;
        BenchRow row = evaluate_row(
            inputs, bin, "lsh", d,
            [&](VertexId s, VertexId t) { return lsh.evaluate(s, t, d); },
            [&](VertexId s, VertexId t) {
              const SeparationInfo info = separation_diagnostics(lsh, s, t, d);
              return std::make_pair(info.separated, info.determined);
            },
            config.collect_raw ? &raw : nullptr);
        add_row(std::move(row), std::move(raw));
      }
      if (config.run_gsh) {
        const GshIndex& gsh = gsh_by_depth[di];
        std::vector<RawPairRecord> raw;
        BenchRow row = evaluate_row(
            inputs, bin, "gsh", d,
            [&](VertexId s, VertexId t) { return gsh.evaluate(s, t); },
            [&](VertexId s, VertexId t) {
              const GshSeparationInfo info =
                  gsh_separation_diagnostics(gsh, s, t);
              return std::make_pair(info.separated, info.determined);
            },
            config.collect_raw ? &raw : nullptr);
        add_row(std::move(row), std::move(raw));
      }
    }
  }
  return report;
}

void write_report_csv(const BenchReport& report, std::ostream& sink) {
  sink << "bin_lo_m,bin_hi_m,heuristic,depth,pairs,mean_qual,mean_eff,"
          "p_separated,p_determined,dropped_pairs\n";
  char buf[256];
  for (const BenchRow& row : report.rows) {
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%s,%d,%zu,%.17g,%.17g,%.17g,%.17g,%zu\n",
                  row.bin.lo, row.bin.hi, row.heuristic.c_str(), row.depth,
                  row.pairs, row.mean_qual, row.mean_eff, row.p_separated,
                  row.p_determined, row.dropped);
    sink << buf;
  }
  if (!sink) throw io_error("failed writing CSV report");
}

void write_report_json(const BenchReport& report, std::ostream& sink) {
  using nlohmann::json;
  json rows = json::array();
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const BenchRow& row = report.rows[i];
    json jr{{"bin_lo_m", row.bin.lo},
            {"bin_hi_m", row.bin.hi},
            {"heuristic", row.heuristic},
            {"depth", row.depth},
            {"pairs", row.pairs},
            {"mean_qual", row.mean_qual},
            {"mean_eff", row.mean_eff},
            {"p_separated", row.p_separated},
            {"p_determined", row.p_determined},
            {"dropped_pairs", row.dropped}};
    if (i < report.raw.size() && !report.raw[i].empty()) {
      json raw = json::array();
      for (const RawPairRecord& rec : report.raw[i]) {
        raw.push_back({{"s", rec.s},
                       {"t", rec.t},
                       {"truth", rec.truth},
                       {"h", rec.h},
                       {"qual", rec.qual},
                       {"eff", rec.eff},
                       {"settled", rec.settled},
                       {"path_vertices", rec.path_vertices},
                       {"separated", rec.separated},
                       {"determined", rec.determined}});
      }
      jr["pairs_raw"] = std::move(raw);
    }
    rows.push_back(std::move(jr));
  }
  json out{{"rows", std::move(rows)}, {"warnings", report.warnings}};
  sink << out.dump(2) << '\n';
  if (!sink) throw io_error("failed writing JSON report");
}

std::vector<DistanceBin> default_bins(double diagonal_meters) {
  const double edges[] = {1e3, 5e3, 10e3, 20e3, 50e3, 100e3};
  std::vector<DistanceBin> bins;
  for (std::size_t i = 0; i + 1 < std::size(edges); ++i) {
    const double lo = edges[i];
    const double hi = std::min(edges[i + 1], diagonal_meters);
    if (lo >= diagonal_meters || hi <= lo) continue;
    bins.push_back({lo, hi});
  }
  return bins;
}

}  // namespace septree
