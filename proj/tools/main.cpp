// septree command-line tool: generate synthetic maps, build separator
// indexes, run single queries, and reproduce the benchmark protocol.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "septree/bench.hpp"
#include "septree/dimacs.hpp"
#include "septree/graph.hpp"
#include "septree/gsh.hpp"
#include "septree/index_io.hpp"
#include "septree/lsh.hpp"
#include "septree/parallel.hpp"
#include "septree/search.hpp"

namespace {

using namespace septree;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitVerification = 3;

struct MapArgs {
  std::string prefix;
  double coord_scale = 0.0;  // 0 = geographic microdegrees
  bool lcc = false;
};

void add_map_options(CLI::App* cmd, MapArgs& args) {
  cmd->add_option("--map", args.prefix, "Map file prefix (PREFIX.gr, PREFIX.co)")
      ->required();
  cmd->add_option(
      "--coord-scale", args.coord_scale,
      "Treat coordinates as planar with this many file units per meter "
      "(default: geographic 1e-6 degrees, projected)");
  cmd->add_flag("--lcc", args.lcc,
                "Restrict the loaded map to its largest connected component "
                "(renumbers vertex ids)");
}

RoadGraph load_map(const MapArgs& args) {
  DimacsLoadOptions options;
  if (args.coord_scale > 0.0) {
    options.units = DimacsLoadOptions::CoordUnits::planar;
    options.units_per_meter = args.coord_scale;
  }
  RoadGraph g =
      load_dimacs_files(args.prefix + ".gr", args.prefix + ".co", options);
  if (args.lcc) {
    auto [component, map] = largest_connected_component(g);
    if (component.vertex_count() != g.vertex_count()) {
      std::cout << "lcc: kept " << component.vertex_count() << " of "
                << g.vertex_count() << " vertices\n";
    }
    return std::move(component);
  }
  return g;
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

// --- generate ---------------------------------------------------------

struct GenerateArgs {
  SyntheticParams params;
  std::string out_prefix;
};

int cmd_generate(const GenerateArgs& args) {
  const RoadGraph g = generate_synthetic(args.params);
  write_dimacs_files(g, args.out_prefix + ".gr", args.out_prefix + ".co");
  std::cout << "vertices: " << g.vertex_count() << "\n"
            << "edges: " << g.edge_count() << "\n"
            << "wrote: " << args.out_prefix << ".gr " << args.out_prefix
            << ".co (planar meters; load with --coord-scale 1)\n";
  return kExitOk;
}

// --- preprocess -------------------------------------------------------

struct PreprocessArgs {
  MapArgs map;
  int k = 7;
  std::string kind = "lsh";
  bool subgraph_costs = false;
  int threads = 0;
  std::string out_path;
};

int cmd_preprocess(const PreprocessArgs& args) {
  const RoadGraph g = load_map(args.map);
  const int threads = resolve_thread_count(args.threads);
  const auto start = std::chrono::steady_clock::now();

  if (args.kind == "lsh") {
    LshBuildOptions options;
    options.cost_scope =
        args.subgraph_costs ? CostScope::subgraph : CostScope::full_graph;
    options.threads = threads;
    LshBuildStats stats;
    const LshIndex index = build_lsh_index(g, args.k, options, &stats);
    save_index_file(index, args.out_path);
    std::cout << "kind: lsh\nk: " << args.k
              << "\ncost_scope: " << cost_scope_name(options.cost_scope)
              << "\nvertices: " << g.vertex_count() << "\n";
    for (int level = 1; level <= args.k; ++level) {
      std::cout << "level " << level << ": x_separator_vertices="
                << stats.x.level_separator_vertices[level - 1]
                << " y_separator_vertices="
                << stats.y.level_separator_vertices[level - 1] << "\n";
    }
    for (const auto& [name, axis] :
         {std::pair{"x", &stats.x}, std::pair{"y", &stats.y}}) {
      std::cout << name << "_axis: nodes=" << axis->nodes_visited
                << " nonempty_separators=" << axis->nonempty_separator_nodes
                << " dijkstra_runs=" << axis->dijkstra_invocations << "\n";
    }
  } else if (args.kind == "gsh") {
    if (args.subgraph_costs)
      throw validation_error("--subgraph-costs applies to LSH builds only");
    GshBuildOptions options;
    options.threads = threads;
    GshBuildStats stats;
    const GshIndex index = build_gsh_index(g, args.k, options, &stats);
    save_index_file(index, args.out_path);
    std::cout << "kind: gsh\nk: " << args.k
              << "\nvertices: " << g.vertex_count() << "\n"
              << "separators: " << index.separator_count() << "\n";
    for (std::size_t i = 0; i < stats.separator_sizes.size(); ++i) {
      const bool is_x = i < static_cast<std::size_t>(args.k);
      std::cout << "separator " << i + 1 << " (" << (is_x ? "x" : "y")
                << " @ " << index.line_positions()[i]
                << "): " << stats.separator_sizes[i] << " vertices\n";
    }
  } else {
    throw validation_error("unknown index kind: " + args.kind);
  }
  std::printf("build_seconds: %.3f\n", elapsed_seconds(start));
  std::cout << "wrote: " << args.out_path << "\n";
  return kExitOk;
}

// --- query ------------------------------------------------------------

struct QueryArgs {
  MapArgs map;
  std::string index_path;
  VertexId source = 0;
  VertexId target = 0;
  int depth = 0;  // 0 = index depth
  std::string heuristic;
  bool verify = false;
  std::string dump_traversal;
};

int cmd_query(const QueryArgs& args) {
  const RoadGraph g = load_map(args.map);
  std::string heuristic = args.heuristic;
  if (heuristic.empty())
    heuristic = args.index_path.empty() ? "dijkstra" : "lsh";

  std::optional<LshIndex> lsh;
  std::optional<GshIndex> gsh;
  int depth = args.depth;
  if (heuristic == "lsh" || heuristic == "gsh") {
    if (args.index_path.empty())
      throw validation_error("--index is required for heuristic " + heuristic);
    AnyIndex any = load_index_file(args.index_path);
    if (heuristic == "lsh") {
      auto* p = std::get_if<LshIndex>(&any);
      if (!p) throw validation_error("index file does not hold an LSH index");
      lsh = std::move(*p);
      lsh->ensure_matches(g);
      if (depth == 0) depth = lsh->depth();
      if (depth < 1 || depth > lsh->depth())
        throw validation_error("depth out of range for this index");
    } else {
      auto* p = std::get_if<GshIndex>(&any);
      if (!p) throw validation_error("index file does not hold a GSH index");
      gsh = std::move(*p);
      gsh->ensure_matches(g);
    }
  } else if (heuristic != "dijkstra") {
    throw validation_error("unknown heuristic: " + heuristic);
  }

  const VertexId s = args.source;
  const VertexId t = args.target;
  g.check_vertex(s);
  g.check_vertex(t);

  auto h_of = [&](VertexId v, VertexId target) -> double {
    if (lsh) return lsh->evaluate(v, target, depth);
    if (gsh) return gsh->evaluate(v, target);
    return 0.0;
  };

  std::vector<VertexId> settled_order;
  std::vector<VertexId>* order_ptr =
      args.dump_traversal.empty() ? nullptr : &settled_order;
  const PathResult result =
      astar(g, s, t, [&](VertexId v) { return h_of(v, t); }, order_ptr);

  if (!result.found) {
    std::cout << "no path from " << s << " to " << t << "\n"
              << "settled: " << result.stats.settled_count << "\n";
    return kExitOk;
  }

  const double h_value = h_of(s, t);
  std::printf("cost: %.12g\n", result.cost);
  std::cout << "path_vertices: " << result.stats.path_vertex_count << "\n"
            << "settled: " << result.stats.settled_count << "\n"
            << "relaxed_edges: " << result.stats.relaxed_edge_count << "\n";
  std::printf("heuristic_value: %.12g\n", h_value);
  if (result.cost > 0.0) {
    std::printf("quality: %.12g\n", h_value / result.cost);
  } else {
    std::cout << "quality: n/a\n";
  }
  std::printf("efficiency: %.12g\n",
              static_cast<double>(result.stats.path_vertex_count) /
                  static_cast<double>(result.stats.settled_count));

  if (!args.dump_traversal.empty()) {
    std::ofstream out(args.dump_traversal);
    if (!out) throw io_error("cannot open " + args.dump_traversal);
    for (VertexId v : settled_order) out << v << "\n";
    if (!out) throw io_error("failed writing " + args.dump_traversal);
    std::cout << "traversal_dump: " << args.dump_traversal << " ("
              << settled_order.size() << " vertices)\n";
  }

  if (args.verify) {
    const double dijkstra_cost = dijkstra_all(g, s)[t];
    if (result.cost != dijkstra_cost) {
      std::fprintf(stderr,
                   "verification FAILED: astar %.17g != dijkstra %.17g\n",
                   result.cost, dijkstra_cost);
      return kExitVerification;
    }
    std::cout << "verified: cost matches Dijkstra\n";
  }
  return kExitOk;
}

// --- bench ------------------------------------------------------------

struct BenchArgs {
  MapArgs map;
  int k = 7;
  std::vector<int> depths;
  std::vector<std::string> heuristics = {"lsh", "gsh"};
  std::vector<std::string> bins;  // "lo:hi" meters
  std::size_t pairs = 3000;
  std::uint64_t seed = 0;
  int threads = 0;
  bool subgraph_costs = false;
  std::string out_csv;
  std::string raw_json;
};

int cmd_bench(const BenchArgs& args) {
  const RoadGraph g = load_map(args.map);

  BenchConfig config;
  config.pairs_per_bin = args.pairs;
  config.seed = args.seed;
  config.threads = resolve_thread_count(args.threads);
  config.cost_scope =
      args.subgraph_costs ? CostScope::subgraph : CostScope::full_graph;
  config.collect_raw = !args.raw_json.empty();

  config.run_lsh = config.run_gsh = config.run_dijkstra = false;
  for (const std::string& h : args.heuristics) {
    if (h == "lsh") config.run_lsh = true;
    else if (h == "gsh") config.run_gsh = true;
    else if (h == "dijkstra") config.run_dijkstra = true;
    else throw validation_error("unknown heuristic: " + h);
  }

  if (args.depths.empty()) {
    for (int d = 1; d <= args.k; ++d) config.depths.push_back(d);
  } else {
    config.depths = args.depths;
    for (int d : config.depths)
      if (d > args.k)
        throw validation_error("depth exceeds --k: " + std::to_string(d));
  }

  if (args.bins.empty()) {
    config.bins = default_bins(bounding_box(g).diagonal());
    if (config.bins.empty())
      throw validation_error(
          "default bins do not fit this map; pass --bins lo:hi,...");
  } else {
    for (const std::string& spec : args.bins) {
      const auto colon = spec.find(':');
      if (colon == std::string::npos)
        throw validation_error("bin must be lo:hi in meters, got " + spec);
      DistanceBin bin;
      try {
        bin.lo = std::stod(spec.substr(0, colon));
        bin.hi = std::stod(spec.substr(colon + 1));
      } catch (const std::exception&) {
        throw validation_error("bin must be lo:hi in meters, got " + spec);
      }
      config.bins.push_back(bin);
    }
  }

  const auto start = std::chrono::steady_clock::now();
  const BenchReport report = run_benchmark(g, config);

  {
    std::ofstream out(args.out_csv);
    if (!out) throw io_error("cannot open " + args.out_csv);
    write_report_csv(report, out);
  }
  if (!args.raw_json.empty()) {
    std::ofstream out(args.raw_json);
    if (!out) throw io_error("cannot open " + args.raw_json);
    write_report_json(report, out);
  }

  for (const std::string& w : report.warnings)
    std::cout << "warning: " << w << "\n";
  std::cout << "rows: " << report.rows.size() << "\n"
            << "wrote: " << args.out_csv << "\n";
  std::printf("bench_seconds: %.3f\n", elapsed_seconds(start));
  return kExitOk;
}

// --- inspect ----------------------------------------------------------

struct InspectArgs {
  std::string index_path;
  std::string dump_json;
};

void print_finite_cost_levels(const AxisLabels& labels) {
  const std::size_t n = labels.vertex_count();
  for (int level = 1; level <= labels.k; ++level) {
    std::size_t finite = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (std::isfinite(labels.cost(static_cast<VertexId>(v), level)))
        ++finite;
    }
    std::cout << "  level " << level << ": finite_costs=" << finite << "/" << n
              << "\n";
  }
}

int cmd_inspect(const InspectArgs& args) {
  const AnyIndex any = load_index_file(args.index_path);
  if (const auto* lsh = std::get_if<LshIndex>(&any)) {
    std::cout << "kind: lsh\nk: " << lsh->depth()
              << "\nvertices: " << lsh->fingerprint().vertex_count
              << "\nedges: " << lsh->fingerprint().edge_count
              << "\ncost_scope: " << cost_scope_name(lsh->cost_scope()) << "\n";
    std::printf("bbox: [%g, %g] x [%g, %g]\n", lsh->box().x_min,
                lsh->box().x_max, lsh->box().y_min, lsh->box().y_max);
    std::printf("fingerprint_crc32: %08x\n", lsh->fingerprint().cost_crc32);
    std::cout << "x axis:\n";
    print_finite_cost_levels(lsh->labels(Axis::x));
    std::cout << "y axis:\n";
    print_finite_cost_levels(lsh->labels(Axis::y));
    if (!args.dump_json.empty()) {
      std::ofstream out(args.dump_json);
      if (!out) throw io_error("cannot open " + args.dump_json);
      dump_index_json(*lsh, out);
      std::cout << "wrote: " << args.dump_json << "\n";
    }
  } else {
    const auto& gsh = std::get<GshIndex>(any);
    std::cout << "kind: gsh\nk: " << gsh.separators_per_axis()
              << "\nseparators: " << gsh.separator_count()
              << "\nvertices: " << gsh.fingerprint().vertex_count
              << "\nedges: " << gsh.fingerprint().edge_count << "\n";
    std::printf("bbox: [%g, %g] x [%g, %g]\n", gsh.box().x_min,
                gsh.box().x_max, gsh.box().y_min, gsh.box().y_max);
    std::printf("fingerprint_crc32: %08x\n", gsh.fingerprint().cost_crc32);
    for (std::size_t i = 0; i < gsh.line_positions().size(); ++i) {
      const bool is_x = i < static_cast<std::size_t>(gsh.separators_per_axis());
      std::printf("  line %zu (%s @ %g)\n", i + 1, is_x ? "x" : "y",
                  gsh.line_positions()[i]);
    }
    if (!args.dump_json.empty()) {
      std::ofstream out(args.dump_json);
      if (!out) throw io_error("cannot open " + args.dump_json);
      dump_index_json(gsh, out);
      std::cout << "wrote: " << args.dump_json << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"septree: separator-tree heuristics for fastest paths"};
  app.require_subcommand(1);

  GenerateArgs gen;
  gen.params.drop_prob = 0.05;
  auto* generate = app.add_subcommand("generate", "Write a synthetic map");
  generate->add_option("--rows", gen.params.rows, "Grid rows")->required();
  generate->add_option("--cols", gen.params.cols, "Grid columns")->required();
  generate->add_option("--cell-size", gen.params.cell_size,
                       "Grid spacing in meters");
  generate->add_option("--speeds", gen.params.speed_classes,
                       "Speed classes in m/s")
      ->delimiter(',');
  generate->add_option("--drop-prob", gen.params.drop_prob,
                       "Edge drop probability, < 0.3");
  generate->add_option("--seed", gen.params.seed, "RNG seed");
  generate->add_option("-o,--output", gen.out_prefix, "Output prefix")
      ->required();

  PreprocessArgs pre;
  auto* preprocess =
      app.add_subcommand("preprocess", "Build and save a separator index");
  add_map_options(preprocess, pre.map);
  preprocess->add_option("--k", pre.k, "Tree depth / separators per axis")
      ->required();
  preprocess->add_option("--kind", pre.kind, "Index kind: lsh or gsh");
  preprocess->add_flag("--subgraph-costs", pre.subgraph_costs,
                       "Literal recursive mode: cuts and costs restricted to "
                       "each node's subgraph (no admissibility guarantee)");
  preprocess->add_option("--threads", pre.threads,
                         "Worker threads (default: SEPTREE_THREADS or all)");
  preprocess->add_option("-o,--output", pre.out_path, "Index file")
      ->required();

  QueryArgs qry;
  auto* query = app.add_subcommand("query", "Run one fastest-path query");
  add_map_options(query, qry.map);
  query->add_option("--index", qry.index_path, "Index file (lsh/gsh)");
  query->add_option("-s,--source", qry.source, "Source vertex id")->required();
  query->add_option("-t,--target", qry.target, "Target vertex id")->required();
  query->add_option("-d,--depth", qry.depth,
                    "LSH evaluation depth (default: index depth)");
  query->add_option("--heuristic", qry.heuristic,
                    "dijkstra, gsh, or lsh (default: lsh with --index, "
                    "else dijkstra)");
  query->add_flag("--verify", qry.verify,
                  "Cross-check the A* cost against Dijkstra");
  query->add_option("--dump-traversal", qry.dump_traversal,
                    "Write settled vertex ids to this file");

  BenchArgs bench;
  auto* bench_cmd =
      app.add_subcommand("bench", "Run the quality/efficiency benchmark");
  add_map_options(bench_cmd, bench.map);
  bench_cmd->add_option("--k", bench.k, "Max tree depth");
  bench_cmd->add_option("--depths", bench.depths, "Depths to report")
      ->delimiter(',');
  bench_cmd->add_option("--heuristics", bench.heuristics,
                        "Subset of lsh,gsh,dijkstra")
      ->delimiter(',');
  bench_cmd->add_option("--bins", bench.bins,
                        "Distance bins lo:hi in meters (default: standard bins "
                        "truncated to the map)")
      ->delimiter(',');
  bench_cmd->add_option("--pairs", bench.pairs, "Pairs per bin");
  bench_cmd->add_option("--seed", bench.seed, "Sampling seed");
  bench_cmd->add_option("--threads", bench.threads,
                        "Worker threads (default: SEPTREE_THREADS or all)");
  bench_cmd->add_flag("--subgraph-costs", bench.subgraph_costs,
                      "Build the LSH index in literal subgraph mode");
  bench_cmd->add_option("-o,--output", bench.out_csv, "CSV report path")
      ->required();
  bench_cmd->add_option("--raw-json", bench.raw_json,
                        "Also write raw per-pair rows as JSON");

  InspectArgs ins;
  auto* inspect = app.add_subcommand("inspect", "Print index header and stats");
  inspect->add_option("--index", ins.index_path, "Index file")->required();
  inspect->add_option("--dump-json", ins.dump_json,
                      "Write the JSON debug export to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (preprocess->parsed()) return cmd_preprocess(pre);
    if (query->parsed()) return cmd_query(qry);
    if (bench_cmd->parsed()) return cmd_bench(bench);
    if (inspect->parsed()) return cmd_inspect(ins);
  } catch (const io_error& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kExitIo;
  } catch (const format_error& e) {
    std::fprintf(stderr, "index format error: %s\n", e.what());
    return kExitIo;
  } catch (const error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return kExitValidation;
  }
  return kExitOk;
}
