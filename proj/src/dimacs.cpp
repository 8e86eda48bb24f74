#include "septree/dimacs.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

namespace septree {

namespace {

constexpr double kEarthRadiusMeters = 6'371'000.0;

struct Line {
  std::string text;
  std::size_t number = 0;
};

[[noreturn]] void fail_parse(const char* what, const Line& line) {
  throw parse_error(std::string(what) + " at line " +
                    std::to_string(line.number) + ": '" + line.text + "'");
}

// Splits into whitespace tokens.
std::vector<std::string> tokens_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
  if (s.empty()) return false;
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  out = v;
  return true;
}

bool parse_f64(const std::string& s, double& out) {
  const char* begin = s.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + s.size() && !s.empty();
}

// Iterates payload lines (non-comment, non-empty), tracking line numbers.
template <typename Fn>
void for_each_payload_line(std::istream& in, Fn&& fn) {
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::size_t first = raw.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (raw[first] == 'c') continue;
    fn(Line{raw, number});
  }
}

}  // namespace

RoadGraph load_dimacs(std::istream& gr_source, std::istream& co_source,
                      const DimacsLoadOptions& options) {
  std::uint64_t n = 0, declared_arcs = 0;
  bool have_problem = false;
  std::vector<Edge> edges;
  std::uint64_t arc_lines = 0;

  for_each_payload_line(gr_source, [&](const Line& line) {
    auto tok = tokens_of(line.text);
    if (tok[0] == "p") {
      // p sp <n> <m>
      if (have_problem) fail_parse("duplicate problem line", line);
      if (tok.size() != 4 || tok[1] != "sp" || !parse_u64(tok[2], n) ||
          !parse_u64(tok[3], declared_arcs))
        fail_parse("malformed problem line", line);
      have_problem = true;
    } else if (tok[0] == "a") {
      if (!have_problem)
        fail_parse("arc before problem line", line);
      std::uint64_t u = 0, v = 0;
      double w = 0.0;
      if (tok.size() != 4 || !parse_u64(tok[1], u) || !parse_u64(tok[2], v) ||
          !parse_f64(tok[3], w))
        fail_parse("malformed arc line", line);
      if (u < 1 || u > n || v < 1 || v > n)
        throw structural_error("arc references unknown vertex at line " +
                               std::to_string(line.number));
      if (!std::isfinite(w) || w <= 0.0)
        throw validation_error("nonpositive arc weight at line " +
                               std::to_string(line.number));
      ++arc_lines;
      edges.push_back({static_cast<VertexId>(u - 1),
                       static_cast<VertexId>(v - 1), w});
    } else {
      fail_parse("unrecognized line", line);
    }
  });
  if (!have_problem) throw parse_error("missing problem line in .gr input");
  if (arc_lines != declared_arcs)
    throw structural_error(".gr declares " + std::to_string(declared_arcs) +
                           " arcs but contains " + std::to_string(arc_lines));

  std::vector<double> raw_x(n, 0.0), raw_y(n, 0.0);
  std::vector<char> have_coord(n, 0);
  std::uint64_t coord_lines = 0;
  for_each_payload_line(co_source, [&](const Line& line) {
    auto tok = tokens_of(line.text);
    if (tok[0] == "p") {
      // p aux sp co <n>; tolerated, count cross-checked when parseable.
      std::uint64_t co_n = 0;
      if (!tok.empty() && parse_u64(tok.back(), co_n) && co_n != n)
        throw structural_error(".co problem line declares " +
                               std::to_string(co_n) + " vertices, .gr has " +
                               std::to_string(n));
      return;
    }
    if (tok[0] != "v") fail_parse("unrecognized line", line);
    std::uint64_t id = 0;
    double cx = 0.0, cy = 0.0;
    if (tok.size() != 4 || !parse_u64(tok[1], id) || !parse_f64(tok[2], cx) ||
        !parse_f64(tok[3], cy))
      fail_parse("malformed coordinate line", line);
    if (id < 1 || id > n)
      throw structural_error("coordinate for unknown vertex at line " +
                             std::to_string(line.number));
    if (have_coord[id - 1])
      throw structural_error("duplicate coordinate for vertex " +
                             std::to_string(id) + " at line " +
                             std::to_string(line.number));
    have_coord[id - 1] = 1;
    raw_x[id - 1] = cx;
    raw_y[id - 1] = cy;
    ++coord_lines;
  });
  if (coord_lines != n) {
    for (std::uint64_t v = 0; v < n; ++v) {
      if (!have_coord[v])
        throw structural_error("coordinate missing for vertex " +
                               std::to_string(v + 1));
    }
  }

  std::vector<double> xs(n), ys(n);
  if (options.units == DimacsLoadOptions::CoordUnits::geographic_microdegrees) {
    // File stores (longitude, latitude) in microdegrees.
    double lat_sum = 0.0;
    for (std::uint64_t v = 0; v < n; ++v) lat_sum += raw_y[v] * 1e-6;
    const double mean_lat_rad =
        (n ? lat_sum / static_cast<double>(n) : 0.0) * std::numbers::pi / 180.0;
    const double lon_scale =
        kEarthRadiusMeters * std::numbers::pi / 180.0 * std::cos(mean_lat_rad);
    const double lat_scale = kEarthRadiusMeters * std::numbers::pi / 180.0;
    for (std::uint64_t v = 0; v < n; ++v) {
      xs[v] = raw_x[v] * 1e-6 * lon_scale;
      ys[v] = raw_y[v] * 1e-6 * lat_scale;
    }
  } else {
    if (!(options.units_per_meter > 0.0))
      throw validation_error("units_per_meter must be positive");
    for (std::uint64_t v = 0; v < n; ++v) {
      xs[v] = raw_x[v] / options.units_per_meter;
      ys[v] = raw_y[v] / options.units_per_meter;
    }
  }

  return RoadGraph(std::move(xs), std::move(ys), edges);
}

RoadGraph load_dimacs_files(const std::string& gr_path,
                            const std::string& co_path,
                            const DimacsLoadOptions& options) {
  std::ifstream gr(gr_path);
  if (!gr) throw io_error("cannot open " + gr_path);
  std::ifstream co(co_path);
  if (!co) throw io_error("cannot open " + co_path);
  return load_dimacs(gr, co, options);
}

void write_dimacs(const RoadGraph& g, std::ostream& gr_sink,
                  std::ostream& co_sink, const DimacsWriteOptions& options) {
  char buf[64];
  gr_sink << "c septree graph, planar coordinates\n";
  gr_sink << "p sp " << g.vertex_count() << ' ' << 2 * g.edge_count() << '\n';
  for_each_edge(g, [&](VertexId u, VertexId w, double cost) {
    std::snprintf(buf, sizeof buf, "%.17g", cost);
    gr_sink << "a " << u + 1 << ' ' << w + 1 << ' ' << buf << '\n';
    gr_sink << "a " << w + 1 << ' ' << u + 1 << ' ' << buf << '\n';
  });
  if (!gr_sink) throw io_error("failed writing .gr output");

  co_sink << "p aux sp co " << g.vertex_count() << '\n';
  const auto n = static_cast<VertexId>(g.vertex_count());
  for (VertexId v = 0; v < n; ++v) {
    char bx[64], by[64];
    std::snprintf(bx, sizeof bx, "%.17g", g.x(v) * options.units_per_meter);
    std::snprintf(by, sizeof by, "%.17g", g.y(v) * options.units_per_meter);
    co_sink << "v " << v + 1 << ' ' << bx << ' ' << by << '\n';
  }
  if (!co_sink) throw io_error("failed writing .co output");
}

void write_dimacs_files(const RoadGraph& g, const std::string& gr_path,
                        const std::string& co_path,
                        const DimacsWriteOptions& options) {
  std::ofstream gr(gr_path);
  if (!gr) throw io_error("cannot open " + gr_path + " for writing");
  std::ofstream co(co_path);
  if (!co) throw io_error("cannot open " + co_path + " for writing");
  write_dimacs(g, gr, co, options);
  gr.flush();
  co.flush();
  if (!gr || !co) throw io_error("failed writing DIMACS files");
}

}  // namespace septree
