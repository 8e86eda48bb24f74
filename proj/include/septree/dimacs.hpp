#pragma once

#include <iosfwd>
#include <string>

#include "septree/graph.hpp"

namespace septree {

/// How to interpret the coordinate units of a `.co` file.
struct DimacsLoadOptions {
  enum class CoordUnits {
    /// 9th-challenge convention: integers in 1e-6 degrees (lon, lat).
    /// Projected to planar meters with an equirectangular projection
    /// scaled by cos(mean latitude).
    geographic_microdegrees,
    /// Plain planar values, `units_per_meter` file units per meter.
    planar,
  };
  CoordUnits units = CoordUnits::geographic_microdegrees;
  double units_per_meter = 1.0;
};

struct DimacsWriteOptions {
  double units_per_meter = 1.0;  // coordinates written as planar values
};

/// Parses DIMACS 9th-challenge `.gr` (arcs `a u v w`) and `.co`
/// (coordinates `v id x y`) streams into a RoadGraph with 0-based ids.
/// Duplicate arcs between the same endpoints collapse to one undirected
/// edge with the minimum cost. Throws parse_error (with line number),
/// structural_error, or validation_error.
RoadGraph load_dimacs(std::istream& gr_source, std::istream& co_source,
                      const DimacsLoadOptions& options = {});

/// Opens `<gr_path>` and `<co_path>` and loads them. Throws io_error if a
/// file cannot be opened.
RoadGraph load_dimacs_files(const std::string& gr_path,
                            const std::string& co_path,
                            const DimacsLoadOptions& options = {});

/// Writes the graph as a `.gr`/`.co` pair with planar coordinates. Each
/// undirected edge is written as two arcs. Values are printed with enough
/// digits to reload bit-exactly.
void write_dimacs(const RoadGraph& g, std::ostream& gr_sink,
                  std::ostream& co_sink, const DimacsWriteOptions& options = {});

void write_dimacs_files(const RoadGraph& g, const std::string& gr_path,
                        const std::string& co_path,
                        const DimacsWriteOptions& options = {});

}  // namespace septree
