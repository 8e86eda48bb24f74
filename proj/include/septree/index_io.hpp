#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "septree/gsh.hpp"
#include "septree/lsh.hpp"

namespace septree {

// `SEPH` index container, version 1, little-endian throughout:
//
//   offset  size  field
//        0     4  magic "SEPH"
//        4     2  version (u16) = 1
//        6     1  kind (u8): 0 = LSH, 1 = GSH
//        7     1  cost scope (u8): 0 = full graph, 1 = subgraph
//        8     8  vertex count (u64)
//       16     8  edge count (u64)
//       24     4  graph cost CRC-32 (u32)
//       28     2  k (u16)
//       30    32  bounding box x_min, x_max, y_min, y_max (4 x f64)
//
// LSH payload, per axis (x then y):
//   codes: n * ceil(k/8) bytes, packed per vertex, level 1 = LSB of byte 0
//   valid depths: n bytes
//   costs: n * k f64, vertex-major, +inf for empty separators
// GSH payload:
//   line positions: 2k f64 (x lines ascending, then y lines)
//   side codes: per axis n * ceil(k/8) bytes, line 1 = LSB
//   costs: per axis n * k f64, vertex-major
//
// Trailer: CRC-32 (u32) over every preceding byte. Loads are all-or-
// nothing: any mismatch in magic, version, kind, length, or checksum
// raises format_error and never yields a partial index.

enum class IndexKind : std::uint8_t { lsh = 0, gsh = 1 };

using AnyIndex = std::variant<LshIndex, GshIndex>;

void save_index(const LshIndex& index, std::ostream& sink);
void save_index(const GshIndex& index, std::ostream& sink);
void save_index_file(const LshIndex& index, const std::string& path);
void save_index_file(const GshIndex& index, const std::string& path);

AnyIndex load_index(std::istream& source);
AnyIndex load_index_file(const std::string& path);

/// Loads and requires the given kind; format_error otherwise.
LshIndex load_lsh_index(std::istream& source);
GshIndex load_gsh_index(std::istream& source);

/// Debug export for cross-implementation diffing: codes as bitstrings
/// (character i = level i+1), costs as numbers with +inf spelled "inf".
void dump_index_json(const LshIndex& index, std::ostream& sink);
void dump_index_json(const GshIndex& index, std::ostream& sink);

}  // namespace septree
