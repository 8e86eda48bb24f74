#include "septree/index_io.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>

#include <json.hpp>

#include "septree/detail/crc32.hpp"

namespace septree {

namespace {

constexpr char kMagic[4] = {'S', 'E', 'P', 'H'};
constexpr std::uint16_t kVersion = 1;

std::size_t code_bytes_per_vertex(int k) {
  return static_cast<std::size_t>((k + 7) / 8);
}

struct ByteWriter {
  std::string buf;

  void u8(std::uint8_t v) { buf.push_back(static_cast<char>(v)); }
  void u16(std::uint16_t v) {
    for (int i = 0; i < 2; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
};

struct ByteReader {
  const std::string& buf;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > buf.size()) throw format_error("truncated index file");
  }
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(buf[pos++]);
  }
  std::uint16_t u16() {
    std::uint16_t v = 0;
    for (int i = 0; i < 2; ++i) v |= static_cast<std::uint16_t>(u8()) << (8 * i);
    return v;
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
};

void write_header(ByteWriter& w, IndexKind kind, CostScope scope,
                  const GraphFingerprint& fp, int k, const BoundingBox& box) {
  w.buf.append(kMagic, sizeof kMagic);
  w.u16(kVersion);
  w.u8(static_cast<std::uint8_t>(kind));
  w.u8(static_cast<std::uint8_t>(scope));
  w.u64(fp.vertex_count);
  w.u64(fp.edge_count);
  w.u32(fp.cost_crc32);
  w.u16(static_cast<std::uint16_t>(k));
  w.f64(box.x_min);
  w.f64(box.x_max);
  w.f64(box.y_min);
  w.f64(box.y_max);
}

void write_packed_codes(ByteWriter& w, const std::vector<std::uint32_t>& codes,
                        int k) {
  const std::size_t bytes = code_bytes_per_vertex(k);
  for (std::uint32_t code : codes)
    for (std::size_t b = 0; b < bytes; ++b)
      w.u8(static_cast<std::uint8_t>(code >> (8 * b)));
}

std::vector<std::uint32_t> read_packed_codes(ByteReader& r, std::size_t n,
                                             int k) {
  const std::size_t bytes = code_bytes_per_vertex(k);
  std::vector<std::uint32_t> codes(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t b = 0; b < bytes; ++b)
      codes[v] |= static_cast<std::uint32_t>(r.u8()) << (8 * b);
  return codes;
}

void write_axis_labels(ByteWriter& w, const AxisLabels& a) {
  write_packed_codes(w, a.codes, a.k);
  for (std::uint8_t vd : a.valid_depths) w.u8(vd);
  for (double c : a.costs) w.f64(c);
}

AxisLabels read_axis_labels(ByteReader& r, Axis axis, std::size_t n, int k) {
  AxisLabels a;
  a.axis = axis;
  a.k = k;
  a.codes = read_packed_codes(r, n, k);
  a.valid_depths.resize(n);
  for (std::size_t v = 0; v < n; ++v) a.valid_depths[v] = r.u8();
  a.costs.resize(n * static_cast<std::size_t>(k));
  for (double& c : a.costs) c = r.f64();
  return a;
}

void emit(const std::string& payload, std::ostream& sink) {
  sink.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!sink) throw io_error("failed writing index stream");
}

std::string seal(ByteWriter&& w) {
  const std::uint32_t crc = detail::crc32(w.buf.data(), w.buf.size());
  ByteWriter trailer;
  trailer.u32(crc);
  w.buf += trailer.buf;
  return std::move(w.buf);
}

std::string slurp(std::istream& in) {
  std::string data(std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>{});
  if (in.bad()) throw io_error("failed reading index stream");
  return data;
}

}  // namespace

void save_index(const LshIndex& index, std::ostream& sink) {
  ByteWriter w;
  write_header(w, IndexKind::lsh, index.cost_scope(), index.fingerprint(),
               index.depth(), index.box());
  write_axis_labels(w, index.labels(Axis::x));
  write_axis_labels(w, index.labels(Axis::y));
  emit(seal(std::move(w)), sink);
}

void save_index(const GshIndex& index, std::ostream& sink) {
  ByteWriter w;
  write_header(w, IndexKind::gsh, CostScope::full_graph, index.fingerprint(),
               index.separators_per_axis(), index.box());
  for (double p : index.line_positions()) w.f64(p);
  write_packed_codes(w, index.codes(Axis::x), index.separators_per_axis());
  write_packed_codes(w, index.codes(Axis::y), index.separators_per_axis());
  for (double c : index.costs(Axis::x)) w.f64(c);
  for (double c : index.costs(Axis::y)) w.f64(c);
  emit(seal(std::move(w)), sink);
}

namespace {

void save_file_impl(const std::string& path,
                    const std::function<void(std::ostream&)>& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open " + path + " for writing");
  writer(out);
  out.flush();
  if (!out) throw io_error("failed writing " + path);
}

}  // namespace

void save_index_file(const LshIndex& index, const std::string& path) {
  save_file_impl(path, [&](std::ostream& s) { save_index(index, s); });
}

void save_index_file(const GshIndex& index, const std::string& path) {
  save_file_impl(path, [&](std::ostream& s) { save_index(index, s); });
}

AnyIndex load_index(std::istream& source) {
  const std::string data = slurp(source);
  constexpr std::size_t kHeaderSize = 4 + 2 + 1 + 1 + 8 + 8 + 4 + 2 + 32;
  if (data.size() < kHeaderSize + 4) throw format_error("truncated index file");

  ByteReader r{data};
  if (data.compare(0, 4, kMagic, 4) != 0)
    throw format_error("bad magic, not a SEPH index file");
  r.pos = 4;
  const std::uint16_t version = r.u16();
  if (version != kVersion)
    throw format_error("unsupported index version " + std::to_string(version));
  const std::uint8_t kind_byte = r.u8();
  if (kind_byte > 1)
    throw format_error("bad index kind byte " + std::to_string(kind_byte));
  const auto kind = static_cast<IndexKind>(kind_byte);
  const std::uint8_t scope_byte = r.u8();
  if (scope_byte > 1)
    throw format_error("bad cost-scope byte " + std::to_string(scope_byte));
  const auto scope = static_cast<CostScope>(scope_byte);

  GraphFingerprint fp;
  fp.vertex_count = r.u64();
  fp.edge_count = r.u64();
  fp.cost_crc32 = r.u32();
  const int k = r.u16();
  if (k < 1 || k > kMaxTreeDepth)
    throw format_error("index depth " + std::to_string(k) + " out of range");
  BoundingBox box;
  box.x_min = r.f64();
  box.x_max = r.f64();
  box.y_min = r.f64();
  box.y_max = r.f64();

  const auto n = static_cast<std::size_t>(fp.vertex_count);
  const std::size_t cb = code_bytes_per_vertex(k);
  const std::size_t kk = static_cast<std::size_t>(k);
  const std::size_t payload =
      kind == IndexKind::lsh
          ? 2 * (n * cb + n + n * kk * 8)
          : 2 * kk * 8 + 2 * n * cb + 2 * n * kk * 8;
  if (data.size() != kHeaderSize + payload + 4)
    throw format_error("index file length does not match its header");

  const std::uint32_t stored_crc = [&] {
    ByteReader tail{data};
    tail.pos = data.size() - 4;
    return tail.u32();
  }();
  if (detail::crc32(data.data(), data.size() - 4) != stored_crc)
    throw format_error("index checksum mismatch");

  if (kind == IndexKind::lsh) {
    AxisLabels x = read_axis_labels(r, Axis::x, n, k);
    AxisLabels y = read_axis_labels(r, Axis::y, n, k);
    return LshIndex(std::move(x), std::move(y), box, fp, scope);
  }
  std::vector<double> positions(2 * kk);
  for (double& p : positions) p = r.f64();
  std::vector<std::uint32_t> x_codes = read_packed_codes(r, n, k);
  std::vector<std::uint32_t> y_codes = read_packed_codes(r, n, k);
  std::vector<double> x_costs(n * kk), y_costs(n * kk);
  for (double& c : x_costs) c = r.f64();
  for (double& c : y_costs) c = r.f64();
  return GshIndex(k, box, fp, std::move(positions), std::move(x_codes),
                  std::move(y_codes), std::move(x_costs), std::move(y_costs));
}

AnyIndex load_index_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  return load_index(in);
}

LshIndex load_lsh_index(std::istream& source) {
  AnyIndex any = load_index(source);
  if (auto* lsh = std::get_if<LshIndex>(&any)) return std::move(*lsh);
  throw format_error("expected an LSH index, found a GSH index");
}

GshIndex load_gsh_index(std::istream& source) {
  AnyIndex any = load_index(source);
  if (auto* gsh = std::get_if<GshIndex>(&any)) return std::move(*gsh);
  throw format_error("expected a GSH index, found an LSH index");
}

namespace {

using nlohmann::json;

std::string bitstring(std::uint32_t code, int k) {
  std::string s(static_cast<std::size_t>(k), '0');
  for (int i = 0; i < k; ++i)
    if ((code >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

json cost_value(double c) {
  if (std::isinf(c)) return json("inf");
  return json(c);
}

json costs_row(const double* row, int k) {
  json arr = json::array();
  for (int i = 0; i < k; ++i) arr.push_back(cost_value(row[i]));
  return arr;
}

json axis_to_json(const AxisLabels& a) {
  json out;
  json codes = json::array();
  json depths = json::array();
  json costs = json::array();
  const std::size_t n = a.vertex_count();
  for (std::size_t v = 0; v < n; ++v) {
    codes.push_back(bitstring(a.codes[v], a.k));
    depths.push_back(a.valid_depths[v]);
    costs.push_back(costs_row(a.costs.data() + v * a.k, a.k));
  }
  out["codes"] = std::move(codes);
  out["valid_depths"] = std::move(depths);
  out["costs"] = std::move(costs);
  return out;
}

void write_json(const json& j, std::ostream& sink) {
  sink << j.dump(2) << '\n';
  if (!sink) throw io_error("failed writing JSON output");
}

}  // namespace

void dump_index_json(const LshIndex& index, std::ostream& sink) {
  json j;
  j["kind"] = "lsh";
  j["k"] = index.depth();
  j["vertex_count"] = index.vertex_count();
  j["cost_scope"] = cost_scope_name(index.cost_scope());
  j["x"] = axis_to_json(index.labels(Axis::x));
  j["y"] = axis_to_json(index.labels(Axis::y));
  write_json(j, sink);
}

void dump_index_json(const GshIndex& index, std::ostream& sink) {
  json j;
  j["kind"] = "gsh";
  j["k"] = index.separators_per_axis();
  j["vertex_count"] = index.vertex_count();
  const int k = index.separators_per_axis();
  json lines = json::array();
  for (std::size_t i = 0; i < index.line_positions().size(); ++i) {
    lines.push_back({{"axis", i < static_cast<std::size_t>(k) ? "x" : "y"},
                     {"position", index.line_positions()[i]}});
  }
  j["lines"] = std::move(lines);
  for (Axis axis : {Axis::x, Axis::y}) {
    json codes = json::array();
    json costs = json::array();
    const auto n = index.vertex_count();
    for (std::size_t v = 0; v < n; ++v) {
      codes.push_back(bitstring(index.codes(axis)[v], k));
      costs.push_back(costs_row(index.costs(axis).data() + v * k, k));
    }
    j[axis_name(axis)] = {{"codes", std::move(codes)},
                          {"costs", std::move(costs)}};
  }
  write_json(j, sink);
}

}  // namespace septree
