#include "septree/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <queue>
#include <random>
#include <string>

#include "septree/detail/crc32.hpp"
#include "septree/detail/rng.hpp"

namespace septree {

double BoundingBox::diagonal() const {
  const double w = width();
  const double h = height();
  return std::sqrt(w * w + h * h);
}

namespace {

GraphFingerprint compute_fingerprint(const RoadGraph& g) {
  detail::Crc32 crc;
  const auto n = static_cast<VertexId>(g.vertex_count());
  for (VertexId u = 0; u < n; ++u) {
    for (const Arc& a : g.arcs(u)) {
      unsigned char buf[12];
      std::uint32_t to = a.to;
      std::uint64_t bits = std::bit_cast<std::uint64_t>(a.cost);
      for (int i = 0; i < 4; ++i) buf[i] = static_cast<unsigned char>(to >> (8 * i));
      for (int i = 0; i < 8; ++i) buf[4 + i] = static_cast<unsigned char>(bits >> (8 * i));
      crc.update(buf, sizeof buf);
    }
  }
  GraphFingerprint fp;
  fp.vertex_count = g.vertex_count();
  fp.edge_count = g.edge_count();
  fp.cost_crc32 = crc.value();
  return fp;
}

}  // namespace

RoadGraph::RoadGraph(std::vector<double> x, std::vector<double> y,
                     const std::vector<Edge>& edges)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size())
    throw validation_error("coordinate arrays differ in length");
  const std::size_t n = x_.size();
  for (std::size_t v = 0; v < n; ++v) {
    if (!std::isfinite(x_[v]) || !std::isfinite(y_[v]))
      throw validation_error("non-finite coordinate at vertex " +
                             std::to_string(v));
  }

  std::vector<Edge> norm;
  norm.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n)
      throw structural_error("edge (" + std::to_string(e.u) + "," +
                             std::to_string(e.v) +
                             ") references an unknown vertex");
    if (e.u == e.v)
      throw structural_error("self-loop at vertex " + std::to_string(e.u));
    if (!std::isfinite(e.cost) || e.cost <= 0.0)
      throw validation_error("edge (" + std::to_string(e.u) + "," +
                             std::to_string(e.v) +
                             ") has nonpositive or non-finite cost");
    norm.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.cost});
  }

  std::sort(norm.begin(), norm.end(), [](const Edge& a, const Edge& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    return a.cost < b.cost;
  });
  // Parallel edges collapse to the minimum cost.
  std::vector<Edge> uniq;
  uniq.reserve(norm.size());
  for (const Edge& e : norm) {
    if (!uniq.empty() && uniq.back().u == e.u && uniq.back().v == e.v) continue;
    uniq.push_back(e);
  }
  edge_count_ = uniq.size();

  offsets_.assign(n + 1, 0);
  for (const Edge& e : uniq) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
  arcs_.resize(2 * edge_count_);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : uniq) {
    arcs_[cursor[e.u]++] = {e.v, e.cost};
    arcs_[cursor[e.v]++] = {e.u, e.cost};
  }
  // Edges were sorted, so each adjacency list comes out ordered by neighbor.

  fingerprint_ = compute_fingerprint(*this);
}

void RoadGraph::check_vertex(VertexId v) const {
  if (v >= vertex_count())
    throw validation_error("vertex id " + std::to_string(v) +
                           " out of range (n=" +
                           std::to_string(vertex_count()) + ")");
}

bool RoadGraph::is_connected() const {
  const std::size_t n = vertex_count();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::queue<VertexId> queue;
  queue.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop();
    for (const Arc& a : arcs(u)) {
      if (!seen[a.to]) {
        seen[a.to] = 1;
        ++reached;
        queue.push(a.to);
      }
    }
  }
  return reached == n;
}

RoadGraph generate_synthetic(const SyntheticParams& p) {
  if (p.rows < 2 || p.cols < 2)
    throw validation_error("synthetic grid needs rows,cols >= 2");
  if (!(p.drop_prob >= 0.0) || p.drop_prob >= 0.3)
    throw validation_error("drop_prob must lie in [0, 0.3)");
  if (p.cell_size <= 0.0 || !std::isfinite(p.cell_size))
    throw validation_error("cell_size must be positive");
  if (p.speed_classes.empty())
    throw validation_error("speed_classes must be nonempty");
  for (double s : p.speed_classes) {
    if (!(s > 0.0) || !std::isfinite(s))
      throw validation_error("speed classes must be positive");
  }

  std::mt19937_64 rng(p.seed);
  const std::size_t n = p.rows * p.cols;
  std::vector<double> xs(n), ys(n);
  const double jitter = 0.3 * p.cell_size;
  for (std::size_t r = 0; r < p.rows; ++r) {
    for (std::size_t c = 0; c < p.cols; ++c) {
      const std::size_t id = r * p.cols + c;
      xs[id] = static_cast<double>(c) * p.cell_size +
               detail::uniform(rng, -jitter, jitter);
      ys[id] = static_cast<double>(r) * p.cell_size +
               detail::uniform(rng, -jitter, jitter);
    }
  }

  std::vector<Edge> edges;
  edges.reserve(2 * n);
  auto maybe_edge = [&](std::size_t a, std::size_t b) {
    if (detail::u01(rng) < p.drop_prob) return;
    const double speed =
        p.speed_classes[detail::uniform_index(rng, p.speed_classes.size())];
    const double dx = xs[a] - xs[b];
    const double dy = ys[a] - ys[b];
    const double len = std::sqrt(dx * dx + dy * dy);
    edges.push_back({static_cast<VertexId>(a), static_cast<VertexId>(b),
                     len / speed});
  };
  for (std::size_t r = 0; r < p.rows; ++r)
    for (std::size_t c = 0; c + 1 < p.cols; ++c)
      maybe_edge(r * p.cols + c, r * p.cols + c + 1);
  for (std::size_t r = 0; r + 1 < p.rows; ++r)
    for (std::size_t c = 0; c < p.cols; ++c)
      maybe_edge(r * p.cols + c, (r + 1) * p.cols + c);

  RoadGraph full(std::move(xs), std::move(ys), edges);
  return largest_connected_component(full).first;
}

std::pair<RoadGraph, std::vector<VertexId>> largest_connected_component(
    const RoadGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> label(n, kInvalidVertex);
  std::uint32_t components = 0;
  std::size_t best_size = 0;
  std::uint32_t best_label = 0;
  std::queue<VertexId> queue;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] != kInvalidVertex) continue;
    const std::uint32_t cur = components++;
    std::size_t size = 0;
    label[s] = cur;
    queue.push(static_cast<VertexId>(s));
    while (!queue.empty()) {
      VertexId u = queue.front();
      queue.pop();
      ++size;
      for (const Arc& a : g.arcs(u)) {
        if (label[a.to] == kInvalidVertex) {
          label[a.to] = cur;
          queue.push(a.to);
        }
      }
    }
    if (size > best_size) {
      best_size = size;
      best_label = cur;
    }
  }

  std::vector<VertexId> old_to_new(n, kInvalidVertex);
  std::vector<double> xs, ys;
  xs.reserve(best_size);
  ys.reserve(best_size);
  VertexId next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (label[v] == best_label) {
      old_to_new[v] = next++;
      xs.push_back(g.x(static_cast<VertexId>(v)));
      ys.push_back(g.y(static_cast<VertexId>(v)));
    }
  }
  std::vector<Edge> edges;
  for_each_edge(g, [&](VertexId u, VertexId w, double cost) {
    if (old_to_new[u] != kInvalidVertex && old_to_new[w] != kInvalidVertex)
      edges.push_back({old_to_new[u], old_to_new[w], cost});
  });
  return {RoadGraph(std::move(xs), std::move(ys), edges),
          std::move(old_to_new)};
}

BoundingBox bounding_box(const RoadGraph& g) {
  if (g.vertex_count() == 0)
    throw validation_error("bounding_box of an empty graph");
  BoundingBox box{g.x(0), g.x(0), g.y(0), g.y(0)};
  const auto n = static_cast<VertexId>(g.vertex_count());
  for (VertexId v = 1; v < n; ++v) {
    box.x_min = std::min(box.x_min, g.x(v));
    box.x_max = std::max(box.x_max, g.x(v));
    box.y_min = std::min(box.y_min, g.y(v));
    box.y_max = std::max(box.y_max, g.y(v));
  }
  return box;
}

double euclidean_distance(const RoadGraph& g, VertexId u, VertexId v) {
  g.check_vertex(u);
  g.check_vertex(v);
  const double dx = g.x(u) - g.x(v);
  const double dy = g.y(u) - g.y(v);
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace septree
