#include "graphweave/graph/partition.hpp"

#include <algorithm>

#include "graphweave/error.hpp"

namespace graphweave {

std::vector<VertexId> ssg_boundaries(const Graph& g, int num_segments, PartitionScheme scheme, TraversalSide side) {
  if (num_segments < 1) throw Error(ErrorKind::ZeroSegments, "number of segments must be at least 1");
  const std::int64_t n = g.num_vertices();
  const auto k = static_cast<std::int64_t>(num_segments);
  std::vector<VertexId> b(k + 1, n);
  b[0] = 0;
  if (scheme == PartitionScheme::FVC) {
    std::int64_t width = (n + k - 1) / k;
    for (std::int64_t i = 1; i < k; ++i) b[i] = std::min(n, i * width);
    return b;
  }
  // Edges per inner vertex: pull segments by src (out-degree), push by dst (in-degree).
  std::vector<std::int64_t> prefix(n + 1, 0);
  for (VertexId v = 0; v < n; ++v) {
    prefix[v + 1] = prefix[v] + (side == TraversalSide::Pull ? g.out_degree(v) : g.in_degree(v));
  }
  const std::int64_t m = prefix[n];
  for (std::int64_t i = 1; i < k; ++i) {
    std::int64_t target = i * m / k;
    auto it = std::lower_bound(prefix.begin(), prefix.end(), target);
    b[i] = std::max(b[i - 1], static_cast<VertexId>(it - prefix.begin()));
  }
  return b;
}

std::vector<SegmentedSubgraph> build_ssgs(const Graph& g, int num_segments, PartitionScheme scheme,
                                          TraversalSide side) {
  std::vector<VertexId> b = ssg_boundaries(g, num_segments, scheme, side);
  const Adjacency& full = side == TraversalSide::Pull ? g.in() : g.out();
  const std::int64_t n = g.num_vertices();
  const bool weighted = !full.weights.empty();
  std::vector<SegmentedSubgraph> out(num_segments);
  for (int s = 0; s < num_segments; ++s) {
    SegmentedSubgraph& sg = out[s];
    sg.id = s;
    sg.inner_lo = b[s];
    sg.inner_hi = b[s + 1];
    sg.adj.offsets.assign(n + 1, 0);
  }
  // Count, then fill; adjacency lists are sorted by insertion so slices keep the graph's order.
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId u : full.of(v)) {
      auto seg = static_cast<int>(std::upper_bound(b.begin(), b.end(), u) - b.begin()) - 1;
      ++out[seg].adj.offsets[v + 1];
    }
  }
  for (auto& sg : out) {
    for (VertexId v = 0; v < n; ++v) sg.adj.offsets[v + 1] += sg.adj.offsets[v];
    sg.adj.neighbors.resize(sg.adj.offsets[n]);
    if (weighted) sg.adj.weights.resize(sg.adj.offsets[n]);
  }
  std::vector<std::vector<std::int64_t>> cursor(num_segments);
  for (int s = 0; s < num_segments; ++s) cursor[s].assign(out[s].adj.offsets.begin(), out[s].adj.offsets.end() - 1);
  for (VertexId v = 0; v < n; ++v) {
    for (std::int64_t i = full.offsets[v]; i < full.offsets[v + 1]; ++i) {
      VertexId u = full.neighbors[i];
      auto seg = static_cast<int>(std::upper_bound(b.begin(), b.end(), u) - b.begin()) - 1;
      std::int64_t at = cursor[seg][v]++;
      out[seg].adj.neighbors[at] = u;
      if (weighted) out[seg].adj.weights[at] = full.weights[i];
    }
  }
  return out;
}

BlockedChunks build_bsg_chunks(VertexId lo, VertexId hi, const std::vector<std::int64_t>& degrees,
                               std::int64_t grain, PartitionScheme scheme) {
  BlockedChunks c;
  if (grain < 1) grain = 1;
  if (scheme == PartitionScheme::FVC) {
    for (VertexId s = lo; s < hi; s += grain) {
      c.start.push_back(s);
      c.end.push_back(std::min(hi, s + grain));
    }
    return c;
  }
  VertexId s = lo;
  std::int64_t acc = 0;
  for (VertexId v = lo; v < hi; ++v) {
    acc += degrees[v];
    if (acc >= grain) {
      c.start.push_back(s);
      c.end.push_back(v + 1);
      s = v + 1;
      acc = 0;
    }
  }
  if (s < hi) {
    c.start.push_back(s);
    c.end.push_back(hi);
  }
  return c;
}

}  // namespace graphweave
