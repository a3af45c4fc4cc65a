#pragma once

#include <vector>

#include "graphweave/graph/graph.hpp"

namespace graphweave {

enum class PartitionScheme { FVC, EVC };

/// Which adjacency the outer loop walks: push walks out-edges (outer = src),
/// pull walks in-edges (outer = dst).
enum class TraversalSide { Push, Pull };

struct SegmentedSubgraph {
  int id = 0;
  VertexId inner_lo = 0;
  VertexId inner_hi = 0;
  Adjacency adj;  // indexed by outer vertex; holds only inner endpoints in [inner_lo, inner_hi)
  std::int64_t num_edges() const { return static_cast<std::int64_t>(adj.neighbors.size()); }
};

std::vector<SegmentedSubgraph> build_ssgs(const Graph& g, int num_segments, PartitionScheme scheme,
                                          TraversalSide side);

/// Segment boundaries only: size num_segments + 1, from 0 to n.
std::vector<VertexId> ssg_boundaries(const Graph& g, int num_segments, PartitionScheme scheme, TraversalSide side);

struct BlockedChunks {
  std::vector<VertexId> start;
  std::vector<VertexId> end;
  std::size_t size() const { return start.size(); }
};

/// Chunks [lo, hi). FVC: `grain` vertices each. EVC: a chunk closes once its
/// accumulated degree reaches `grain`.
BlockedChunks build_bsg_chunks(VertexId lo, VertexId hi, const std::vector<std::int64_t>& degrees,
                               std::int64_t grain, PartitionScheme scheme);

}  // namespace graphweave
