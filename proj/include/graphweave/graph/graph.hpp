#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace graphweave {

using VertexId = std::int64_t;

struct Edge {
  VertexId src = 0;
  VertexId dst = 0;
  std::int64_t weight = 1;
  bool operator==(const Edge&) const = default;
};

/// Compressed adjacency: neighbors of v are neighbors[offsets[v] .. offsets[v+1]).
struct Adjacency {
  std::vector<std::int64_t> offsets;
  std::vector<VertexId> neighbors;
  std::vector<std::int64_t> weights;  // empty when unweighted

  std::int64_t degree(VertexId v) const { return offsets[v + 1] - offsets[v]; }
  std::span<const VertexId> of(VertexId v) const {
    return {neighbors.data() + offsets[v], static_cast<std::size_t>(degree(v))};
  }
};

class Graph {
 public:
  Graph() : out_{{0}, {}, {}}, in_{{0}, {}, {}} {}

  static Graph from_edges(std::int64_t n, const std::vector<Edge>& edges, bool weighted);
  static Graph from_csr(std::int64_t n, Adjacency out, bool weighted);

  std::int64_t num_vertices() const { return n_; }
  std::int64_t num_edges() const { return static_cast<std::int64_t>(out_.neighbors.size()); }
  bool weighted() const { return weighted_; }

  const Adjacency& out() const { return out_; }
  const Adjacency& in() const { return in_; }
  std::int64_t out_degree(VertexId v) const { return out_.degree(v); }
  std::int64_t in_degree(VertexId v) const { return in_.degree(v); }

  std::vector<Edge> edges() const;
  Graph transposed() const;
  /// Adds the reverse of every edge.
  Graph symmetrized() const;

 private:
  std::int64_t n_ = 0;
  bool weighted_ = false;
  Adjacency out_;
  Adjacency in_;
};

/// Builds CSR adjacency with edges grouped by `src` (stable within a source).
Adjacency build_adjacency(std::int64_t n, const std::vector<Edge>& edges, bool weighted, bool by_dst);

/// Text edge list: `src dst [weight]` per line, `#` comments, optional `# vertices N` header.
Graph load_edge_list(const std::string& path, bool weighted);
Graph parse_edge_list(const std::string& text, bool weighted, const std::string& name = "<input>");

/// Loads .el/.wel text (weights detected from the extension or a third column) or a binary
/// cache. A `<path>.csr` cache newer than the text file is used when present.
Graph load_graph(const std::string& path);

void write_edge_list(const Graph& g, const std::string& path);
void write_binary(const Graph& g, const std::string& path);
Graph read_binary(const std::string& path);
bool is_binary_graph(const std::string& path);

}  // namespace graphweave
