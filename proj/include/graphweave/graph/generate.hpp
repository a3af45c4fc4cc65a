#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphweave/graph/graph.hpp"

namespace graphweave {

struct GenOptions {
  std::uint64_t seed = 1;
  bool weighted = false;  // uniform integer weights in [1, 10]
  bool symmetrize = false;
};

/// RMAT with a=0.57, b=0.19, c=0.19 over n vertices (ids outside [0, n) are resampled).
std::vector<Edge> rmat_edges(std::int64_t n, std::int64_t m, const GenOptions& opt);
std::vector<Edge> path_edges(std::int64_t n, const GenOptions& opt);
std::vector<Edge> grid_edges(std::int64_t rows, std::int64_t cols, const GenOptions& opt);
/// Center 0 connected to every other vertex.
std::vector<Edge> star_edges(std::int64_t n, const GenOptions& opt);
/// Users [0, users), items [users, users + items); weights are ratings in [1, 5].
std::vector<Edge> bipartite_edges(std::int64_t users, std::int64_t items, std::int64_t m, const GenOptions& opt);

/// Builds a graph from generated edges, adding reverse edges when opt.symmetrize.
Graph make_graph(std::int64_t n, std::vector<Edge> edges, const GenOptions& opt);

/// Parses a generator spec such as `rmat:10000:80000`, `path:10000`, `grid:100:100`,
/// `star:1000`, `bipartite:200:100:4000`.
Graph generate_graph(const std::string& spec, const GenOptions& opt);

}  // namespace graphweave
