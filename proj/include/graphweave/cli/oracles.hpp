#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphweave/graph/graph.hpp"

namespace graphweave::oracle {

inline constexpr std::int64_t kInfDistance = 4611686018427387903;
inline constexpr int kLatentDim = 8;

/// Power iteration starting from 1/n; returns the rank after `iters` rounds.
std::vector<double> pagerank(const Graph& g, double damp, int iters);
/// PageRankDelta written directly as frontier loops (push).
std::vector<double> prdelta(const Graph& g, double damp, double epsilon, int iters);
/// BFS level per vertex, -1 when unreached.
std::vector<std::int64_t> bfs_levels(const Graph& g, VertexId source);
/// Fixpoint of min-label propagation along edges.
std::vector<std::int64_t> cc_labels(const Graph& g);
/// Dijkstra; unreachable vertices get kInfDistance.
std::vector<std::int64_t> sssp(const Graph& g, VertexId source);
/// Single-source Brandes dependencies.
std::vector<double> bc(const Graph& g, VertexId source);

/// Latent factors: user[k][v], item[k][v].
struct Latent {
  std::vector<std::vector<double>> user;
  std::vector<std::vector<double>> item;
};
Latent cf_initial(std::int64_t n);
/// 0.5 * squared rating error plus 0.5 * lambda * squared norms of every rating endpoint's factors.
double cf_loss(const Graph& g, const Latent& l, double lambda);
/// Serial stochastic gradient passes in edge order.
Latent cf_sgd(const Graph& g, double step, double lambda, int iters);

/// Checks a BFS parent array against reference levels; returns the first problem.
std::optional<std::string> check_bfs_parents(const Graph& g, VertexId source, const std::vector<double>& parent,
                                             const std::vector<std::int64_t>& levels);

}  // namespace graphweave::oracle
