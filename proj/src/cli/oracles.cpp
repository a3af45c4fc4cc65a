#include "graphweave/cli/oracles.hpp"

#include <cmath>
#include <deque>
#include <queue>
#include <sstream>

namespace graphweave::oracle {

std::vector<double> pagerank(const Graph& g, double damp, int iters) {
  std::int64_t n = g.num_vertices();
  std::vector<double> rank(n, 1.0 / n), next(n, 0.0);
  double beta = (1.0 - damp) / n;
  for (int it = 0; it < iters; ++it) {
    for (VertexId s = 0; s < n; ++s) {
      for (VertexId d : g.out().of(s)) next[d] += rank[s] / g.out_degree(s);
    }
    for (VertexId v = 0; v < n; ++v) {
      rank[v] = beta + damp * next[v];
      next[v] = 0.0;
    }
  }
  return rank;
}

std::vector<double> prdelta(const Graph& g, double damp, double epsilon, int iters) {
  std::int64_t n = g.num_vertices();
  double inv_n = 1.0 / n;
  double base = (1.0 - damp) / n;
  std::vector<double> rank(n, 0.0), delta(n, inv_n), sum(n, 0.0);
  std::vector<VertexId> frontier(n);
  for (VertexId v = 0; v < n; ++v) frontier[v] = v;
  for (int it = 0; it < iters; ++it) {
    for (VertexId s : frontier) {
      for (VertexId d : g.out().of(s)) sum[d] += delta[s] / g.out_degree(s);
    }
    frontier.clear();
    for (VertexId v = 0; v < n; ++v) {
      if (it == 0) {
        delta[v] = damp * sum[v] + base;
        delta[v] -= inv_n;
      } else {
        delta[v] = sum[v] * damp;
      }
      rank[v] += delta[v];
      sum[v] = 0.0;
      if (std::fabs(delta[v]) > epsilon * rank[v]) frontier.push_back(v);
    }
  }
  return rank;
}

std::vector<std::int64_t> bfs_levels(const Graph& g, VertexId source) {
  std::vector<std::int64_t> level(g.num_vertices(), -1);
  std::deque<VertexId> q{source};
  level[source] = 0;
  while (!q.empty()) {
    VertexId u = q.front();
    q.pop_front();
    for (VertexId w : g.out().of(u)) {
      if (level[w] < 0) {
        level[w] = level[u] + 1;
        q.push_back(w);
      }
    }
  }
  return level;
}

std::vector<std::int64_t> cc_labels(const Graph& g) {
  std::int64_t n = g.num_vertices();
  std::vector<std::int64_t> label(n);
  for (VertexId v = 0; v < n; ++v) label[v] = v;
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexId s = 0; s < n; ++s) {
      for (VertexId d : g.out().of(s)) {
        if (label[s] < label[d]) {
          label[d] = label[s];
          changed = true;
        }
      }
    }
  }
  return label;
}

std::vector<std::int64_t> sssp(const Graph& g, VertexId source) {
  std::vector<std::int64_t> dist(g.num_vertices(), kInfDistance);
  using Item = std::pair<std::int64_t, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[source] = 0;
  pq.push({0, source});
  const Adjacency& out = g.out();
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != dist[u]) continue;
    for (std::int64_t e = out.offsets[u]; e < out.offsets[u + 1]; ++e) {
      std::int64_t w = out.weights.empty() ? 1 : out.weights[e];
      VertexId v = out.neighbors[e];
      if (d + w < dist[v]) {
        dist[v] = d + w;
        pq.push({dist[v], v});
      }
    }
  }
  return dist;
}

std::vector<double> bc(const Graph& g, VertexId source) {
  std::int64_t n = g.num_vertices();
  std::vector<double> sigma(n, 0.0), delta(n, 0.0);
  std::vector<std::int64_t> dist(n, -1);
  std::vector<VertexId> order;
  std::deque<VertexId> q{source};
  sigma[source] = 1.0;
  dist[source] = 0;
  while (!q.empty()) {
    VertexId u = q.front();
    q.pop_front();
    order.push_back(u);
    for (VertexId w : g.out().of(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push_back(w);
      }
      if (dist[w] == dist[u] + 1) sigma[w] += sigma[u];
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    VertexId u = *it;
    for (VertexId w : g.out().of(u)) {
      if (dist[w] == dist[u] + 1) delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w]);
    }
  }
  return delta;
}

Latent cf_initial(std::int64_t n) {
  Latent l;
  l.user.assign(kLatentDim, std::vector<double>(n));
  l.item.assign(kLatentDim, std::vector<double>(n));
  for (int k = 0; k < kLatentDim; ++k) {
    for (VertexId v = 0; v < n; ++v) {
      l.user[k][v] = 0.1 + 0.1 / std::sqrt(static_cast<double>(v + k + 1));
      l.item[k][v] = 0.1 + 0.1 / std::sqrt(static_cast<double>(v + 3 + 2 * k));
    }
  }
  return l;
}

double cf_loss(const Graph& g, const Latent& l, double lambda) {
  double loss = 0.0;
  for (const Edge& e : g.edges()) {
    double est = 0.0;
    for (int k = 0; k < kLatentDim; ++k) est += l.user[k][e.src] * l.item[k][e.dst];
    double err = static_cast<double>(e.weight) - est;
    loss += 0.5 * err * err;
  }
  double reg = 0.0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    for (int k = 0; k < kLatentDim; ++k) {
      if (g.out_degree(v) > 0) reg += l.user[k][v] * l.user[k][v];
      if (g.in_degree(v) > 0) reg += l.item[k][v] * l.item[k][v];
    }
  }
  return loss + 0.5 * lambda * reg;
}

Latent cf_sgd(const Graph& g, double step, double lambda, int iters) {
  Latent l = cf_initial(g.num_vertices());
  std::vector<Edge> edges = g.edges();
  for (int it = 0; it < iters; ++it) {
    for (const Edge& e : edges) {
      double est = 0.0;
      for (int k = 0; k < kLatentDim; ++k) est += l.user[k][e.src] * l.item[k][e.dst];
      double err = static_cast<double>(e.weight) - est;
      for (int k = 0; k < kLatentDim; ++k) {
        double u = l.user[k][e.src];
        double i = l.item[k][e.dst];
        l.user[k][e.src] += step * (i * err - lambda * u);
        l.item[k][e.dst] += step * (u * err - lambda * i);
      }
    }
  }
  return l;
}

std::optional<std::string> check_bfs_parents(const Graph& g, VertexId source, const std::vector<double>& parent,
                                             const std::vector<std::int64_t>& levels) {
  std::int64_t n = g.num_vertices();
  auto problem = [](VertexId v, const std::string& what) {
    std::ostringstream os;
    os << "vertex " << v << ": " << what;
    return std::optional<std::string>(os.str());
  };
  if (static_cast<std::int64_t>(parent.size()) != n) return problem(0, "parent array has the wrong length");
  for (VertexId v = 0; v < n; ++v) {
    auto p = static_cast<std::int64_t>(parent[v]);
    if (levels[v] < 0) {
      if (p != -1) return problem(v, "unreachable but has parent " + std::to_string(p));
      continue;
    }
    if (v == source) {
      if (p != source) return problem(v, "source parent is " + std::to_string(p));
      continue;
    }
    if (p < 0 || p >= n) return problem(v, "reachable but parent is " + std::to_string(p));
    if (levels[p] != levels[v] - 1) return problem(v, "parent " + std::to_string(p) + " is not one level up");
    bool edge = false;
    for (VertexId w : g.out().of(p)) edge = edge || w == v;
    if (!edge) return problem(v, "no edge from parent " + std::to_string(p));
  }
  return std::nullopt;
}

}  // namespace graphweave::oracle
