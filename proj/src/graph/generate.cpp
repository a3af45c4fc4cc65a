#include "graphweave/graph/generate.hpp"

#include <random>
#include <sstream>

#include "graphweave/error.hpp"

namespace graphweave {

namespace {

std::int64_t weight(std::mt19937_64& rng, const GenOptions& opt, std::int64_t hi = 10) {
  if (!opt.weighted) return 1;
  return std::uniform_int_distribution<std::int64_t>(1, hi)(rng);
}

}  // namespace

std::vector<Edge> rmat_edges(std::int64_t n, std::int64_t m, const GenOptions& opt) {
  std::vector<Edge> out;
  if (n <= 0) return out;
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int scale = 0;
  while ((std::int64_t{1} << scale) < n) ++scale;
  const double a = 0.57, b = 0.19, c = 0.19;
  out.reserve(static_cast<std::size_t>(m));
  while (static_cast<std::int64_t>(out.size()) < m) {
    std::int64_t u = 0, v = 0;
    for (int level = 0; level < scale; ++level) {
      double r = unit(rng);
      int bit_u = 0, bit_v = 0;
      if (r < a) {
      } else if (r < a + b) {
        bit_v = 1;
      } else if (r < a + b + c) {
        bit_u = 1;
      } else {
        bit_u = bit_v = 1;
      }
      u = (u << 1) | bit_u;
      v = (v << 1) | bit_v;
    }
    if (u >= n || v >= n) continue;
    out.push_back(Edge{u, v, weight(rng, opt)});
  }
  return out;
}

std::vector<Edge> path_edges(std::int64_t n, const GenOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::vector<Edge> out;
  for (std::int64_t v = 0; v + 1 < n; ++v) out.push_back(Edge{v, v + 1, weight(rng, opt)});
  return out;
}

std::vector<Edge> grid_edges(std::int64_t rows, std::int64_t cols, const GenOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::vector<Edge> out;
  for (std::int64_t r = 0; r < rows; ++r) {
    for (std::int64_t c = 0; c < cols; ++c) {
      std::int64_t v = r * cols + c;
      if (c + 1 < cols) out.push_back(Edge{v, v + 1, weight(rng, opt)});
      if (r + 1 < rows) out.push_back(Edge{v, v + cols, weight(rng, opt)});
    }
  }
  return out;
}

std::vector<Edge> star_edges(std::int64_t n, const GenOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::vector<Edge> out;
  for (std::int64_t v = 1; v < n; ++v) out.push_back(Edge{0, v, weight(rng, opt)});
  return out;
}

std::vector<Edge> bipartite_edges(std::int64_t users, std::int64_t items, std::int64_t m, const GenOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::vector<Edge> out;
  if (users <= 0 || items <= 0) return out;
  std::uniform_int_distribution<std::int64_t> pick_user(0, users - 1);
  std::uniform_int_distribution<std::int64_t> pick_item(0, items - 1);
  std::uniform_int_distribution<std::int64_t> rating(1, 5);
  for (std::int64_t i = 0; i < m; ++i) {
    std::int64_t u = pick_user(rng);
    std::int64_t it = users + pick_item(rng);
    out.push_back(Edge{u, it, rating(rng)});
  }
  return out;
}

Graph make_graph(std::int64_t n, std::vector<Edge> edges, const GenOptions& opt) {
  if (opt.symmetrize) {
    std::size_t m = edges.size();
    edges.reserve(2 * m);
    for (std::size_t i = 0; i < m; ++i) edges.push_back(Edge{edges[i].dst, edges[i].src, edges[i].weight});
  }
  return Graph::from_edges(n, edges, opt.weighted);
}

Graph generate_graph(const std::string& spec, const GenOptions& opt) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  auto num = [&](std::size_t i) -> std::int64_t {
    if (i >= parts.size()) throw Error(ErrorKind::ParseError, "generator spec '" + spec + "' is missing a size");
    try {
      return std::stoll(parts[i]);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "generator spec '" + spec + "' has a bad number: " + parts[i]);
    }
  };
  const std::string kind = parts.empty() ? "" : parts[0];
  if (kind == "rmat") {
    std::int64_t n = num(1);
    std::int64_t m = parts.size() > 2 ? num(2) : 8 * n;
    return make_graph(n, rmat_edges(n, m, opt), opt);
  }
  if (kind == "path") return make_graph(num(1), path_edges(num(1), opt), opt);
  if (kind == "grid") return make_graph(num(1) * num(2), grid_edges(num(1), num(2), opt), opt);
  if (kind == "star") return make_graph(num(1), star_edges(num(1), opt), opt);
  if (kind == "bipartite") {
    GenOptions o = opt;
    o.weighted = true;
    o.symmetrize = false;
    return make_graph(num(1) + num(2), bipartite_edges(num(1), num(2), num(3), o), o);
  }
  throw Error(ErrorKind::ParseError, "unknown generator '" + kind + "' (expected rmat, path, grid, star, bipartite)");
}

}  // namespace graphweave
