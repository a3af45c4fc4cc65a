#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "graphweave/exec/program.hpp"
#include "graphweave/graph/generate.hpp"
#include "graphweave/lang/parser.hpp"
#include "graphweave/pipeline.hpp"

namespace gwtest {

using namespace graphweave;

inline std::string app_path(const std::string& name) { return std::string(GRAPHWEAVE_APPS_DIR) + "/" + name; }

inline std::string app_source(const std::string& name) {
  std::ifstream f(app_path(name + ".gt"));
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline Graph gen(const std::string& spec, std::uint64_t seed = 1, bool weighted = false) {
  GenOptions o;
  o.seed = seed;
  o.weighted = weighted;
  return generate_graph(spec, o);
}

inline Graph edges_graph(std::int64_t n, const std::vector<std::pair<VertexId, VertexId>>& es) {
  std::vector<Edge> edges;
  for (auto [s, d] : es) edges.push_back(Edge{s, d, 1});
  return Graph::from_edges(n, edges, false);
}

struct Outcome {
  std::unique_ptr<CompiledProgram> cp;
  RunStats stats;
  std::map<std::string, std::vector<double>> vectors;
};

struct RunSpec {
  std::string schedule;  // scheduling calls; empty for the default
  std::map<std::string, std::string> params;
  int threads = 1;
  double hybrid_threshold = 0.05;
  std::function<void(const std::string&, const Frontier&)> on_output;
};

inline Outcome run_source(const std::string& source, const Graph& g, const std::vector<std::string>& vectors,
                          const RunSpec& spec = {}) {
  Outcome o;
  Schedule s = spec.schedule.empty() ? Schedule{} : parse_schedule_text(spec.schedule);
  o.cp = compile_program(source, s);
  RunOptions ro;
  ro.params = spec.params;
  ro.threads = spec.threads;
  ro.hybrid_threshold = spec.hybrid_threshold;
  ro.on_output = spec.on_output;
  ProgramRunner r(*o.cp, g, ro);
  r.prepare();
  o.stats = r.run();
  for (const auto& v : vectors) o.vectors[v] = r.vector_values(v);
  return o;
}

inline Outcome run_app(const std::string& name, const Graph& g, const std::vector<std::string>& vectors,
                       const RunSpec& spec = {}) {
  return run_source(app_source(name), g, vectors, spec);
}

/// Largest relative difference; pairs closer than `abs_floor` count as equal.
inline double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b, double abs_floor = 0) {
  if (a.size() != b.size()) return 1e300;
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = std::fabs(a[i] - b[i]);
    if (d <= abs_floor) continue;
    double scale = std::max(std::fabs(a[i]), std::fabs(b[i]));
    worst = std::max(worst, d / scale);
  }
  return worst;
}

}  // namespace gwtest

#include "support/reference.hpp"

namespace gwtest {

inline ref::EdgeList to_ref(const Graph& g) {
  ref::EdgeList r;
  r.n = g.num_vertices();
  for (const Edge& e : g.edges()) {
    r.src.push_back(e.src);
    r.dst.push_back(e.dst);
    r.w.push_back(g.weighted() ? e.weight : 1);
  }
  return r;
}

/// BFS depth of every vertex implied by a parent array (-1 when unreached or cyclic).
inline std::vector<std::int64_t> levels_from_parents(const std::vector<double>& parent) {
  std::int64_t n = static_cast<std::int64_t>(parent.size());
  std::vector<std::int64_t> lvl(n, -2);
  for (std::int64_t v = 0; v < n; ++v) {
    std::vector<std::int64_t> chain;
    std::int64_t u = v;
    while (lvl[u] == -2) {
      auto p = static_cast<std::int64_t>(parent[u]);
      if (p < 0 || p >= n) {
        lvl[u] = -1;
        break;
      }
      if (p == u) {
        lvl[u] = 0;
        break;
      }
      if (static_cast<std::int64_t>(chain.size()) > n) {
        lvl[u] = -1;
        break;
      }
      chain.push_back(u);
      u = p;
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      auto p = static_cast<std::int64_t>(parent[*it]);
      lvl[*it] = lvl[p] < 0 ? -1 : lvl[p] + 1;
    }
  }
  return lvl;
}

}  // namespace gwtest
