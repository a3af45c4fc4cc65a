#include "doctest.h"

#include <set>

#include "graphweave/error.hpp"
#include "support/harness.hpp"

using namespace gwtest;

namespace {

const char* kOneStep = R"(
element Vertex end
element Edge end
const edges : edgeset{Edge}(Vertex,Vertex) = load(argv[1]);
const vertices : vertexset{Vertex} = edges.getVertices();
const source : int = param("source", 0);
parent : vector{Vertex}(int) = -1;
hits : vector{Vertex}(int) = 0;
func updateEdge(src : Vertex, dst : Vertex)
    parent[dst] = src;
end
func toFilter(v : Vertex) -> output : bool
    output = parent[v] == -1;
end
func never(v : Vertex) -> output : bool
    output = false;
end
func bump(v : Vertex)
    hits[v] += 1;
end
func main()
    var frontier : vertexset{Vertex} = new vertexset{Vertex}(0);
    frontier.addVertex(source);
    parent[source] = source;
    #s1# var output : vertexset{Vertex} = edges.from(frontier).to(toFilter).applyModified(updateEdge, parent);
    var empty : vertexset{Vertex} = vertices.filter(never);
    #s2# var none : vertexset{Vertex} = edges.from(empty).to(toFilter).applyModified(updateEdge, parent);
    vertices.apply(bump);
    vertices.apply(bump);
    print empty.size();
    print output.size();
end
)";

Counters label_counters(const Outcome& o, const std::string& label) { return o.stats.for_label(label); }

}  // namespace

TEST_CASE("PageRankDelta on a 3-cycle is symmetric") {
  Graph g = edges_graph(3, {{0, 1}, {1, 2}, {2, 0}});
  Outcome o = run_app("prdelta", g, {"Rank"});
  const auto& r = o.vectors["Rank"];
  CHECK(r[0] == doctest::Approx(r[1]).epsilon(1e-12));
  CHECK(r[1] == doctest::Approx(r[2]).epsilon(1e-12));
}

TEST_CASE("BFS on a path") {
  Graph g = edges_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(run_app("bfs", g, {"parent"}).vectors["parent"] == std::vector<double>{0, 0, 1, 2});
}

TEST_CASE("SSSP matches Dijkstra on a small weighted graph") {
  Graph g = gen("rmat:20:80", 17, true);
  Outcome o = run_app("sssp", g, {"SP"});
  auto expected = ref::dijkstra(to_ref(g), 0, 4611686018427387903LL);
  std::vector<double> want(expected.begin(), expected.end());
  CHECK(o.vectors["SP"] == want);
}

TEST_CASE("PageRankDelta matches push, dense-push and pull loops") {
  Graph g = gen("rmat:1000:8000", 2);
  ref::EdgeList el = to_ref(g);
  CHECK(max_rel_diff(run_app("prdelta", g, {"Rank"}).vectors["Rank"], ref::prdelta(el, 0.85, 0.1, 10, ref::PrdMode::Push)) <=
        1e-12);
  RunSpec pull;
  pull.schedule = R"(program->configApplyDirection("s1","DensePull");)";
  CHECK(max_rel_diff(run_app("prdelta", g, {"Rank"}, pull).vectors["Rank"],
                     ref::prdelta(el, 0.85, 0.1, 10, ref::PrdMode::Pull)) <= 1e-12);
}

TEST_CASE("traversal counters by direction") {
  Graph star = gen("star:1000");
  Outcome sparse = run_source(kOneStep, star, {"parent"});
  Counters c = label_counters(sparse, "s1");
  CHECK(c.edges_examined == 999);
  CHECK(c.edges_applied == 999);

  RunSpec push;
  push.schedule = R"(program->configApplyDirection("s1","DensePush");)";
  Counters d = label_counters(run_source(kOneStep, star, {"parent"}, push), "s1");
  CHECK(d.membership_tests == 1000);
  CHECK(d.edges_applied == 999);

  Counters e = label_counters(sparse, "s2");
  CHECK(e.edges_examined == 0);
}

TEST_CASE("dense pull exits early once a vertex is claimed") {
  std::vector<std::pair<VertexId, VertexId>> es;
  for (VertexId u = 0; u < 8; ++u)
    for (VertexId v = 0; v < 8; ++v)
      if (u != v) es.push_back({u, v});
  Graph k8 = edges_graph(8, es);
  RunSpec pull;
  pull.schedule = R"(program->configApplyDirection("s1","DensePull");)";
  Outcome o = run_source(kOneStep, k8, {"parent"}, pull);
  // Source 0 is each vertex's first in-neighbor, so one examination per unclaimed dst.
  CHECK(label_counters(o, "s1").edges_examined == 7);
  CHECK(o.vectors["parent"] == std::vector<double>{0, 0, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("vertexset operations") {
  Graph g = gen("path:5");
  std::ostringstream printed;
  auto cp = compile_program(kOneStep);
  RunOptions ro;
  ro.print_out = &printed;
  ProgramRunner r(*cp, g, ro);
  r.prepare();
  r.run();
  CHECK(r.vector_values("hits") == std::vector<double>(5, 2));
  CHECK(printed.str() == "0\n1\n");
}

TEST_CASE("filter keeps vertices whose rank moved") {
  Graph g = gen("rmat:200:1600", 6);
  RunSpec one;
  one.params = {{"iters", "1"}};
  std::vector<std::int64_t> sizes;
  one.on_output = [](const std::string&, const Frontier&) {};
  Outcome o = run_app("prdelta", g, {"Rank"}, one);
  auto expected = ref::prdelta(to_ref(g), 0.85, 0.1, 1, ref::PrdMode::Push);
  CHECK(max_rel_diff(o.vectors["Rank"], expected) <= 1e-12);
}

TEST_CASE("one serial segment matches no segments") {
  Graph g = gen("rmat:1000:8000", 8);
  RunSpec plain, seg;
  plain.schedule = R"(program->configApplyDirection("s1","DensePull");)";
  seg.schedule = R"(program->configApplyDirection("s1","DensePull")->configApplyNumSSG("s1","fixed-vertex-count",1);)";
  Outcome a = run_app("pagerank", g, {"old_rank"}, plain);
  Outcome b = run_app("pagerank", g, {"old_rank"}, seg);
  CHECK(a.vectors["old_rank"] == b.vectors["old_rank"]);
  Counters ca = a.stats.totals, cb = b.stats.totals;
  CHECK(ca.edges_examined == cb.edges_examined);
  CHECK(ca.edges_applied == cb.edges_applied);

  RunSpec four;
  four.schedule = R"(program->configApplyDirection("s1","DensePull")->configApplyNumSSG("s1","fixed-vertex-count",4);)";
  CHECK(max_rel_diff(run_app("pagerank", g, {"old_rank"}, four).vectors["old_rank"], a.vectors["old_rank"]) <= 1e-9);
}

TEST_CASE("parallel segments merge local buffers") {
  Graph g = gen("rmat:500:4000", 12);
  RunSpec spec;
  spec.threads = 4;
  spec.schedule = R"(program->configApplyDirection("s1","DensePull")->configApplyParallelization("s1","dynamic-vertex-parallel",32)
      ->configApplyNumSSG("s1","fixed-vertex-count",4)->configApplyNUMA("s1","static-parallel");)";
  Outcome o = run_app("cc", g, {"IDs"}, spec);
  CHECK(o.vectors["IDs"] == run_app("cc", g, {"IDs"}).vectors["IDs"]);
  REQUIRE(!o.stats.traversals.empty());
  // Four segments, one buffered vector.
  for (const auto& t : o.stats.traversals) CHECK(t.counters.merge_ops == 4);
}

TEST_CASE("sparse push counts frontier out-degrees") {
  Graph g = gen("rmat:2000:16000", 3);
  RunSpec spec;
  std::vector<std::int64_t> expected;
  for (const auto& t : run_app("bfs", g, {}, spec).stats.traversals) {
    CHECK(t.variant == "SparsePush");
  }
  // Re-run while watching frontiers: each traversal examines the out-degree sum of its input.
  std::vector<std::int64_t> sums;
  Frontier current = Frontier::from_ids(g.num_vertices(), {0});
  sums.push_back(current.sum_out_degrees(g));
  spec.on_output = [&](const std::string&, const Frontier& f) { sums.push_back(f.sum_out_degrees(g)); };
  Outcome o = run_app("bfs", g, {}, spec);
  for (std::size_t i = 0; i < o.stats.traversals.size(); ++i) {
    CHECK(o.stats.traversals[i].counters.edges_examined == sums.at(i));
  }
}

TEST_CASE("hybrid selection follows the threshold") {
  Graph g = gen("rmat:5000:40000", 1);
  RunSpec hybrid;
  hybrid.schedule = R"(program->configApplyDirection("s1","DensePull-SparsePush");)";
  Outcome o = run_app("bfs", g, {}, hybrid);
  bool saw_dense = false, saw_sparse = false;
  for (const auto& t : o.stats.traversals) {
    saw_dense |= t.variant == "DensePull";
    saw_sparse |= t.variant == "SparsePush";
  }
  CHECK(saw_dense);
  CHECK(saw_sparse);
  hybrid.hybrid_threshold = 1e9;
  for (const auto& t : run_app("bfs", g, {}, hybrid).stats.traversals) CHECK(t.variant == "SparsePush");
}

TEST_CASE("runtime errors") {
  Graph g = gen("path:4");
  auto cp = compile_program(app_source("bfs"));
  ProgramRunner r(*cp, g);
  r.prepare();
  r.run();
  try {
    r.vector_values("nope");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::VectorNotFound);
    CHECK(e.is_runtime());
  }
  RunSpec bad;
  bad.params = {{"source", "99"}};
  try {
    run_app("bfs", g, {}, bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RuntimeError);
  }
}

TEST_CASE("runs are repeatable") {
  Graph g = gen("rmat:1000:8000", 4);
  auto cp = compile_program(app_source("prdelta"));
  ProgramRunner r(*cp, g);
  r.prepare();
  RunStats a = r.run();
  auto first = r.vector_values("Rank");
  RunStats b = r.run();
  CHECK(r.vector_values("Rank") == first);
  CHECK(a.totals == b.totals);
  CHECK(stats_to_json(a, "prdelta").find("\"edges_examined\"") != std::string::npos);
}
