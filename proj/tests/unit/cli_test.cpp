#include "doctest.h"

#include <set>

#include <filesystem>
#include <fstream>

#include "graphweave/cli/commands.hpp"
#include "graphweave/cli/corpus.hpp"
#include "graphweave/cli/oracles.hpp"
#include "graphweave/error.hpp"
#include "support/harness.hpp"

using namespace gwtest;

namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name, const std::string& content) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

struct Ran {
  int code;
  std::string out;
  std::string err;
};

template <class Fn>
Ran capture(Fn&& fn) {
  std::ostringstream out, err;
  int code = guarded([&] { return fn(out); }, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("run prints the output vector") {
  fs::path g = temp_file("gw_path4.el", "0 1\n1 2\n2 3\n");
  RunConfig c;
  c.program = "bfs";
  c.graph = g.string();
  c.params = {{"source", "0"}};
  Ran r = capture([&](std::ostream& o) { return cmd_run(c, o); });
  CHECK(r.code == 0);
  CHECK(r.out == "0\t0\n1\t0\n2\t1\n3\t2\n");
}

TEST_CASE("run writes stats") {
  fs::path g = temp_file("gw_cycle.el", "0 1\n1 2\n2 0\n");
  fs::path stats = fs::temp_directory_path() / "gw_stats.json";
  RunConfig c;
  c.program = app_path("prdelta.gt");
  c.graph = g.string();
  c.params = {{"iters", "10"}};
  c.stats = stats.string();
  Ran r = capture([&](std::ostream& o) { return cmd_run(c, o); });
  CHECK(r.code == 0);
  CHECK(r.out.find("0\t") == 0);
  std::ifstream in(stats);
  std::string json((std::istreambuf_iterator<char>(in)), {});
  CHECK(json.find("edges_examined") != std::string::npos);
}

TEST_CASE("error exits") {
  RunConfig c;
  c.program = "bfs";
  c.graph = "/nonexistent/graph.el";
  Ran r = capture([&](std::ostream& o) { return cmd_run(c, o); });
  CHECK(r.code == 1);
  CHECK(r.err.find("/nonexistent/graph.el") != std::string::npos);

  c.program = "no_such_program";
  c.graph = "gen:path:4";
  CHECK(capture([&](std::ostream& o) { return cmd_run(c, o); }).code == 1);

  c.program = "bfs";
  c.params = {{"source", "100"}};
  CHECK(capture([&](std::ostream& o) { return cmd_run(c, o); }).code == 2);

  BenchConfig b;
  b.programs = {"bfs"};
  b.graphs = {"gen:path:10"};
  b.repeats = 0;
  Ran br = capture([&](std::ostream& o) { return cmd_bench(b, o); });
  CHECK(br.code == 1);
  CHECK(br.err.find("BudgetZero") != std::string::npos);
}

TEST_CASE("verify agrees on small graphs") {
  fs::path g = temp_file("gw_triangles.el", "0 1\n1 2\n2 0\n1 0\n2 1\n0 2\n3 4\n4 5\n5 3\n4 3\n5 4\n3 5\n");
  for (const char* prog : {"cc", "bfs", "prdelta", "pagerank", "bc"}) {
    CAPTURE(prog);
    VerifyConfig v;
    v.program = prog;
    v.graph = g.string();
    v.threads = 2;
    Ran r = capture([&](std::ostream& o) { return cmd_verify(v, o); });
    CHECK(r.code == 0);
  }
  RunConfig c;
  c.program = "cc";
  c.graph = g.string();
  CHECK(capture([&](std::ostream& o) { return cmd_run(c, o); }).out == "0\t0\n1\t0\n2\t0\n3\t3\n4\t3\n5\t3\n");
}

TEST_CASE("verify on a weighted generated graph and value comparison") {
  VerifyConfig v;
  v.program = "sssp";
  v.graph = "gen:rmat:200:1600:w";
  Ran r = capture([&](std::ostream& o) { return cmd_verify(v, o); });
  CHECK(r.code == 0);
  CHECK(compare_values({1, 2, 3}, {1, 2, 4}, 0).has_value());
  CHECK_FALSE(compare_values({1, 2, 3}, {1, 2, 3 + 1e-9}, 1e-6).has_value());
  CHECK_FALSE(compare_values({0.0}, {1e-13}, 1e-6).has_value());
}

TEST_CASE("bench rows") {
  BenchConfig b;
  b.programs = {"pagerank", "prdelta", "bfs", "cc", "sssp", "bc", "cf"};
  b.graphs = {"gen:rmat:200:1600", "gen:grid:10:10"};
  b.repeats = 1;
  Ran r = capture([&](std::ostream& o) { return cmd_bench(b, o); });
  CHECK(r.code == 0);
  std::int64_t lines = std::count(r.out.begin(), r.out.end(), '\n');
  CHECK(lines == 1 + 14);
}

TEST_CASE("hybrid BFS examines fewer edges on a low-diameter graph") {
  Graph g = gen("rmat:5000:40000", 2);
  for (const char* prog : {"bfs"}) {
    CAPTURE(prog);
    std::string src = app_source(prog);
    RunSpec sparse, hybrid;
    sparse.schedule = R"(program->configApplyDirection("s1","SparsePush");)";
    hybrid.schedule = R"(program->configApplyDirection("s1","DensePull-SparsePush");)";
    auto es = run_source(src, g, {}, sparse).stats.totals.edges_examined;
    auto eh = run_source(src, g, {}, hybrid).stats.totals.edges_examined;
    CHECK(eh <= es);
  }
}

TEST_CASE("dumps") {
  DumpConfig d;
  d.program = "prdelta";
  Ran ir = capture([&](std::ostream& o) { return cmd_dump_ir(d, o); });
  CHECK(ir.out.find("s1: ⟨⊥, ⊥, O[src,SR,SA], I[dst,SR]⟩") != std::string::npos);
  Ran deps = capture([&](std::ostream& o) { return cmd_dump_deps(d, o); });
  CHECK(deps.out.find("DeltaSum") != std::string::npos);
  Ran plan = capture([&](std::ostream& o) { return cmd_dump_plan(d, o); });
  CHECK(plan.code == 0);
  CHECK(!plan.out.empty());
  d.ascii = true;
  CHECK(capture([&](std::ostream& o) { return cmd_dump_ir(d, o); }).out.find("s1: <_, _, O[src,SR,SA], I[dst,SR]>") != std::string::npos);
}

TEST_CASE("convert round trip") {
  fs::path el = temp_file("gw_conv.el", "0 1\n1 2\n2 0\n");
  fs::path bin = fs::temp_directory_path() / "gw_conv.bin";
  ConvertConfig c;
  c.input = el.string();
  c.output = bin.string();
  CHECK(capture([&](std::ostream& o) { return cmd_convert(c, o); }).code == 0);
  CHECK(load_graph(bin.string()).num_edges() == 3);
}

TEST_CASE("corpus") {
  CHECK(find_corpus_program("bfs") != nullptr);
  CHECK(find_corpus_program("nope") == nullptr);
  for (const auto& p : corpus()) {
    CHECK(fs::exists(corpus_schedule_path(p.name, "default")));
    CHECK(fs::exists(corpus_schedule_path(p.name, "tuned")));
  }
  CHECK(schedule_matrix({"s1"}).size() >= 12);
  CHECK(traversal_labels(app_source("bc")) == std::vector<std::string>{"s1", "s2"});
  Graph g = load_graph_arg("gen:path:5");
  CHECK(g.num_vertices() == 5);
}

TEST_CASE("shipped oracles agree with independent references") {
  Graph g = gen("rmat:300:2400", 6, true);
  ref::EdgeList el = to_ref(g);
  std::vector<double> a = oracle::pagerank(g, 0.85, 10), b = ref::pagerank(el, 0.85, 10);
  CHECK(max_rel_diff(a, b) <= 1e-12);
  CHECK(oracle::sssp(g, 0) == ref::dijkstra(el, 0, oracle::kInfDistance));
  CHECK(oracle::bfs_levels(g, 0) == ref::bfs_levels(el, 0));
  CHECK(max_rel_diff(oracle::bc(g, 0), ref::brandes(el, 0), 1e-12) <= 1e-9);
}
