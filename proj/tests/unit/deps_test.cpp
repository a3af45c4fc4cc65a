#include "doctest.h"

#include <set>

#include "graphweave/deps/deps.hpp"
#include "graphweave/lang/access.hpp"
#include "support/harness.hpp"

using namespace gwtest;

namespace {

struct Analysed {
  ScheduledProgram sp;
  const ExecutionPlan* plan;
  std::vector<SyncPlan> syncs;
};

Analysed analyse(const std::string& app, const std::string& sched, const std::string& label = "s1") {
  Analysed a{schedule_program(app_source(app), parse_schedule_text(sched), ValidationMode::Strict), nullptr, {}};
  a.plan = a.sp.plan_for_label(label);
  a.syncs = analyze_plan(a.sp.program, *a.plan);
  return a;
}

const char* kPush = R"(program->configApplyDirection("s1","SparsePush")
    ->configApplyParallelization("s1","dynamic-vertex-parallel");)";
const char* kPull = R"(program->configApplyDirection("s1","DensePull")
    ->configApplyParallelization("s1","dynamic-vertex-parallel");)";
const char* kPullSegments = R"(program->configApplyDirection("s1","DensePull")
    ->configApplyParallelization("s1","dynamic-vertex-parallel")
    ->configApplyNumSSG("s1","fixed-vertex-count",4)->configApplyNUMA("s1","static-parallel");)";

}  // namespace

TEST_CASE("PageRankDelta access classes") {
  Program p = parse_source(app_source("prdelta")).program;
  AccessMap m = classify_accesses(p, *p.find_func("updateEdge"));
  REQUIRE(m.size() == 3);
  const VectorAccess* ds = find_access(m, "DeltaSum");
  REQUIRE(ds);
  CHECK(ds->kind == AccessKind::Reduction);
  CHECK(ds->op == AccessOp::Sum);
  CHECK(ds->indexed_by == Endpoint::Dst);
  CHECK(find_access(m, "Delta")->kind == AccessKind::ReadOnly);
  CHECK(find_access(m, "OutDegree")->kind == AccessKind::ReadOnly);
}

TEST_CASE("function touching no vectors") {
  Program p = parse_source(R"(
element Vertex end
element Edge end
const edges : edgeset{Edge}(Vertex,Vertex) = load(argv[1]);
func f(src : Vertex, dst : Vertex)
    var t : int = 1;
end
func main()
    edges.apply(f);
end
)").program;
  CHECK(classify_accesses(p, *p.find_func("f")).empty());
}

TEST_CASE("BFS parent write is a claim") {
  Analysed a = analyse("bfs", kPush);
  AccessMap m = classify_chain_accesses(a.sp.program, a.plan->chain);
  const VectorAccess* parent = find_access(m, "parent");
  REQUIRE(parent);
  CHECK(parent->kind == AccessKind::AsyncReduction);
  CHECK(parent->op == AccessOp::Claim);
  CHECK(a.syncs[0].find("parent")->sync == SyncKind::Atomic);
  CHECK(a.syncs[0].dedup_cas);
}

TEST_CASE("distance vectors follow the reduction endpoint") {
  Analysed push = analyse("prdelta", kPush);
  const DistanceVector& d = push.syncs[0].find("DeltaSum")->distance;
  CHECK(d.outer == Dist::Star);
  CHECK(d.inner == Dist::Zero);
  for (const char* ro : {"Delta", "OutDegree"}) {
    const DistanceVector& r = push.syncs[0].find(ro)->distance;
    CHECK(r.outer == Dist::Zero);
    CHECK(r.inner == Dist::Zero);
  }
  Analysed pull = analyse("prdelta", kPull);
  const DistanceVector& e = pull.syncs[0].find("DeltaSum")->distance;
  CHECK(e.outer == Dist::Zero);
  CHECK(e.inner == Dist::Star);
}

TEST_CASE("synchronization inference") {
  CHECK(analyse("prdelta", kPush).syncs[0].find("DeltaSum")->sync == SyncKind::Atomic);
  CHECK(analyse("prdelta", kPull).syncs[0].find("DeltaSum")->sync == SyncKind::NoSync);
  CHECK(analyse("prdelta", kPullSegments).syncs[0].find("DeltaSum")->sync == SyncKind::LocalBufferMerge);
  // Serial plans never synchronize.
  CHECK(analyse("prdelta", "").syncs[0].find("DeltaSum")->sync == SyncKind::NoSync);
  CHECK_FALSE(analyse("prdelta", kPush).syncs[0].dedup_cas);
}

TEST_CASE("hybrid plans have one sync plan per variant") {
  Analysed h = analyse("prdelta", R"(program->configApplyDirection("s1","DensePull-SparsePush")
      ->configApplyParallelization("s1","dynamic-vertex-parallel");)");
  REQUIRE(h.syncs.size() == 2);
  CHECK(h.syncs[0].find("DeltaSum")->sync == SyncKind::NoSync);
  CHECK(h.syncs[1].find("DeltaSum")->sync == SyncKind::Atomic);
}

TEST_CASE("dependence dump") {
  Analysed a = analyse("prdelta", kPush);
  std::string d = dump_deps(a.sp);
  CHECK(d.find("DeltaSum  ⟨*,0⟩  reduction(sum)  atomic") != std::string::npos);
  std::string ascii = dump_deps(a.sp, true);
  CHECK(ascii.find("DeltaSum  <*,0>  reduction(sum)  atomic") != std::string::npos);
}
