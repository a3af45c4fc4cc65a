#include "doctest.h"

#include "graphweave/error.hpp"
#include "graphweave/gis/gis.hpp"
#include "support/harness.hpp"

using namespace gwtest;

namespace {

ScheduledProgram scheduled(const std::string& app, const std::string& sched,
                           ValidationMode mode = ValidationMode::Strict) {
  return schedule_program(app_source(app), parse_schedule_text(sched), mode);
}

std::string plan_text(const std::string& app, const std::string& sched, const std::string& label = "s1") {
  return format_plan(*scheduled(app, sched).plan_for_label(label));
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::RuntimeError;
}

}  // namespace

TEST_CASE("default plan is serial sparse push") {
  CHECK(plan_text("prdelta", "") == "⟨⊥, ⊥, O[src,SR,SA], I[dst,SR]⟩");
  CHECK(plan_text("prdelta", "", "s1") == format_gis(direction_vector(Direction::SparsePush, true, false)));
}

TEST_CASE("traversal without a frontier uses the default vector") {
  ScheduledProgram sp = scheduled("pagerank", "");
  const ExecutionPlan* plan = sp.plan_for_label("s1");
  REQUIRE(plan);
  CHECK(plan->variants.size() == 1);
  CHECK(plan->variants[0].gis.direction() == Direction::SparsePush);
  CHECK_FALSE(plan->chain.from_set.has_value());
}

TEST_CASE("vertexset apply statements have no plan") {
  ScheduledProgram sp = scheduled("prdelta", "");
  CHECK(sp.plans.size() == 1);
}

TEST_CASE("hybrid with parallelization, bitvector and segments") {
  CHECK(plan_text("prdelta", R"(program->configApplyDirection("s1","DensePull-SparsePush")
        ->configApplyParallelization("s1","dynamic-vertex-parallel");)") ==
        "⟨⊥, B[WSP,(FVC,256)], O[dst,SR], I[src,SR,BA]⟩ and ⟨⊥, B[WSP,(FVC,256)], O[src,SR,SA], I[dst,SR]⟩");
  CHECK(plan_text("prdelta", R"(program->configApplyDirection("s1","DensePull-SparsePush")
        ->configApplyParallelization("s1","dynamic-vertex-parallel",1024)
        ->configApplyDenseVertexSet("s1","src-vertexset","bitvector","DensePull")
        ->configApplyNumSSG("s1","fixed-vertex-count",8,"DensePull");)") ==
        "⟨S[SR,(FVC, num_vert/8)], B[WSP,(FVC,1024)], O[dst,SR], I[src,SR,BV]⟩ and "
        "⟨⊥, B[WSP,(FVC,1024)], O[src,SR,SA], I[dst,SR]⟩");
}

TEST_CASE("qualified parallelization touches one variant") {
  std::string text = plan_text("prdelta", R"(program->configApplyDirection("s1","DensePull-SparsePush")
        ->configApplyParallelization("s1","static-vertex-parallel",64,"SparsePush");)");
  CHECK(text == "⟨⊥, ⊥, O[dst,SR], I[src,SR,BA]⟩ and ⟨⊥, B[SP,(FVC,64)], O[src,SR,SA], I[dst,SR]⟩");
}

TEST_CASE("NUMA sets the segment parallel tag") {
  CHECK(plan_text("prdelta", R"(program->configApplyDirection("s1","DensePull")
        ->configApplyNumSSG("s1","edge-aware-vertex-count",4)
        ->configApplyNUMA("s1","static-parallel");)") == "⟨S[SP,(EVC, num_edge/4)], ⊥, O[dst,SR], I[src,SR,BA]⟩");
}

TEST_CASE("strict and lenient validation") {
  const std::string sched = R"(program->configApplyDirection("s1","SparsePush")
        ->configApplyNumSSG("s1","fixed-vertex-count",4,"DensePull");)";
  CHECK(kind_of([&] { scheduled("prdelta", sched); }) == ErrorKind::InvalidCombination);
  ScheduledProgram lenient = scheduled("prdelta", sched, ValidationMode::Lenient);
  CHECK(format_plan(*lenient.plan_for_label("s1")) == "⟨⊥, ⊥, O[src,SR,SA], I[dst,SR]⟩");
  REQUIRE(lenient.dropped.size() == 1);
  CHECK(lenient.dropped[0].call.func == SchedFunc::ConfigApplyNumSSG);

  CHECK(kind_of([&] { scheduled("prdelta", R"(program->configApplyNUMA("s1","static-parallel");)"); }) ==
        ErrorKind::InvalidCombination);
  CHECK(kind_of([&] { scheduled("prdelta", R"(program->configApplyDirection("s9","DensePull");)"); }) ==
        ErrorKind::LabelNotFound);
}

TEST_CASE("scheduling is deterministic") {
  const std::string sched = R"(program->configApplyDirection("s1","DensePush-SparsePush")
        ->configApplyParallelization("s1","edge-aware-dynamic-vertex-parallel",128);)";
  ScheduledProgram a = scheduled("prdelta", sched);
  ScheduledProgram b = scheduled("prdelta", sched);
  CHECK(a.plans == b.plans);
  CHECK(dump_ir(a) == dump_ir(b));
}

TEST_CASE("dumped vectors round-trip") {
  const std::vector<std::string> scheds = {
      "",
      R"(program->configApplyDirection("s1","DensePull-SparsePush")->configApplyParallelization("s1","dynamic-vertex-parallel",1024);)",
      R"(program->configApplyDirection("s1","DensePull")->configApplyNumSSG("s1","fixed-vertex-count",4)->configApplyNUMA("s1","dynamic-parallel");)",
      R"(program->configApplyDirection("s1","DensePush")->configApplyDenseVertexSet("s1","bitvector"))"
      R"(->configApplyParallelization("s1","edge-aware-dynamic-vertex-parallel",512);)",
      R"(program->configApplyDirection("s1","SparsePush")->configApplyParallelization("s1","edge-parallel",32);)",
  };
  for (const auto& s : scheds) {
    CAPTURE(s);
    ScheduledProgram sp = scheduled("prdelta", s);
    const ExecutionPlan& plan = *sp.plan_for_label("s1");
    for (bool ascii : {false, true}) {
      auto parsed = parse_gis_list(format_plan(plan, ascii));
      REQUIRE(parsed.size() == plan.variants.size());
      for (std::size_t i = 0; i < parsed.size(); ++i) CHECK(parsed[i] == plan.variants[i].gis);
    }
  }
}

TEST_CASE("gis parse errors") {
  CHECK(kind_of([] { parse_gis("⟨⊥, ⊥, O[src,XX,SA], I[dst,SR]⟩"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_gis("not a vector"); }) == ErrorKind::ParseError);
}

TEST_CASE("dump_ir lists every traversal") {
  ScheduledProgram sp = scheduled("bc", "");
  std::string ir = dump_ir(sp);
  CHECK(ir.find("s1: ") != std::string::npos);
  CHECK(ir.find("s2: ") != std::string::npos);
}
