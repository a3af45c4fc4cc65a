#include "doctest.h"

#include <set>

#include "graphweave/error.hpp"
#include "graphweave/tune/autotuner.hpp"
#include "graphweave/tune/space.hpp"
#include "support/harness.hpp"

using namespace gwtest;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::RuntimeError;
}

// Deterministic cost: prefers DensePull with grain 1024 and four segments.
TrialResult synthetic(const SpacePoint& p) {
  TrialResult t;
  t.point = p;
  t.valid = true;
  std::int64_t cost = 1000;
  if (p.direction == "DensePull") cost -= 300;
  if (p.parallelization == "dynamic-vertex-parallel") cost -= 200;
  if (p.grain == 1024) cost -= 100;
  if (p.ssg != "none" && p.segments == 4) cost -= 50;
  t.median_ns = cost;
  return t;
}

const char* kSmall = R"({
  "direction": ["SparsePush", "DensePull"],
  "parallelization": ["serial", "dynamic-vertex-parallel"],
  "grain": [256, 1024],
  "vertexset_layout": ["bool-array"],
  "vertexset_side": ["both"],
  "ssg": ["none", "fixed-vertex-count"],
  "segments": [2, 4],
  "numa": ["serial"]
})";

}  // namespace

TEST_CASE("space parsing and counting") {
  ScheduleSpace s = ScheduleSpace::from_json(kSmall);
  CHECK(s.directions.size() == 2);
  // Serial points ignore the grain; points without segments ignore the count.
  CHECK(s.size() == 2 * (1 + 2) * (1 + 2));
  auto pts = s.enumerate();
  CHECK(pts.size() == s.size());
  std::set<SpacePoint> unique(pts.begin(), pts.end());
  CHECK(unique.size() == pts.size());
  for (const auto& p : pts) {
    CHECK(s.contains(p));
    CHECK(s.canonical(p) == p);
  }
  CHECK(kind_of([] { ScheduleSpace::from_json(R"({"direction": ["Sideways"]})"); }) == ErrorKind::UnknownOption);
  CHECK(kind_of([] { ScheduleSpace::from_json(R"({"colour": ["red"]})"); }) == ErrorKind::UnknownOption);
  CHECK(kind_of([] { ScheduleSpace::from_json("{"); }) == ErrorKind::ParseError);
}

TEST_CASE("points serialize to schedules") {
  SpacePoint p;
  p.direction = "DensePull-SparsePush";
  p.parallelization = "dynamic-vertex-parallel";
  p.grain = 1024;
  p.sparse_parallelization = "serial";
  p.sparse_grain = 64;
  p.vertexset_layout = "bitvector";
  p.vertexset_side = "src-vertexset";
  p.ssg = "fixed-vertex-count";
  p.segments = 4;
  p.numa = "serial";
  std::string text = point_to_text(p, "s1");
  CHECK(text.find(R"(configApplyDirection("s1", "DensePull-SparsePush"))") != std::string::npos);
  CHECK(text.find(R"(configApplyNumSSG("s1", "fixed-vertex-count", 4, "DensePull"))") != std::string::npos);
  Schedule s = point_to_schedule(p, "s1");
  CHECK(parse_schedule_text(text) == s);
  CHECK_NOTHROW(schedule_program(app_source("prdelta"), s, ValidationMode::Strict));
}

TEST_CASE("every full-space point schedules leniently") {
  ScheduleSpace full = ScheduleSpace::full();
  std::mt19937_64 rng(1);
  std::string src = app_source("prdelta");
  for (int i = 0; i < 200; ++i) {
    SpacePoint p = sample_space(full, rng);
    CHECK(full.contains(p));
    CHECK_NOTHROW(schedule_program(src, point_to_schedule(p, "s1"), ValidationMode::Lenient));
  }
}

TEST_CASE("sampling is reproducible") {
  ScheduleSpace full = ScheduleSpace::full();
  std::mt19937_64 a(0), b(0);
  for (int i = 0; i < 20; ++i) CHECK(sample_space(full, a) == sample_space(full, b));
}

TEST_CASE("fixed-seed sample golden") {
  std::mt19937_64 rng(0);
  SpacePoint p = sample_space(ScheduleSpace::full(), rng);
  CHECK(point_to_text(p, "s1") ==
        "program->configApplyDirection(\"s1\", \"DensePull-SparsePush\")\n"
        "    ->configApplyParallelization(\"s1\", \"edge-parallel\", 4096, \"DensePull\")\n"
        "    ->configApplyParallelization(\"s1\", \"serial\", \"SparsePush\")\n"
        "    ->configApplyDenseVertexSet(\"s1\", \"bitvector\", \"src-vertexset\", \"DensePull\")\n"
        "    ->configApplyNumSSG(\"s1\", \"fixed-vertex-count\", 1, \"DensePull\")\n"
        "    ->configApplyNUMA(\"s1\", \"serial\", \"DensePull\");");
}

TEST_CASE("single-point space") {
  ScheduleSpace one = ScheduleSpace::from_json(R"({"direction": ["DensePull"], "parallelization": ["serial"],
      "vertexset_layout": ["bitvector"], "vertexset_side": ["both"], "ssg": ["none"]})");
  REQUIRE(one.size() == 1);
  std::mt19937_64 rng(5);
  SpacePoint only = one.enumerate()[0];
  for (int i = 0; i < 10; ++i) CHECK(sample_space(one, rng) == only);
  TuneOptions opt;
  opt.max_trials = 10;
  TuneResult r = hill_climb(one, synthetic, opt);
  CHECK(r.history.size() == 1);
  CHECK(r.best_trial()->point == only);
}

TEST_CASE("hybrid samples carry per-side options") {
  ScheduleSpace s = ScheduleSpace::from_json(R"({"direction": ["DensePull-SparsePush"]})");
  std::mt19937_64 rng(2);
  std::set<std::string> sparse_par;
  for (int i = 0; i < 200; ++i) {
    SpacePoint p = sample_space(s, rng);
    CHECK(!p.sparse_parallelization.empty());
    sparse_par.insert(p.sparse_parallelization);
  }
  CHECK(sparse_par.size() > 1);
}

TEST_CASE("mutation changes one active axis") {
  ScheduleSpace full = ScheduleSpace::full();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    SpacePoint p = sample_space(full, rng);
    SpacePoint q = mutate_point(full, p, rng);
    CHECK(full.contains(q));
  }
}

TEST_CASE("hill climbing") {
  ScheduleSpace s = ScheduleSpace::from_json(kSmall);
  TuneOptions opt;
  opt.max_trials = 100;
  opt.seed = 4;
  TuneResult r = hill_climb(s, synthetic, opt);
  CHECK(r.history.size() == s.size());
  CHECK(*r.best_trial()->median_ns == 350);
  for (std::size_t i = 1; i < r.best_so_far.size(); ++i) CHECK(r.best_so_far[i] <= r.best_so_far[i - 1]);

  TuneResult again = hill_climb(s, synthetic, opt);
  REQUIRE(again.history.size() == r.history.size());
  for (std::size_t i = 0; i < r.history.size(); ++i) CHECK(again.history[i].point == r.history[i].point);

  opt.max_trials = 1;
  CHECK(hill_climb(s, synthetic, opt).history.size() == 1);
  opt.max_trials = 0;
  CHECK(kind_of([&] { hill_climb(s, synthetic, opt); }) == ErrorKind::BudgetZero);
}

TEST_CASE("program evaluator") {
  Graph g = gen("rmat:1000:8000", 3);
  TuneOptions opt;
  opt.label = "s9";
  CHECK(kind_of([&] { ProgramEvaluator(app_source("prdelta"), std::nullopt, g, opt); }) == ErrorKind::LabelNotFound);

  opt.label = "s1";
  opt.repeats = 1;
  ProgramEvaluator eval(app_source("prdelta"), std::nullopt, g, opt);
  SpacePoint p = ScheduleSpace::full().enumerate().front();
  p.direction = "SparsePush";
  p = ScheduleSpace::full().canonical(p);
  p.ssg = "fixed-vertex-count";
  p.segments = 4;
  p.numa = "serial";
  TrialResult t = eval(p);
  CHECK(t.valid);
  CHECK(t.median_ns.has_value());
  CHECK(t.dropped_calls.empty());
  CHECK(parse_schedule_text(t.schedule) == eval.schedule_for(p));
}

TEST_CASE("tuned schedules preserve results") {
  Graph g = gen("rmat:1000:8000", 3);
  std::string src = app_source("prdelta");
  TuneOptions opt;
  opt.label = "s1";
  opt.max_trials = 8;
  opt.repeats = 1;
  opt.warmups = 0;
  opt.seed = 9;
  TuneResult r = tune(src, std::nullopt, g, ScheduleSpace::full(), opt);
  auto base = run_source(src, g, {"Rank"}).vectors["Rank"];
  for (const auto& t : r.history) {
    RunSpec spec;
    spec.schedule = t.schedule;
    spec.threads = 2;
    CHECK(max_rel_diff(run_source(src, g, {"Rank"}, spec).vectors["Rank"], base) <= 1e-6);
  }
  std::string json = tune_history_json(r, opt);
  CHECK(json.find("\"trials\"") != std::string::npos);
}

TEST_CASE("BFS on a path prefers pure sparse push") {
  Graph g = gen("path:10000");
  ScheduleSpace s = ScheduleSpace::from_json(R"({
    "direction": ["SparsePush", "DensePull-SparsePush", "DensePull", "DensePush"],
    "parallelization": ["serial"], "vertexset_layout": ["bool-array"], "vertexset_side": ["both"], "ssg": ["none"]})");
  TuneOptions opt;
  opt.label = "s1";
  opt.max_trials = 10;
  opt.repeats = 3;
  TuneResult r = tune(app_source("bfs"), std::nullopt, g, s, opt);
  // On a path the hybrid selector never goes dense, so it ties with pure SparsePush.
  std::string best = r.best_trial()->point.direction;
  CHECK((best == "SparsePush" || best == "DensePull-SparsePush"));
  if (best == "DensePull-SparsePush") {
    RunSpec spec;
    spec.schedule = r.best_trial()->schedule;
    for (const auto& t : run_app("bfs", g, {}, spec).stats.traversals) CHECK(t.variant == "SparsePush");
  }
}
