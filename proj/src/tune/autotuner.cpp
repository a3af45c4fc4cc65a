#include "graphweave/tune/autotuner.hpp"

#include <algorithm>
#include <chrono>

#include <json.hpp>

#include "graphweave/error.hpp"
#include "graphweave/exec/program.hpp"
#include "graphweave/pipeline.hpp"

namespace graphweave {

namespace {

bool is_structural(SchedFunc f) {
  return f == SchedFunc::FuseFields || f == SchedFunc::FuseForLoop || f == SchedFunc::FuseApplyFunctions ||
         f == SchedFunc::SplitForLoop;
}

bool better(const TrialResult& a, const TrialResult* b) {
  if (!a.valid) return false;
  if (!b || !b->valid) return true;
  return *a.median_ns < *b->median_ns;
}

nlohmann::ordered_json counters_json(const Counters& c) {
  nlohmann::ordered_json j;
  j["edges_examined"] = c.edges_examined;
  j["edges_applied"] = c.edges_applied;
  j["atomics_executed"] = c.atomics_executed;
  j["frontier_conversions"] = c.frontier_conversions;
  j["ssg_passes"] = c.ssg_passes;
  j["merge_ops"] = c.merge_ops;
  j["membership_tests"] = c.membership_tests;
  return j;
}

}  // namespace

TuneResult hill_climb(const ScheduleSpace& space, const TrialEvaluator& eval, const TuneOptions& opt) {
  if (opt.max_trials <= 0 && opt.max_seconds <= 0) {
    throw Error(ErrorKind::BudgetZero, "tuning needs a positive trial count or time limit");
  }
  using clock = std::chrono::steady_clock;
  auto start = clock::now();
  std::mt19937_64 rng(opt.seed);
  std::size_t total = space.size();
  TuneResult r;
  std::map<std::string, int> cache;

  auto budget_left = [&] {
    if (r.history.size() >= total) return false;
    if (opt.max_trials > 0 && static_cast<int>(r.history.size()) >= opt.max_trials) return false;
    if (opt.max_seconds > 0 && std::chrono::duration<double>(clock::now() - start).count() >= opt.max_seconds) {
      return false;
    }
    return true;
  };
  // Returns the history index of the point, evaluating it on first sight.
  auto visit = [&](const SpacePoint& p, bool& fresh) {
    std::string key = point_key(p);
    auto it = cache.find(key);
    fresh = it == cache.end();
    if (!fresh) return it->second;
    TrialResult t = eval(p);
    t.point = p;
    if (!t.valid) t.median_ns.reset();
    int idx = static_cast<int>(r.history.size());
    r.history.push_back(std::move(t));
    if (better(r.history[idx], r.best_trial())) r.best = idx;
    r.best_so_far.push_back(r.best < 0 ? -1 : *r.history[r.best].median_ns);
    cache.emplace(key, idx);
    return idx;
  };

  bool fresh = false;
  SpacePoint current = sample_space(space, rng);
  int current_idx = visit(current, fresh);
  int stale = 0;
  int idle = 0;  // consecutive steps that evaluated nothing new
  while (budget_left() && idle < 10000) {
    if (stale >= opt.restart_after) {
      current = sample_space(space, rng);
      current_idx = visit(current, fresh);
      stale = 0;
      idle = fresh ? 0 : idle + 1;
      continue;
    }
    SpacePoint cand = mutate_point(space, current, rng);
    if (cand == current) {
      ++stale;
      ++idle;
      continue;
    }
    int idx = visit(cand, fresh);
    idle = fresh ? 0 : idle + 1;
    if (better(r.history[idx], &r.history[current_idx])) {
      current = cand;
      current_idx = idx;
      stale = 0;
    } else {
      ++stale;
    }
  }
  return r;
}

ProgramEvaluator::ProgramEvaluator(std::string source, std::optional<Schedule> base, const Graph& graph,
                                   TuneOptions opt)
    : source_(std::move(source)), graph_(graph), opt_(std::move(opt)) {
  Schedule used;
  ScheduledProgram sp = schedule_program(source_, base, ValidationMode::Strict, &used);
  if (!sp.plan_for_label(opt_.label)) {
    throw Error(ErrorKind::LabelNotFound, "no edgeset traversal is labelled '" + opt_.label + "'");
  }
  for (const auto& c : used.calls) {
    if (is_structural(c.func) || c.labels.at(0) != opt_.label) base_.calls.push_back(c);
  }
}

Schedule ProgramEvaluator::schedule_for(const SpacePoint& p) const {
  Schedule s = base_;
  for (auto& c : point_to_schedule(p, opt_.label).calls) s.calls.push_back(std::move(c));
  return s;
}

TrialResult ProgramEvaluator::operator()(const SpacePoint& p) const {
  TrialResult t;
  t.point = p;
  t.schedule = point_to_text(p, opt_.label);
  try {
    auto cp = compile_program(source_, schedule_for(p), ValidationMode::Lenient, "tune");
    for (const auto& d : cp->sp.dropped) t.dropped_calls.push_back(to_string(d.call) + ": " + d.reason);
    RunOptions ro;
    ro.params = opt_.params;
    ro.threads = opt_.threads;
    ro.hybrid_threshold = opt_.hybrid_threshold;
    ro.record_traversals = false;
    ProgramRunner runner(*cp, graph_, ro);
    runner.prepare();
    for (int i = 0; i < opt_.warmups; ++i) runner.run();
    std::vector<std::int64_t> times;
    for (int i = 0; i < std::max(1, opt_.repeats); ++i) {
      RunStats st = runner.run();
      times.push_back(st.wall_ns);
      t.counters = st.totals;
    }
    std::sort(times.begin(), times.end());
    t.median_ns = times[times.size() / 2];
    t.valid = true;
  } catch (const Error& e) {
    t.valid = false;
    t.median_ns.reset();
    t.error = e.what();
  }
  return t;
}

TuneResult tune(const std::string& source, const std::optional<Schedule>& base, const Graph& graph,
                const ScheduleSpace& space, const TuneOptions& opt) {
  if (opt.max_trials <= 0 && opt.max_seconds <= 0) {
    throw Error(ErrorKind::BudgetZero, "tuning needs a positive trial count or time limit");
  }
  ProgramEvaluator eval(source, base, graph, opt);
  return hill_climb(space, std::cref(eval), opt);
}

std::string tune_history_json(const TuneResult& r, const TuneOptions& opt, int indent) {
  nlohmann::ordered_json j;
  j["schema_version"] = kStatsSchemaVersion;
  j["label"] = opt.label;
  j["seed"] = opt.seed;
  j["max_trials"] = opt.max_trials;
  j["max_seconds"] = opt.max_seconds;
  auto trial = [](const TrialResult& t, int index) {
    nlohmann::ordered_json e;
    e["index"] = index;
    e["schedule"] = t.schedule;
    e["point"] = point_key(t.point);
    e["valid"] = t.valid;
    e["dropped_calls"] = t.dropped_calls;
    e["median_runtime_ns"] = t.median_ns ? nlohmann::ordered_json(*t.median_ns) : nlohmann::ordered_json(nullptr);
    e["counters"] = counters_json(t.counters);
    if (!t.error.empty()) e["error"] = t.error;
    return e;
  };
  nlohmann::ordered_json hist = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.history.size(); ++i) hist.push_back(trial(r.history[i], static_cast<int>(i)));
  j["trials"] = hist;
  j["best_so_far_ns"] = r.best_so_far;
  j["best"] = r.best < 0 ? nlohmann::ordered_json(nullptr) : trial(r.history[r.best], r.best);
  return j.dump(indent);
}

}  // namespace graphweave
