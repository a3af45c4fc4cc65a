#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphweave/exec/runtime.hpp"
#include "graphweave/graph/graph.hpp"
#include "graphweave/lang/schedule.hpp"
#include "graphweave/tune/space.hpp"

namespace graphweave {

struct TrialResult {
  SpacePoint point;
  std::string schedule;  // serialized scheduling calls
  bool valid = false;
  std::vector<std::string> dropped_calls;
  std::optional<std::int64_t> median_ns;  // set only for valid trials
  Counters counters;
  std::string error;  // why an invalid trial was rejected
};

struct TuneOptions {
  std::string label;
  int max_trials = 0;       // 0: no trial limit
  double max_seconds = 0;   // 0: no time limit
  std::uint64_t seed = 0;
  int restart_after = 5;    // non-improving steps before a random restart
  int repeats = 3;
  int warmups = 1;
  int threads = 1;
  double hybrid_threshold = 0.05;
  std::map<std::string, std::string> params;
};

struct TuneResult {
  std::vector<TrialResult> history;  // measured trials in visit order
  std::vector<std::int64_t> best_so_far;  // per history entry; -1 until a valid trial exists
  int best = -1;  // index into history

  const TrialResult* best_trial() const { return best < 0 ? nullptr : &history[best]; }
};

using TrialEvaluator = std::function<TrialResult(const SpacePoint&)>;

/// Random initialization plus greedy single-axis mutation with restarts. Each
/// distinct point is evaluated once; revisits are served from a cache and do
/// not consume budget. Stops at the trial or time budget, or once every point
/// has been visited. Throws BudgetZero when neither budget is set.
TuneResult hill_climb(const ScheduleSpace& space, const TrialEvaluator& eval, const TuneOptions& opt);

/// Times one program under schedule points for `opt.label`. Calls in `base`
/// that configure other labels (and every structural call) are kept.
class ProgramEvaluator {
 public:
  /// Throws LabelNotFound when `opt.label` names no traversal of the program.
  ProgramEvaluator(std::string source, std::optional<Schedule> base, const Graph& graph, TuneOptions opt);

  TrialResult operator()(const SpacePoint& p) const;
  Schedule schedule_for(const SpacePoint& p) const;

 private:
  std::string source_;
  Schedule base_;
  const Graph& graph_;
  TuneOptions opt_;
};

TuneResult tune(const std::string& source, const std::optional<Schedule>& base, const Graph& graph,
                const ScheduleSpace& space, const TuneOptions& opt);

std::string tune_history_json(const TuneResult& r, const TuneOptions& opt, int indent = 2);

}  // namespace graphweave
