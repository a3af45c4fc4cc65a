#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "graphweave/deps/deps.hpp"
#include "graphweave/exec/compiled.hpp"
#include "graphweave/exec/pool.hpp"
#include "graphweave/exec/runtime.hpp"
#include "graphweave/gis/gis.hpp"
#include "graphweave/graph/frontier.hpp"
#include "graphweave/graph/partition.hpp"

namespace graphweave {

struct TraversalRecord {
  std::string label;
  std::string variant;
  Counters counters;
  std::int64_t wall_ns = 0;
};

/// Per-edgeset derived structures: segmented subgraphs and outer-range chunks.
class GraphCache {
 public:
  explicit GraphCache(const Graph* g) : g_(g) {}

  const Graph& graph() const { return *g_; }

  /// Builds the SSGs a vector needs.
  void prepare(const GisVector& v);
  bool has_ssgs(const GisVector& v) const;
  /// Throws MissingSSGs when prepare() was not called for this vector.
  const std::vector<SegmentedSubgraph>& ssgs(const GisVector& v) const;

  const std::vector<std::int64_t>& degrees(TraversalSide side);
  const BlockedChunks& chunks(TraversalSide side, std::int64_t grain, PartitionScheme scheme);

 private:
  const Graph* g_;
  std::map<std::tuple<int, std::int64_t, int>, std::vector<SegmentedSubgraph>> ssgs_;
  std::map<std::tuple<int, std::int64_t, int>, BlockedChunks> chunks_;
  std::vector<std::int64_t> out_deg_;
  std::vector<std::int64_t> in_deg_;
};

TraversalSide traversal_side(Direction d);
PartitionScheme partition_scheme(PartScheme s);

/// Value a Claim write must find in place: a literal or a global scalar.
struct ClaimSentinel {
  int global = -1;
  bool negate = false;
  Value constant{};
  bool is_double = false;
};

/// An execution plan resolved against a program's symbols and compiled functions.
struct BoundPlan {
  const ExecutionPlan* plan = nullptr;
  std::vector<SyncPlan> syncs;  // per variant
  int edgeset = -1;
  const CompiledFunc* apply = nullptr;
  const CompiledFunc* src_filter = nullptr;
  const CompiledFunc* dst_filter = nullptr;
  const CompiledFunc* edge_filter = nullptr;
  int tracked = -1;
  bool claim_tracked = false;
  std::vector<std::vector<WriteMode>> modes;  // per variant, per vector id
  std::vector<ClaimSentinel> sentinels;
  std::vector<ReduceOp> reduce_ops;  // per vector id, for local buffers  // per vector id, meaningful for Claim vectors
};

BoundPlan bind_plan(const ExecutionPlan& plan, std::vector<SyncPlan> syncs, const Symbols& syms,
                    const std::vector<CompiledFunc>& funcs);

/// True when the DensePull inner loop may stop after the first change of the tracked vector.
bool early_exit_enabled(const BoundPlan& bp, const PlanVariant& v);

struct EngineOptions {
  double hybrid_threshold = 0.05;
};

class Engine {
 public:
  Engine(WorkerPool& pool, EngineOptions opt = {}) : pool_(pool), opt_(opt) {}

  const EngineOptions& options() const { return opt_; }
  WorkerPool& pool() { return pool_; }

  /// Index of the variant a plan runs for this input frontier.
  std::size_t select_variant(const BoundPlan& bp, const Graph& g, const Frontier* from) const;

  /// Runs one edgeset traversal. Returns the output frontier for applyModified.
  std::optional<Frontier> run_edgeset_apply(const BoundPlan& bp, Runtime& rt, GraphCache& gc, const Frontier* from,
                                            const Frontier* to, TraversalRecord* rec = nullptr);

  /// Runs a single variant of a plan, bypassing the hybrid selector.
  std::optional<Frontier> run_variant(const BoundPlan& bp, std::size_t variant, Runtime& rt, GraphCache& gc,
                                      const Frontier* from, const Frontier* to, Counters& counters);

  Frontier run_filter(const CompiledFunc& f, Runtime& rt, const Frontier& set);
  void run_apply(const CompiledFunc& f, Runtime& rt, const Frontier& set);

 private:
  WorkerPool& pool_;
  EngineOptions opt_;
  std::vector<std::uint8_t> visited_;
  std::vector<std::vector<std::vector<std::uint64_t>>> buffers_;  // [ssg][vector]
};

}  // namespace graphweave
