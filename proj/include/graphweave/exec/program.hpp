#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "graphweave/exec/engine.hpp"
#include "graphweave/exec/pool.hpp"
#include "graphweave/exec/runtime.hpp"
#include "graphweave/graph/graph.hpp"
#include "graphweave/pipeline.hpp"

namespace graphweave {

inline constexpr int kStatsSchemaVersion = 1;

struct RunOptions {
  std::map<std::string, std::string> params;  // overrides for param("name", default)
  int threads = 1;
  double hybrid_threshold = 0.05;
  bool record_traversals = true;
  std::ostream* print_out = nullptr;  // destination of `print`; discarded when null
  /// Sees every frontier returned by applyModified, with the traversal label.
  std::function<void(const std::string&, const Frontier&)> on_output;
};

struct RunStats {
  std::vector<TraversalRecord> traversals;
  Counters totals;
  std::int64_t wall_ns = 0;

  /// Counters summed over traversals carrying `label`.
  Counters for_label(const std::string& label) const;
};

std::string stats_to_json(const RunStats& s, const std::string& program, int indent = 2);

/// Executes a compiled program against one input graph. Every `load(...)` edgeset
/// binds to that graph. The runner may be run repeatedly; each run starts from
/// freshly initialized globals.
class ProgramRunner {
 public:
  ProgramRunner(const CompiledProgram& cp, const Graph& graph, RunOptions opt = {});
  ~ProgramRunner();

  /// Builds the segmented subgraphs every plan needs.
  void prepare();
  RunStats run();

  const Runtime& runtime() const { return rt_; }
  std::vector<double> vector_values(const std::string& name) const;
  std::string vector_tsv(const std::string& name) const;
  /// Final value of a global scalar.
  double scalar_value(const std::string& name) const;

 private:
  struct Impl;
  const CompiledProgram& cp_;
  const Graph& graph_;
  RunOptions opt_;
  WorkerPool pool_;
  Engine engine_;
  Runtime rt_;
  std::vector<std::unique_ptr<Graph>> owned_;
  std::vector<std::unique_ptr<GraphCache>> caches_;
  std::vector<GraphCache*> edgeset_cache_;
};

}  // namespace graphweave
