#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphweave/graph/graph.hpp"

namespace graphweave {

enum class OracleKind { None, PageRank, PRDelta, BFS, CC, SSSP, BC, CF };

/// A shipped benchmark program.
struct CorpusProgram {
  std::string name;           // file stem, e.g. "bfs"
  std::string output_vector;  // vector compared across schedules
  bool exact = false;         // integer output compared exactly
  OracleKind oracle = OracleKind::None;
};

const std::vector<CorpusProgram>& corpus();
/// Looks a program up by name or by the stem of a path such as apps/bfs.gt.
const CorpusProgram* find_corpus_program(const std::string& name_or_path);

/// Directory holding the shipped programs: GRAPHWEAVE_APPS_DIR from the
/// environment when set, otherwise the build-time location.
std::string apps_dir();
/// Resolves a program argument: an existing path as is, else `<apps>/<name>.gt`.
std::string resolve_program_path(const std::string& arg);
/// `<apps>/<name>.<kind>.sched`.
std::string corpus_schedule_path(const std::string& name, const std::string& kind);

/// Loads a graph file, or generates one for a `gen:<spec>` argument (see generate_graph).
Graph load_graph_arg(const std::string& arg, std::uint64_t seed = 1);

/// A named schedule of the verification matrix.
struct NamedSchedule {
  std::string name;
  std::string text;  // scheduling calls; empty for the default
};

/// The fixed verification matrix, instantiated for every label in `labels`.
std::vector<NamedSchedule> schedule_matrix(const std::vector<std::string>& labels);

/// Labels of every labelled edgeset traversal of a program, in program order.
std::vector<std::string> traversal_labels(const std::string& source);

}  // namespace graphweave
