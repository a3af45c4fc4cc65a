#include "graphweave/cli/corpus.hpp"

#include <cstdlib>
#include <filesystem>

#include "graphweave/error.hpp"
#include "graphweave/graph/generate.hpp"
#include "graphweave/pipeline.hpp"

namespace fs = std::filesystem;

namespace graphweave {

const std::vector<CorpusProgram>& corpus() {
  static const std::vector<CorpusProgram> programs = {
      {"pagerank", "old_rank", false, OracleKind::PageRank},
      {"prdelta", "Rank", false, OracleKind::PRDelta},
      {"bfs", "parent", true, OracleKind::BFS},
      {"cc", "IDs", true, OracleKind::CC},
      {"cc_async", "IDs", true, OracleKind::CC},
      {"sssp", "SP", true, OracleKind::SSSP},
      {"bc", "dependences", false, OracleKind::BC},
      {"cf", "UL0", false, OracleKind::CF},
      {"pr_ec", "old_ec", false, OracleKind::None},
  };
  return programs;
}

const CorpusProgram* find_corpus_program(const std::string& name_or_path) {
  std::string stem = fs::path(name_or_path).stem().string();
  for (const auto& p : corpus()) {
    if (p.name == stem) return &p;
  }
  return nullptr;
}

std::string apps_dir() {
  if (const char* env = std::getenv("GRAPHWEAVE_APPS_DIR"); env && *env) return env;
  return GRAPHWEAVE_APPS_DIR;
}

std::string resolve_program_path(const std::string& arg) {
  if (fs::exists(arg)) return arg;
  fs::path shipped = fs::path(apps_dir()) / (arg + ".gt");
  if (arg.find('/') == std::string::npos && fs::exists(shipped)) return shipped.string();
  throw Error(ErrorKind::IoError, "program not found: " + arg);
}

std::string corpus_schedule_path(const std::string& name, const std::string& kind) {
  return (fs::path(apps_dir()) / (name + "." + kind + ".sched")).string();
}

Graph load_graph_arg(const std::string& arg, std::uint64_t seed) {
  if (arg.rfind("gen:", 0) == 0) {
    GenOptions opt;
    opt.seed = seed;
    std::string spec = arg.substr(4);
    // A trailing ":w" asks for integer weights.
    if (spec.size() > 2 && spec.compare(spec.size() - 2, 2, ":w") == 0) {
      opt.weighted = true;
      spec.resize(spec.size() - 2);
    }
    return generate_graph(spec, opt);
  }
  return load_graph(arg);
}

std::vector<NamedSchedule> schedule_matrix(const std::vector<std::string>& labels) {
  struct Template {
    const char* name;
    std::vector<std::string> calls;  // "%" stands for the label
  };
  static const std::vector<Template> templates = {
      {"default", {}},
      {"sparse-push", {R"(configApplyDirection("%", "SparsePush"))"}},
      {"dense-push", {R"(configApplyDirection("%", "DensePush"))"}},
      {"dense-pull", {R"(configApplyDirection("%", "DensePull"))"}},
      {"hybrid-pull", {R"(configApplyDirection("%", "DensePull-SparsePush"))"}},
      {"hybrid-pull-par",
       {R"(configApplyDirection("%", "DensePull-SparsePush"))",
        R"(configApplyParallelization("%", "dynamic-vertex-parallel", 64))"}},
      {"hybrid-pull-par-bitvec",
       {R"(configApplyDirection("%", "DensePull-SparsePush"))",
        R"(configApplyParallelization("%", "dynamic-vertex-parallel", 64))",
        R"(configApplyDenseVertexSet("%", "bitvector", "src-vertexset", "DensePull"))"}},
      {"hybrid-pull-par-bitvec-ssg",
       {R"(configApplyDirection("%", "DensePull-SparsePush"))",
        R"(configApplyParallelization("%", "dynamic-vertex-parallel", 64))",
        R"(configApplyDenseVertexSet("%", "bitvector", "src-vertexset", "DensePull"))",
        R"(configApplyNumSSG("%", "fixed-vertex-count", 4, "DensePull"))"}},
      {"pull-static-evc-numa",
       {R"(configApplyDirection("%", "DensePull"))",
        R"(configApplyParallelization("%", "static-vertex-parallel", 64))",
        R"(configApplyNumSSG("%", "edge-aware-vertex-count", 3))", R"(configApplyNUMA("%", "static-parallel"))"}},
      {"pull-dynamic-numa",
       {R"(configApplyDirection("%", "DensePull"))",
        R"(configApplyParallelization("%", "dynamic-vertex-parallel", 32))",
        R"(configApplyNumSSG("%", "fixed-vertex-count", 2))", R"(configApplyNUMA("%", "dynamic-parallel"))"}},
      {"push-edge-parallel",
       {R"(configApplyDirection("%", "SparsePush"))", R"(configApplyParallelization("%", "edge-parallel", 16))"}},
      {"hybrid-push-edge-aware",
       {R"(configApplyDirection("%", "DensePush-SparsePush"))",
        R"(configApplyParallelization("%", "edge-aware-dynamic-vertex-parallel", 128))",
        R"(configApplyDenseVertexSet("%", "bitvector"))"}},
      {"dense-push-numa",
       {R"(configApplyDirection("%", "DensePush"))",
        R"(configApplyParallelization("%", "dynamic-vertex-parallel", 64))",
        R"(configApplyNumSSG("%", "fixed-vertex-count", 4))", R"(configApplyNUMA("%", "dynamic-parallel"))"}},
      {"pull-edge-parallel",
       {R"(configApplyDirection("%", "DensePull"))", R"(configApplyParallelization("%", "edge-parallel", 8))"}},
  };
  std::vector<NamedSchedule> out;
  for (const auto& t : templates) {
    std::string text;
    for (const auto& label : labels) {
      for (const auto& c : t.calls) {
        std::string call = c;
        call.replace(call.find('%'), 1, label);
        text += (text.empty() ? "program->" : "\n    ->") + call;
      }
    }
    if (!text.empty()) text += ";";
    out.push_back({t.name, text});
  }
  return out;
}

std::vector<std::string> traversal_labels(const std::string& source) {
  ScheduledProgram sp = schedule_program(source, Schedule{}, ValidationMode::Strict);
  std::vector<std::string> out;
  for (const auto& [id, plan] : sp.plans) {
    if (!plan.label.empty()) out.push_back(plan.label);
  }
  return out;
}

}  // namespace graphweave
