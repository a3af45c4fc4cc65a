#include "graphweave/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "graphweave/cli/corpus.hpp"
#include "graphweave/cli/oracles.hpp"
#include "graphweave/deps/deps.hpp"
#include "graphweave/exec/plan_dump.hpp"
#include "graphweave/exec/pool.hpp"
#include "graphweave/exec/program.hpp"
#include "graphweave/lang/parser.hpp"
#include "graphweave/pipeline.hpp"
#include "graphweave/tune/autotuner.hpp"

namespace fs = std::filesystem;

namespace graphweave {

namespace {

std::optional<Schedule> resolve_schedule(const std::string& arg, const std::string& program_path) {
  if (arg.empty()) return std::nullopt;
  if (fs::exists(arg)) return load_schedule_file(arg);
  if (const CorpusProgram* cp = find_corpus_program(program_path); cp && (arg == "default" || arg == "tuned")) {
    return load_schedule_file(corpus_schedule_path(cp->name, arg));
  }
  throw Error(ErrorKind::IoError, "schedule file not found: " + arg);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::IoError, "cannot write " + path);
  f << text;
}

RunOptions run_options(const std::map<std::string, std::string>& params, int threads,
                       const std::optional<double>& threshold) {
  RunOptions ro;
  ro.params = params;
  ro.threads = resolve_thread_count(threads);
  if (threshold) ro.hybrid_threshold = *threshold;
  return ro;
}

std::string output_vector(const CompiledProgram& cp, const std::string& requested, const std::string& program) {
  if (!requested.empty()) return requested;
  if (const CorpusProgram* c = find_corpus_program(program)) return c->output_vector;
  if (cp.syms.vector_names.empty()) return "";
  return cp.syms.vector_names.front();
}

std::string counters_text(const Counters& c) {
  std::ostringstream os;
  os << "edges_examined=" << c.edges_examined << " edges_applied=" << c.edges_applied
     << " atomics=" << c.atomics_executed << " conversions=" << c.frontier_conversions
     << " ssg_passes=" << c.ssg_passes << " merge_ops=" << c.merge_ops;
  return os.str();
}

std::vector<double> to_doubles(const std::vector<std::int64_t>& v) { return {v.begin(), v.end()}; }

/// Reference output of a corpus program, computed after a run so the
/// program's resolved parameters can be read back.
struct Reference {
  std::vector<double> values;
  std::vector<std::int64_t> levels;  // BFS only
  double initial_loss = 0;          // CF only
};

Reference reference_for(OracleKind kind, const Graph& g, const ProgramRunner& r) {
  Reference ref;
  auto source = [&] { return static_cast<VertexId>(r.scalar_value("source")); };
  auto iters = [&] { return static_cast<int>(r.scalar_value("maxIters")); };
  switch (kind) {
    case OracleKind::PageRank: ref.values = oracle::pagerank(g, r.scalar_value("damp"), iters()); break;
    case OracleKind::PRDelta:
      ref.values = oracle::prdelta(g, r.scalar_value("damp"), r.scalar_value("epsilon"), iters());
      break;
    case OracleKind::BFS: ref.levels = oracle::bfs_levels(g, source()); break;
    case OracleKind::CC: ref.values = to_doubles(oracle::cc_labels(g)); break;
    case OracleKind::SSSP: ref.values = to_doubles(oracle::sssp(g, source())); break;
    case OracleKind::BC: ref.values = oracle::bc(g, source()); break;
    case OracleKind::CF:
      ref.initial_loss = oracle::cf_loss(g, oracle::cf_initial(g.num_vertices()), r.scalar_value("lambda"));
      break;
    case OracleKind::None: break;
  }
  return ref;
}

oracle::Latent latent_of(const ProgramRunner& r) {
  oracle::Latent l;
  for (int k = 0; k < oracle::kLatentDim; ++k) {
    l.user.push_back(r.vector_values("UL" + std::to_string(k)));
    l.item.push_back(r.vector_values("IL" + std::to_string(k)));
  }
  return l;
}

}  // namespace

std::optional<std::string> compare_values(const std::vector<double>& got, const std::vector<double>& expected,
                                          double rel_tol) {
  if (got.size() != expected.size()) {
    return "length " + std::to_string(got.size()) + " differs from expected " + std::to_string(expected.size());
  }
  for (std::size_t v = 0; v < got.size(); ++v) {
    double a = got[v], b = expected[v];
    bool ok = rel_tol == 0 ? a == b
                           : std::fabs(a - b) <= std::max(rel_tol * std::max(std::fabs(a), std::fabs(b)), 1e-12);
    if (!ok) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "vertex %zu: got %.17g, expected %.17g", v, a, b);
      return std::string(buf);
    }
  }
  return std::nullopt;
}

int cmd_run(const RunConfig& c, std::ostream& out) {
  std::string path = resolve_program_path(c.program);
  std::string source = read_text_file(path);
  std::optional<Schedule> sched = resolve_schedule(c.schedule, path);
  Graph g = load_graph_arg(c.graph, c.seed);
  auto cp = compile_program(source, sched, ValidationMode::Strict, fs::path(path).stem().string());
  RunOptions ro = run_options(c.params, c.threads, c.hybrid_threshold);
  ro.print_out = &out;
  ProgramRunner runner(*cp, g, ro);
  runner.prepare();
  RunStats st = runner.run();
  std::string vec = output_vector(*cp, c.vector, path);
  if (!vec.empty()) {
    if (c.out.empty()) {
      out << runner.vector_tsv(vec);
    } else {
      write_file(c.out, runner.vector_tsv(vec));
    }
  }
  if (!c.stats.empty()) write_file(c.stats, stats_to_json(st, cp->name) + "\n");
  return 0;
}

int cmd_verify(const VerifyConfig& c, std::ostream& out) {
  std::string path = resolve_program_path(c.program);
  std::string source = read_text_file(path);
  Graph g = load_graph_arg(c.graph, c.seed);
  const CorpusProgram* entry = find_corpus_program(path);
  OracleKind kind = entry ? entry->oracle : OracleKind::None;

  std::vector<NamedSchedule> matrix;
  if (c.schedules.empty()) {
    matrix = schedule_matrix(traversal_labels(source));
  } else {
    for (const auto& s : c.schedules) matrix.push_back({s, to_string(load_schedule_file(s))});
  }

  std::string vec;
  std::optional<Reference> ref;
  std::vector<double> baseline;  // serial default output, for programs without a value oracle
  std::vector<oracle::Latent> cf_baseline;
  {
    auto cp = compile_program(source, Schedule{}, ValidationMode::Strict, "verify");
    ProgramRunner r(*cp, g, run_options(c.params, 1, c.hybrid_threshold));
    r.prepare();
    r.run();
    vec = output_vector(*cp, "", path);
    ref = reference_for(kind, g, r);
    baseline = r.vector_values(vec);
    if (kind == OracleKind::CF) {
      cf_baseline.push_back(latent_of(r));
      double final_loss = oracle::cf_loss(g, cf_baseline[0], r.scalar_value("lambda"));
      oracle::Latent sgd = oracle::cf_sgd(g, r.scalar_value("step"), r.scalar_value("lambda"),
                                          static_cast<int>(r.scalar_value("maxIters")));
      out << "loss: initial " << ref->initial_loss << ", program " << final_loss << ", serial sgd "
          << oracle::cf_loss(g, sgd, r.scalar_value("lambda")) << "\n";
    }
  }

  int failures = 0;
  std::string first_failure;
  for (const auto& ns : matrix) {
    std::optional<std::string> problem;
    Counters counters;
    try {
      Schedule s = ns.text.empty() ? Schedule{} : parse_schedule_text(ns.text);
      auto cp = compile_program(source, s, ValidationMode::Strict, "verify");
      ProgramRunner r(*cp, g, run_options(c.params, c.threads, c.hybrid_threshold));
      r.prepare();
      counters = r.run().totals;
      std::vector<double> got = r.vector_values(vec);
      switch (kind) {
        case OracleKind::BFS:
          problem = oracle::check_bfs_parents(g, static_cast<VertexId>(r.scalar_value("source")), got, ref->levels);
          break;
        case OracleKind::CC:
        case OracleKind::SSSP: problem = compare_values(got, ref->values, 0); break;
        case OracleKind::PageRank:
        case OracleKind::PRDelta:
        case OracleKind::BC: problem = compare_values(got, ref->values, 1e-6); break;
        case OracleKind::CF: {
          oracle::Latent l = latent_of(r);
          double loss = oracle::cf_loss(g, l, r.scalar_value("lambda"));
          if (!(loss < ref->initial_loss)) {
            problem = "loss did not decrease: " + std::to_string(loss) + " >= " + std::to_string(ref->initial_loss);
          }
          for (int k = 0; k < oracle::kLatentDim && !problem; ++k) {
            problem = compare_values(l.user[k], cf_baseline[0].user[k], 1e-6);
            if (!problem) problem = compare_values(l.item[k], cf_baseline[0].item[k], 1e-6);
          }
          break;
        }
        case OracleKind::None: problem = compare_values(got, baseline, 1e-6); break;
      }
    } catch (const Error& e) {
      problem = e.what();
    }
    if (problem) {
      ++failures;
      if (first_failure.empty()) first_failure = ns.name + ": " + *problem;
      out << "FAIL " << ns.name << ": " << *problem << "\n";
    } else {
      out << "PASS " << ns.name << " " << counters_text(counters) << "\n";
    }
  }
  out << (matrix.size() - failures) << "/" << matrix.size() << " schedules agree with the reference\n";
  if (failures > 0) {
    out << "first divergence: " << first_failure << "\n";
    return kExitMismatch;
  }
  return 0;
}

int cmd_bench(const BenchConfig& c, std::ostream& out) {
  if (c.repeats <= 0) throw Error(ErrorKind::BudgetZero, "bench needs at least one repeat");
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& gspec : c.graphs) {
    std::optional<Graph> g;
    std::string graph_error;
    try {
      g = load_graph_arg(gspec, c.seed);
    } catch (const Error& e) {
      graph_error = e.what();
    }
    for (const auto& prog : c.programs) {
      for (const auto& sched : c.schedules) {
        nlohmann::ordered_json row;
        row["program"] = prog;
        row["graph"] = gspec;
        row["schedule"] = sched;
        try {
          if (!g) throw Error(ErrorKind::IoError, graph_error);
          std::string path = resolve_program_path(prog);
          auto cp = compile_program(read_text_file(path), resolve_schedule(sched, path), ValidationMode::Strict,
                                    fs::path(path).stem().string());
          RunOptions ro = run_options(c.params, c.threads, c.hybrid_threshold);
          ro.record_traversals = false;
          ProgramRunner r(*cp, *g, ro);
          r.prepare();
          r.run();
          std::vector<std::int64_t> times;
          Counters counters;
          for (int i = 0; i < c.repeats; ++i) {
            RunStats st = r.run();
            times.push_back(st.wall_ns);
            counters = st.totals;
          }
          std::sort(times.begin(), times.end());
          row["status"] = "ok";
          row["median_ns"] = times[times.size() / 2];
          row["edges_examined"] = counters.edges_examined;
          row["edges_applied"] = counters.edges_applied;
          row["atomics_executed"] = counters.atomics_executed;
          row["frontier_conversions"] = counters.frontier_conversions;
          row["ssg_passes"] = counters.ssg_passes;
          row["merge_ops"] = counters.merge_ops;
          row["membership_tests"] = counters.membership_tests;
        } catch (const Error& e) {
          row["status"] = "error";
          row["error"] = e.what();
        }
        rows.push_back(row);
      }
    }
  }

  std::ostringstream text;
  bool json = !c.out.empty() && fs::path(c.out).extension() == ".json";
  if (json) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kStatsSchemaVersion;
    doc["repeats"] = c.repeats;
    doc["rows"] = rows;
    text << doc.dump(2) << "\n";
  } else {
    static const std::vector<std::string> cols = {
        "program",       "graph",          "schedule",         "status",
        "median_ns",     "edges_examined", "edges_applied",    "atomics_executed",
        "frontier_conversions", "ssg_passes", "merge_ops",     "membership_tests",
        "error"};
    for (std::size_t i = 0; i < cols.size(); ++i) text << (i ? "," : "") << cols[i];
    text << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) text << ",";
        if (!row.contains(cols[i])) continue;
        const auto& v = row.at(cols[i]);
        if (v.is_string()) {
          std::string s = v.get<std::string>();
          std::replace(s.begin(), s.end(), ',', ';');
          std::replace(s.begin(), s.end(), '\n', ' ');
          text << s;
        } else {
          text << v.dump();
        }
      }
      text << "\n";
    }
  }
  if (c.out.empty()) {
    out << text.str();
  } else {
    write_file(c.out, text.str());
    out << rows.size() << " rows written to " << c.out << "\n";
  }
  return 0;
}

int cmd_tune(const TuneConfig& c, std::ostream& out) {
  if (c.trials <= 0 && c.seconds <= 0) {
    throw Error(ErrorKind::BudgetZero, "tune needs --trials or --seconds greater than zero");
  }
  std::string path = resolve_program_path(c.program);
  std::string source = read_text_file(path);
  std::optional<Schedule> base = resolve_schedule(c.schedule, path);
  ScheduleSpace space = c.space.empty() ? ScheduleSpace::full() : ScheduleSpace::from_json(read_text_file(c.space));
  Graph g = load_graph_arg(c.graph);
  TuneOptions opt;
  opt.label = c.label;
  opt.max_trials = c.trials;
  opt.max_seconds = c.seconds;
  opt.seed = c.seed;
  opt.params = c.params;
  opt.threads = resolve_thread_count(c.threads);
  if (c.hybrid_threshold) opt.hybrid_threshold = *c.hybrid_threshold;
  TuneResult r = tune(source, base, g, space, opt);
  out << r.history.size() << " trials over a space of " << space.size() << " points\n";
  if (const TrialResult* best = r.best_trial()) {
    out << "best median " << *best->median_ns << " ns:\n" << best->schedule << "\n";
  } else {
    out << "no valid schedule found\n";
  }
  if (!c.out.empty()) write_file(c.out, tune_history_json(r, opt) + "\n");
  return 0;
}

namespace {

ScheduledProgram dump_input(const DumpConfig& c) {
  std::string path = resolve_program_path(c.program);
  return schedule_program(read_text_file(path), resolve_schedule(c.schedule, path), ValidationMode::Strict);
}

}  // namespace

int cmd_dump_ir(const DumpConfig& c, std::ostream& out) {
  out << dump_ir(dump_input(c), c.ascii);
  return 0;
}

int cmd_dump_deps(const DumpConfig& c, std::ostream& out) {
  out << dump_deps(dump_input(c), c.ascii);
  return 0;
}

int cmd_dump_plan(const DumpConfig& c, std::ostream& out) {
  out << dump_plan(dump_input(c), c.ascii);
  return 0;
}

int cmd_convert(const ConvertConfig& c, std::ostream& out) {
  Graph g = load_graph_arg(c.input, c.seed);
  std::string ext = fs::path(c.output).extension().string();
  if (ext == ".csr" || ext == ".bin") {
    write_binary(g, c.output);
  } else {
    write_edge_list(g, c.output);
  }
  out << g.num_vertices() << " vertices, " << g.num_edges() << " edges written to " << c.output << "\n";
  return 0;
}

}  // namespace graphweave
