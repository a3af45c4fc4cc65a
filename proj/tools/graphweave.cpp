#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graphweave/cli/commands.hpp"

using namespace graphweave;

namespace {

struct AlgoArgs {
  std::optional<std::string> iters;
  std::optional<std::string> source;
  std::optional<std::string> damping;
  std::optional<std::string> epsilon;
  std::vector<std::string> params;  // name=value

  void add_to(CLI::App* app) {
    app->add_option("--iters", iters, "Iteration count (param \"iters\")");
    app->add_option("--source", source, "Source vertex (param \"source\")");
    app->add_option("--damping", damping, "Damping factor (param \"damp\")");
    app->add_option("--epsilon", epsilon, "Delta threshold (param \"epsilon\")");
    app->add_option("--param", params, "Program parameter override name=value")->take_all();
  }

  std::map<std::string, std::string> resolve() const {
    std::map<std::string, std::string> out;
    for (const auto& p : params) {
      auto eq = p.find('=');
      if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::ParseError, "--param expects name=value, got " + p);
      out[p.substr(0, eq)] = p.substr(eq + 1);
    }
    if (iters) out["iters"] = *iters;
    if (source) out["source"] = *source;
    if (damping) out["damp"] = *damping;
    if (epsilon) out["epsilon"] = *epsilon;
    return out;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphweave: graph DSL compiler and runtime"};
  app.require_subcommand(1);

  int threads = 1;
  std::optional<double> hybrid;
  bool numa_bind = false;
  auto add_exec = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "Worker threads (GRAPHWEAVE_THREADS overrides)");
    sub->add_option("--hybrid-threshold", hybrid, "Frontier work fraction above which hybrid plans go dense");
    sub->add_flag("--numa-bind", numa_bind, "Accepted for compatibility; memory is not bound to sockets");
  };

  RunConfig run;
  AlgoArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Compile and execute a program");
  run_cmd->add_option("program", run.program, "Program file or shipped program name")->required();
  run_cmd->add_option("--graph", run.graph, "Graph file or gen:<spec>")->required();
  run_cmd->add_option("--schedule", run.schedule, "Schedule file (or default/tuned for shipped programs)");
  run_cmd->add_option("--out", run.out, "Output vector TSV");
  run_cmd->add_option("--stats", run.stats, "Stats JSON");
  run_cmd->add_option("--vector", run.vector, "Vector to output");
  run_cmd->add_option("--seed", run.seed, "Generator seed");
  run_args.add_to(run_cmd);
  add_exec(run_cmd);

  VerifyConfig verify;
  AlgoArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Check a program under a schedule matrix against its reference");
  verify_cmd->add_option("program", verify.program)->required();
  verify_cmd->add_option("--graph", verify.graph)->required();
  verify_cmd->add_option("--schedule", verify.schedules, "Schedule files (default: built-in matrix)")->take_all();
  verify_cmd->add_option("--seed", verify.seed);
  verify_args.add_to(verify_cmd);
  add_exec(verify_cmd);

  BenchConfig bench;
  AlgoArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Median runtimes and counters per program, graph and schedule");
  bench_cmd->add_option("--programs", bench.programs)->required()->delimiter(',');
  bench_cmd->add_option("--graphs", bench.graphs)->required()->delimiter(',');
  bench_cmd->add_option("--schedules", bench.schedules, "default, tuned or schedule files")->delimiter(',');
  bench_cmd->add_option("--repeats", bench.repeats);
  bench_cmd->add_option("--out", bench.out, "CSV, or JSON for a .json path");
  bench_cmd->add_option("--seed", bench.seed);
  bench_args.add_to(bench_cmd);
  add_exec(bench_cmd);

  TuneConfig tune;
  AlgoArgs tune_args;
  auto* tune_cmd = app.add_subcommand("tune", "Search schedules for one labelled traversal");
  tune_cmd->add_option("program", tune.program)->required();
  tune_cmd->add_option("--graph", tune.graph)->required();
  tune_cmd->add_option("--label", tune.label)->required();
  tune_cmd->add_option("--schedule", tune.schedule, "Base schedule");
  tune_cmd->add_option("--trials", tune.trials);
  tune_cmd->add_option("--seconds", tune.seconds);
  tune_cmd->add_option("--seed", tune.seed);
  tune_cmd->add_option("--space", tune.space, "JSON axis restriction file");
  tune_cmd->add_option("--out", tune.out, "History JSON");
  tune_args.add_to(tune_cmd);
  add_exec(tune_cmd);

  DumpConfig dump;
  auto add_dump = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("program", dump.program)->required();
    sub->add_option("--schedule", dump.schedule);
    sub->add_flag("--ascii", dump.ascii, "ASCII instead of Unicode brackets");
    return sub;
  };
  auto* ir_cmd = add_dump("dump-ir", "Print the graph iteration space of every traversal");
  auto* deps_cmd = add_dump("dump-deps", "Print dependence and synchronization tables");
  auto* plan_cmd = add_dump("dump-plan", "Print loop-nest pseudo-code");

  ConvertConfig convert;
  auto* convert_cmd = app.add_subcommand("convert", "Convert between edge lists and binary graph files");
  convert_cmd->add_option("input", convert.input, "Graph file or gen:<spec>")->required();
  convert_cmd->add_option("output", convert.output, ".csr/.bin for binary, anything else for text")->required();
  convert_cmd->add_option("--seed", convert.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  return guarded(
      [&]() -> int {
        if (*run_cmd) {
          run.params = run_args.resolve();
          run.threads = threads;
          run.hybrid_threshold = hybrid;
          return cmd_run(run, std::cout);
        }
        if (*verify_cmd) {
          verify.params = verify_args.resolve();
          if (verify_cmd->count("--threads")) verify.threads = threads;
          verify.hybrid_threshold = hybrid;
          return cmd_verify(verify, std::cout);
        }
        if (*bench_cmd) {
          bench.params = bench_args.resolve();
          bench.threads = threads;
          bench.hybrid_threshold = hybrid;
          return cmd_bench(bench, std::cout);
        }
        if (*tune_cmd) {
          tune.params = tune_args.resolve();
          tune.threads = threads;
          tune.hybrid_threshold = hybrid;
          return cmd_tune(tune, std::cout);
        }
        if (*ir_cmd) return cmd_dump_ir(dump, std::cout);
        if (*deps_cmd) return cmd_dump_deps(dump, std::cout);
        if (*plan_cmd) return cmd_dump_plan(dump, std::cout);
        if (*convert_cmd) return cmd_convert(convert, std::cout);
        return 1;
      },
      std::cerr);
}
