#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace graphweave {

/// Exit code for a verify run with mismatching schedules.
inline constexpr int kExitMismatch = 3;

struct RunConfig {
  std::string program;   // path or shipped program name
  std::string schedule;  // file, "default"/"tuned" for shipped programs, or empty
  std::string graph;     // file or gen:<spec>
  std::map<std::string, std::string> params;
  int threads = 1;
  std::optional<double> hybrid_threshold;
  std::string out;    // vector TSV; stdout when empty
  std::string stats;  // stats JSON
  std::string vector;
  std::uint64_t seed = 1;
};

struct VerifyConfig {
  std::string program;
  std::string graph;
  std::vector<std::string> schedules;  // files; the built-in matrix when empty
  std::map<std::string, std::string> params;
  int threads = 4;
  std::optional<double> hybrid_threshold;
  std::uint64_t seed = 1;
};

struct BenchConfig {
  std::vector<std::string> programs;
  std::vector<std::string> graphs;
  std::vector<std::string> schedules = {"default"};
  std::map<std::string, std::string> params;
  int repeats = 3;
  int threads = 1;
  std::optional<double> hybrid_threshold;
  std::string out;  // .json for JSON, anything else CSV; stdout when empty
  std::uint64_t seed = 1;
};

struct TuneConfig {
  std::string program;
  std::string graph;
  std::string schedule;  // base schedule
  std::string label;
  int trials = 0;
  double seconds = 0;
  std::uint64_t seed = 0;
  std::string space;  // JSON axis restriction file
  std::string out;    // history JSON
  std::map<std::string, std::string> params;
  int threads = 1;
  std::optional<double> hybrid_threshold;
};

struct DumpConfig {
  std::string program;
  std::string schedule;
  bool ascii = false;
};

struct ConvertConfig {
  std::string input;
  std::string output;
  std::uint64_t seed = 1;
};

int cmd_run(const RunConfig& c, std::ostream& out);
int cmd_verify(const VerifyConfig& c, std::ostream& out);
int cmd_bench(const BenchConfig& c, std::ostream& out);
int cmd_tune(const TuneConfig& c, std::ostream& out);
int cmd_dump_ir(const DumpConfig& c, std::ostream& out);
int cmd_dump_deps(const DumpConfig& c, std::ostream& out);
int cmd_dump_plan(const DumpConfig& c, std::ostream& out);
int cmd_convert(const ConvertConfig& c, std::ostream& out);

/// Runs a command, turning errors into a diagnostic on `err` and exit code 1
/// (front end and input errors) or 2 (runtime errors).
template <class Fn>
int guarded(Fn&& fn, std::ostream& err);

/// First mismatch between two value arrays, or nothing. Exact comparison when
/// `rel_tol` is zero; otherwise |a-b| <= rel_tol * max(|a|,|b|), with 1e-12 as
/// the absolute floor.
std::optional<std::string> compare_values(const std::vector<double>& got, const std::vector<double>& expected,
                                          double rel_tol);

}  // namespace graphweave

#include "graphweave/error.hpp"

namespace graphweave {

template <class Fn>
int guarded(Fn&& fn, std::ostream& err) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_runtime() ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace graphweave
