#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphweave/error.hpp"

namespace graphweave {

enum class SchedFunc {
  ConfigApplyDirection,
  ConfigApplyParallelization,
  ConfigApplyDenseVertexSet,
  ConfigApplyNumSSG,
  ConfigApplyNUMA,
  FuseFields,
  FuseForLoop,
  FuseApplyFunctions,
  SplitForLoop,
};

const char* sched_func_name(SchedFunc f);
std::optional<SchedFunc> sched_func_from_name(const std::string& name);

/// One scheduling call with its arguments already sorted into roles.
struct ScheduleCall {
  SchedFunc func = SchedFunc::ConfigApplyDirection;
  std::vector<std::string> labels;  // target label(s); fuse/split also carry new labels here
  std::string option;               // primary config option
  std::string vertexset_side;       // configApplyDenseVertexSet only
  std::optional<std::int64_t> number;  // grain size, segment count or split point
  std::optional<std::string> direction;
  std::vector<std::string> fields;  // fuseFields
  std::string new_name;             // fused loop label / fused function name
  SourcePos pos;

  friend bool operator==(const ScheduleCall& a, const ScheduleCall& b) {
    return a.func == b.func && a.labels == b.labels && a.option == b.option &&
           a.vertexset_side == b.vertexset_side && a.number == b.number &&
           a.direction == b.direction && a.fields == b.fields && a.new_name == b.new_name;
  }
};

struct Schedule {
  std::vector<ScheduleCall> calls;
  friend bool operator==(const Schedule&, const Schedule&) = default;
};

namespace options {
extern const std::vector<std::string> kDirections;
extern const std::vector<std::string> kParallelization;
extern const std::vector<std::string> kDenseVertexSet;
extern const std::vector<std::string> kVertexSetSides;
extern const std::vector<std::string> kNumSSG;
extern const std::vector<std::string> kNUMA;
extern const std::vector<std::string> kQualifiers;
bool contains(const std::vector<std::string>& vocab, const std::string& s);
}  // namespace options

std::string to_string(const ScheduleCall& call);
/// Serializes as a single `program->...;` chain (empty string for no calls).
std::string to_string(const Schedule& schedule);

}  // namespace graphweave
