#include <algorithm>

#include "graphweave/lang/parser.hpp"
#include "graphweave/lang/schedule.hpp"

namespace graphweave {

namespace options {
const std::vector<std::string> kDirections = {"SparsePush", "DensePush", "DensePull", "DensePull-SparsePush",
                                              "DensePush-SparsePush"};
const std::vector<std::string> kParallelization = {"serial", "dynamic-vertex-parallel", "static-vertex-parallel",
                                                   "edge-aware-dynamic-vertex-parallel", "edge-parallel"};
const std::vector<std::string> kDenseVertexSet = {"bool-array", "bitvector"};
const std::vector<std::string> kVertexSetSides = {"both", "src-vertexset", "dst-vertexset"};
const std::vector<std::string> kNumSSG = {"fixed-vertex-count", "edge-aware-vertex-count"};
const std::vector<std::string> kNUMA = {"serial", "static-parallel", "dynamic-parallel"};
const std::vector<std::string> kQualifiers = {"SparsePush", "DensePush", "DensePull"};

bool contains(const std::vector<std::string>& vocab, const std::string& s) {
  return std::find(vocab.begin(), vocab.end(), s) != vocab.end();
}
}  // namespace options

const char* sched_func_name(SchedFunc f) {
  switch (f) {
    case SchedFunc::ConfigApplyDirection: return "configApplyDirection";
    case SchedFunc::ConfigApplyParallelization: return "configApplyParallelization";
    case SchedFunc::ConfigApplyDenseVertexSet: return "configApplyDenseVertexSet";
    case SchedFunc::ConfigApplyNumSSG: return "configApplyNumSSG";
    case SchedFunc::ConfigApplyNUMA: return "configApplyNUMA";
    case SchedFunc::FuseFields: return "fuseFields";
    case SchedFunc::FuseForLoop: return "fuseForLoop";
    case SchedFunc::FuseApplyFunctions: return "fuseApplyFunctions";
    case SchedFunc::SplitForLoop: return "splitForLoop";
  }
  return "";
}

std::optional<SchedFunc> sched_func_from_name(const std::string& name) {
  for (SchedFunc f : {SchedFunc::ConfigApplyDirection, SchedFunc::ConfigApplyParallelization,
                      SchedFunc::ConfigApplyDenseVertexSet, SchedFunc::ConfigApplyNumSSG, SchedFunc::ConfigApplyNUMA,
                      SchedFunc::FuseFields, SchedFunc::FuseForLoop, SchedFunc::FuseApplyFunctions,
                      SchedFunc::SplitForLoop}) {
    if (name == sched_func_name(f)) return f;
  }
  return std::nullopt;
}

namespace {

using Kind = RawSchedArg::Kind;

void check_arity(const std::string& func, const std::vector<RawSchedArg>& args, std::size_t lo, std::size_t hi,
                 SourcePos pos) {
  if (args.size() < lo || args.size() > hi) {
    std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi);
    throw Error(ErrorKind::ArityError,
                func + " takes " + want + " arguments, got " + std::to_string(args.size()), pos);
  }
}

const std::string& string_arg(const std::string& func, const RawSchedArg& a, const char* role) {
  if (a.kind != Kind::String) {
    throw Error(ErrorKind::ArityError, func + ": expected string for " + role, a.pos);
  }
  return a.text;
}

std::int64_t int_arg(const std::string& func, const RawSchedArg& a, const char* role) {
  if (a.kind != Kind::Int) {
    throw Error(ErrorKind::ArityError, func + ": expected integer for " + role, a.pos);
  }
  return a.value;
}

std::string option_arg(const std::string& func, const RawSchedArg& a, const std::vector<std::string>& vocab) {
  const std::string& s = string_arg(func, a, "option");
  if (!options::contains(vocab, s)) {
    throw Error(ErrorKind::UnknownOption, func + ": unknown option \"" + s + "\"", a.pos);
  }
  return s;
}

std::string qualifier_arg(const std::string& func, const RawSchedArg& a) {
  const std::string& s = string_arg(func, a, "direction");
  if (!options::contains(options::kQualifiers, s)) {
    throw Error(ErrorKind::UnknownOption, func + ": unknown direction \"" + s + "\"", a.pos);
  }
  return s;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

ScheduleCall build_schedule_call(const std::string& func, const std::vector<RawSchedArg>& args, SourcePos pos) {
  auto which = sched_func_from_name(func);
  if (!which) throw Error(ErrorKind::UnknownSchedulingFunction, "unknown scheduling function " + func, pos);
  ScheduleCall c;
  c.func = *which;
  c.pos = pos;
  switch (c.func) {
    case SchedFunc::ConfigApplyDirection:
      check_arity(func, args, 2, 2, pos);
      c.labels.push_back(string_arg(func, args[0], "label"));
      c.option = option_arg(func, args[1], options::kDirections);
      break;
    case SchedFunc::ConfigApplyParallelization:
      check_arity(func, args, 2, 4, pos);
      c.labels.push_back(string_arg(func, args[0], "label"));
      c.option = option_arg(func, args[1], options::kParallelization);
      for (std::size_t i = 2; i < args.size(); ++i) {
        if (args[i].kind == Kind::Int && !c.number && !c.direction) {
          c.number = args[i].value;
          if (*c.number < 1) throw Error(ErrorKind::UnknownOption, func + ": grain size must be positive", args[i].pos);
        } else if (args[i].kind == Kind::String && !c.direction) {
          c.direction = qualifier_arg(func, args[i]);
        } else {
          throw Error(ErrorKind::ArityError, func + ": unexpected argument", args[i].pos);
        }
      }
      break;
    case SchedFunc::ConfigApplyDenseVertexSet:
      check_arity(func, args, 2, 4, pos);
      c.labels.push_back(string_arg(func, args[0], "label"));
      // Option and vertexset side come from disjoint vocabularies, so either order is accepted.
      for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& s = string_arg(func, args[i], "option");
        if (options::contains(options::kDenseVertexSet, s) && c.option.empty()) {
          c.option = s;
        } else if (options::contains(options::kVertexSetSides, s) && c.vertexset_side.empty()) {
          c.vertexset_side = s;
        } else if (options::contains(options::kQualifiers, s) && !c.direction) {
          c.direction = s;
        } else {
          throw Error(ErrorKind::UnknownOption, func + ": unknown option \"" + s + "\"", args[i].pos);
        }
      }
      if (c.option.empty()) throw Error(ErrorKind::ArityError, func + ": missing bool-array/bitvector option", pos);
      if (c.vertexset_side.empty()) c.vertexset_side = "both";
      break;
    case SchedFunc::ConfigApplyNumSSG:
      check_arity(func, args, 3, 4, pos);
      c.labels.push_back(string_arg(func, args[0], "label"));
      c.option = option_arg(func, args[1], options::kNumSSG);
      c.number = int_arg(func, args[2], "numSegments");
      if (args.size() == 4) c.direction = qualifier_arg(func, args[3]);
      break;
    case SchedFunc::ConfigApplyNUMA:
      check_arity(func, args, 2, 3, pos);
      c.labels.push_back(string_arg(func, args[0], "label"));
      c.option = option_arg(func, args[1], options::kNUMA);
      if (args.size() == 3) c.direction = qualifier_arg(func, args[2]);
      break;
    case SchedFunc::FuseFields:
      if (args.size() == 1 && args[0].kind == Kind::List) {
        c.fields = args[0].list;
      } else {
        for (const auto& a : args) c.fields.push_back(string_arg(func, a, "field"));
      }
      if (c.fields.empty()) throw Error(ErrorKind::ArityError, func + " needs at least one vector", pos);
      break;
    case SchedFunc::FuseForLoop:
    case SchedFunc::FuseApplyFunctions:
      check_arity(func, args, 3, 3, pos);
      c.labels.push_back(string_arg(func, args[0], "label"));
      c.labels.push_back(string_arg(func, args[1], "label"));
      c.new_name = string_arg(func, args[2], "name");
      break;
    case SchedFunc::SplitForLoop:
      check_arity(func, args, 4, 4, pos);
      c.labels.push_back(string_arg(func, args[0], "label"));
      c.labels.push_back(string_arg(func, args[1], "label"));
      c.labels.push_back(string_arg(func, args[2], "label"));
      c.number = int_arg(func, args[3], "split point");
      break;
  }
  return c;
}

std::string to_string(const ScheduleCall& c) {
  std::vector<std::string> parts;
  switch (c.func) {
    case SchedFunc::ConfigApplyDirection:
      parts = {quoted(c.labels.at(0)), quoted(c.option)};
      break;
    case SchedFunc::ConfigApplyParallelization:
      parts = {quoted(c.labels.at(0)), quoted(c.option)};
      if (c.number) parts.push_back(std::to_string(*c.number));
      if (c.direction) parts.push_back(quoted(*c.direction));
      break;
    case SchedFunc::ConfigApplyDenseVertexSet:
      parts = {quoted(c.labels.at(0)), quoted(c.option), quoted(c.vertexset_side)};
      if (c.direction) parts.push_back(quoted(*c.direction));
      break;
    case SchedFunc::ConfigApplyNumSSG:
      parts = {quoted(c.labels.at(0)), quoted(c.option), std::to_string(c.number.value_or(1))};
      if (c.direction) parts.push_back(quoted(*c.direction));
      break;
    case SchedFunc::ConfigApplyNUMA:
      parts = {quoted(c.labels.at(0)), quoted(c.option)};
      if (c.direction) parts.push_back(quoted(*c.direction));
      break;
    case SchedFunc::FuseFields: {
      std::string list = "{";
      for (std::size_t i = 0; i < c.fields.size(); ++i) {
        if (i) list += ", ";
        list += quoted(c.fields[i]);
      }
      parts = {list + "}"};
      break;
    }
    case SchedFunc::FuseForLoop:
    case SchedFunc::FuseApplyFunctions:
      parts = {quoted(c.labels.at(0)), quoted(c.labels.at(1)), quoted(c.new_name)};
      break;
    case SchedFunc::SplitForLoop:
      parts = {quoted(c.labels.at(0)), quoted(c.labels.at(1)), quoted(c.labels.at(2)),
               std::to_string(c.number.value_or(0))};
      break;
  }
  std::string out = sched_func_name(c.func);
  out += "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  return out + ")";
}

std::string to_string(const Schedule& s) {
  if (s.calls.empty()) return "";
  std::string out = "program";
  for (const auto& c : s.calls) out += "\n    ->" + to_string(c);
  return out + ";\n";
}

}  // namespace graphweave
