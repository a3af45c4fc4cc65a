#pragma once

#include <string_view>
#include <vector>

#include "graphweave/lang/ast.hpp"
#include "graphweave/lang/lexer.hpp"
#include "graphweave/lang/schedule.hpp"

namespace graphweave {

struct ParsedSource {
  Program program;
  Schedule schedule;
  bool has_schedule_section = false;
};

/// Parses declarations, functions and main. Stops at a top-level `schedule:`.
Program parse_program(const std::vector<Token>& tokens);

/// Parses `program->call(...)->...;` statements. A leading `schedule:` is accepted.
Schedule parse_schedule(const std::vector<Token>& tokens);

ParsedSource parse_source(std::string_view text);
Schedule parse_schedule_text(std::string_view text);

struct RawSchedArg {
  enum class Kind { String, Int, List };
  Kind kind = Kind::String;
  std::string text;
  std::int64_t value = 0;
  std::vector<std::string> list;
  SourcePos pos;
};

/// Validates arity and option vocabularies and sorts arguments into roles.
ScheduleCall build_schedule_call(const std::string& func, const std::vector<RawSchedArg>& args,
                                 SourcePos pos);

}  // namespace graphweave
