#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "graphweave/deps/deps.hpp"
#include "graphweave/exec/compiled.hpp"
#include "graphweave/exec/engine.hpp"
#include "graphweave/gis/gis.hpp"
#include "graphweave/lang/schedule.hpp"

namespace graphweave {

/// A program ready to execute. Holds pointers into itself, so it is never copied.
struct CompiledProgram {
  std::string name;
  Schedule schedule;
  ScheduledProgram sp;
  Symbols syms;
  std::vector<CompiledFunc> funcs;
  std::map<int, BoundPlan> bound;  // by statement id

  CompiledProgram() = default;
  CompiledProgram(const CompiledProgram&) = delete;
  CompiledProgram& operator=(const CompiledProgram&) = delete;

  const BoundPlan* plan_for(int stmt_id) const;
  const BoundPlan* plan_for_label(const std::string& label) const;
};

/// Parses and checks a source, applies `schedule` (or the source's own schedule
/// section when none is given), lowers initializers, infers synchronization and
/// compiles every function.
std::unique_ptr<CompiledProgram> compile_program(const std::string& source,
                                                 const std::optional<Schedule>& schedule = std::nullopt,
                                                 ValidationMode mode = ValidationMode::Strict,
                                                 const std::string& name = "<program>");

/// Front half of compile_program: parse, check and schedule.
ScheduledProgram schedule_program(const std::string& source, const std::optional<Schedule>& schedule,
                                  ValidationMode mode, Schedule* used = nullptr);

std::string read_text_file(const std::string& path);
/// Reads a schedule file; accepts an optional leading `schedule:`.
Schedule load_schedule_file(const std::string& path);

}  // namespace graphweave
