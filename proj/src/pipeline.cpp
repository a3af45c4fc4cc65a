#include "graphweave/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "graphweave/error.hpp"
#include "graphweave/lang/parser.hpp"
#include "graphweave/lang/sema.hpp"
#include "graphweave/transforms/transforms.hpp"

namespace graphweave {

const BoundPlan* CompiledProgram::plan_for(int stmt_id) const {
  auto it = bound.find(stmt_id);
  return it == bound.end() ? nullptr : &it->second;
}

const BoundPlan* CompiledProgram::plan_for_label(const std::string& label) const {
  for (const auto& [id, bp] : bound) {
    if (bp.plan->label == label) return &bp;
  }
  return nullptr;
}

ScheduledProgram schedule_program(const std::string& source, const std::optional<Schedule>& schedule,
                                  ValidationMode mode, Schedule* used) {
  ParsedSource parsed = parse_source(source);
  check_semantics(parsed.program);
  const Schedule& s = schedule ? *schedule : parsed.schedule;
  if (used) *used = s;
  ScheduledProgram sp = apply_schedule(parsed.program, s, mode);
  check_semantics(sp.program);
  return sp;
}

std::unique_ptr<CompiledProgram> compile_program(const std::string& source, const std::optional<Schedule>& schedule,
                                                 ValidationMode mode, const std::string& name) {
  auto cp = std::make_unique<CompiledProgram>();
  cp->name = name;
  cp->sp = schedule_program(source, schedule, mode, &cp->schedule);
  lower_vector_initializers(cp->sp.program);
  cp->syms = Symbols::from(cp->sp.program);
  cp->funcs = compile_functions(cp->sp.program, cp->syms);
  for (const auto& [id, plan] : cp->sp.plans) {
    validate_plan(plan);
    cp->bound.emplace(id, bind_plan(plan, analyze_plan(cp->sp.program, plan), cp->syms, cp->funcs));
  }
  return cp;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Schedule load_schedule_file(const std::string& path) { return parse_schedule_text(read_text_file(path)); }

}  // namespace graphweave
