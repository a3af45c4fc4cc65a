#pragma once

#include <string>

#include "graphweave/deps/deps.hpp"
#include "graphweave/gis/gis.hpp"

namespace graphweave {

/// Loop-nest pseudo-code the engine executes for one variant.
std::string variant_pseudocode(const ExecutionPlan& plan, const PlanVariant& v, const SyncPlan& sync);

/// Pseudo-code for every traversal of a scheduled program.
std::string dump_plan(const ScheduledProgram& sp, bool ascii = false);

}  // namespace graphweave
