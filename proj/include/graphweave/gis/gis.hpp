#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphweave/lang/ast.hpp"
#include "graphweave/lang/chain.hpp"
#include "graphweave/lang/schedule.hpp"
#include "graphweave/transforms/transforms.hpp"

namespace graphweave {

enum class ParTag { SR, SP, WSP };
enum class PartScheme { FVC, EVC };
enum class DirTag { Src, Dst };
enum class FilterTag { None, SA, BA, BV };
enum class Direction { SparsePush, DensePush, DensePull };

const char* par_tag_name(ParTag t);
const char* part_scheme_name(PartScheme s);
const char* dir_tag_name(DirTag d);
const char* filter_tag_name(FilterTag f);
const char* direction_name(Direction d);
std::optional<Direction> direction_from_name(const std::string& s);

/// Partitioned dimension (SSG or BSG). For BSG `amount` is the grain; for SSG the segment count.
struct DimCfg {
  ParTag parallel = ParTag::SR;
  PartScheme scheme = PartScheme::FVC;
  std::int64_t amount = 0;
  bool operator==(const DimCfg&) const = default;
};

struct IterCfg {
  DirTag dir = DirTag::Src;
  ParTag parallel = ParTag::SR;
  FilterTag filter = FilterTag::None;
  bool operator==(const IterCfg&) const = default;
};

struct GisVector {
  std::optional<DimCfg> ssg;
  std::optional<DimCfg> bsg;
  IterCfg outer;
  IterCfg inner;

  Direction direction() const;
  bool operator==(const GisVector&) const = default;
};

/// Default vector for a direction, given which frontiers the chain supplies.
GisVector direction_vector(Direction d, bool has_from, bool has_to);

struct PlanVariant {
  GisVector gis;
  std::int64_t edge_grain = 256;  // neighbor-span size when the inner dimension is parallel
  bool operator==(const PlanVariant&) const = default;
};

struct ExecutionPlan {
  int stmt_id = -1;
  std::string label;  // full scoped label, empty when unlabelled
  ApplyChain chain;
  std::vector<PlanVariant> variants;  // hybrid: [dense, sparse]

  bool hybrid() const { return variants.size() == 2; }
  bool dedup_enabled() const { return chain.modified && chain.dedup; }
  bool operator==(const ExecutionPlan&) const = default;
};

ExecutionPlan default_plan(const Program& p, const Stmt& s);

enum class ValidationMode { Strict, Lenient };

struct DroppedCall {
  ScheduleCall call;
  std::string reason;
};

struct ScheduledProgram {
  Program program;
  std::map<int, ExecutionPlan> plans;  // by statement id
  LayoutPlan layout;
  std::vector<DroppedCall> dropped;

  const ExecutionPlan* plan_for_label(const std::string& label) const;
};

/// Runs program-structure transforms in schedule order, then lowers the
/// configApply* calls onto per-statement plans.
ScheduledProgram apply_schedule(const Program& p, const Schedule& s, ValidationMode mode = ValidationMode::Strict);

/// Checks structural invariants; throws InvalidCombination.
void validate_plan(const ExecutionPlan& plan);

std::string format_gis(const GisVector& v, bool ascii = false);
std::string format_plan(const ExecutionPlan& plan, bool ascii = false);
/// One line per plan in program order: `label: vectors`.
std::string dump_ir(const ScheduledProgram& sp, bool ascii = false);

/// Parses one vector in either notation; throws ParseError.
GisVector parse_gis(const std::string& text);
/// Parses `v1 and v2`.
std::vector<GisVector> parse_gis_list(const std::string& text);

}  // namespace graphweave
