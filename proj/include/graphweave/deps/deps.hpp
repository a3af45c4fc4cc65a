#pragma once

#include <string>
#include <vector>

#include "graphweave/gis/gis.hpp"
#include "graphweave/lang/access.hpp"

namespace graphweave {

enum class Dist { Zero, Star };

struct DistanceVector {
  std::string vector;
  Dist outer = Dist::Zero;
  Dist inner = Dist::Zero;
  Endpoint indexed_by = Endpoint::None;
};

enum class SyncKind { NoSync, Atomic, LocalBufferMerge };

const char* sync_kind_name(SyncKind k);

struct VectorSync {
  std::string vector;
  VectorAccess access;
  DistanceVector distance;
  SyncKind sync = SyncKind::NoSync;
};

struct SyncPlan {
  std::vector<VectorSync> vectors;
  bool dedup_cas = false;

  const VectorSync* find(const std::string& vector) const;
};

std::vector<DistanceVector> distance_vectors(const AccessMap& accesses, const GisVector& v);

SyncPlan infer_sync(const ExecutionPlan& plan, const PlanVariant& variant, const AccessMap& accesses);

/// Sync plans for every variant of a plan, in variant order.
std::vector<SyncPlan> analyze_plan(const Program& p, const ExecutionPlan& plan);

/// `name  ⟨d_outer,d_inner⟩  class  sync` per vector.
std::string format_sync_plan(const SyncPlan& s, bool ascii = false);
/// Every plan and variant of a scheduled program.
std::string dump_deps(const ScheduledProgram& sp, bool ascii = false);

}  // namespace graphweave
