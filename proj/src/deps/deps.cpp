#include "graphweave/deps/deps.hpp"

namespace graphweave {

const char* sync_kind_name(SyncKind k) {
  switch (k) {
    case SyncKind::NoSync: return "none";
    case SyncKind::Atomic: return "atomic";
    case SyncKind::LocalBufferMerge: return "local-buffer-merge";
  }
  return "";
}

const VectorSync* SyncPlan::find(const std::string& vector) const {
  for (const auto& v : vectors) {
    if (v.vector == vector) return &v;
  }
  return nullptr;
}

std::vector<DistanceVector> distance_vectors(const AccessMap& accesses, const GisVector& v) {
  std::vector<DistanceVector> out;
  for (const auto& a : accesses) {
    DistanceVector d;
    d.vector = a.vector;
    d.indexed_by = a.indexed_by;
    if (a.kind != AccessKind::ReadOnly) {
      auto star_unless = [&](DirTag tag) {
        bool same = (a.indexed_by == Endpoint::Src && tag == DirTag::Src) ||
                    (a.indexed_by == Endpoint::Dst && tag == DirTag::Dst);
        return same ? Dist::Zero : Dist::Star;
      };
      d.outer = star_unless(v.outer.dir);
      d.inner = star_unless(v.inner.dir);
    }
    out.push_back(d);
  }
  return out;
}

SyncPlan infer_sync(const ExecutionPlan& plan, const PlanVariant& variant, const AccessMap& accesses) {
  const GisVector& g = variant.gis;
  const bool outer_par = g.bsg && g.bsg->parallel != ParTag::SR;
  const bool ssg_par = g.ssg && g.ssg->parallel != ParTag::SR;
  const bool inner_par = g.inner.parallel != ParTag::SR;
  SyncPlan s;
  s.dedup_cas = plan.dedup_enabled();
  auto dists = distance_vectors(accesses, g);
  for (std::size_t i = 0; i < accesses.size(); ++i) {
    const VectorAccess& a = accesses[i];
    VectorSync vs{a.vector, a, dists[i], SyncKind::NoSync};
    const bool mergeable = a.kind == AccessKind::Reduction ||
                           (a.kind == AccessKind::AsyncReduction && a.op != AccessOp::Claim);
    if (a.op == AccessOp::Claim) {
      vs.sync = SyncKind::Atomic;
    } else if (a.kind != AccessKind::ReadOnly) {
      const DistanceVector& d = dists[i];
      bool conflict_outer = d.outer == Dist::Star && outer_par;
      // Edge-parallel spans of one neighbor list may repeat a vertex (multi-edges).
      bool conflict_inner = inner_par;
      bool conflict_ssg = d.inner == Dist::Star && ssg_par;
      if (conflict_ssg && !conflict_outer && !conflict_inner && mergeable) {
        vs.sync = SyncKind::LocalBufferMerge;
      } else if (conflict_outer || conflict_inner || conflict_ssg) {
        vs.sync = SyncKind::Atomic;
      }
    }
    s.vectors.push_back(std::move(vs));
  }
  return s;
}

std::vector<SyncPlan> analyze_plan(const Program& p, const ExecutionPlan& plan) {
  AccessMap accesses = classify_chain_accesses(p, plan.chain);
  std::vector<SyncPlan> out;
  for (const auto& v : plan.variants) out.push_back(infer_sync(plan, v, accesses));
  return out;
}

namespace {

std::string class_name(const VectorAccess& a) {
  switch (a.kind) {
    case AccessKind::ReadOnly: return "read-only";
    case AccessKind::WriteOnly: return "write-only";
    case AccessKind::Reduction: return std::string("reduction(") + access_op_name(a.op) + ")";
    case AccessKind::AsyncReduction: return std::string("async-reduction(") + access_op_name(a.op) + ")";
  }
  return "";
}

}  // namespace

std::string format_sync_plan(const SyncPlan& s, bool ascii) {
  std::string out;
  for (const auto& v : s.vectors) {
    auto d = [](Dist x) { return x == Dist::Star ? "*" : "0"; };
    std::string dv = std::string(ascii ? "<" : "\xE2\x9F\xA8") + d(v.distance.outer) + "," + d(v.distance.inner) +
                     (ascii ? ">" : "\xE2\x9F\xA9");
    out += v.vector + "  " + dv + "  " + class_name(v.access) + "  " + sync_kind_name(v.sync) + "\n";
  }
  if (s.dedup_cas) out += "dedup  visited-flag-CAS\n";
  return out;
}

std::string dump_deps(const ScheduledProgram& sp, bool ascii) {
  std::string out;
  if (!sp.program.main) return out;
  for_each_stmt(sp.program.main->body, [&](const Stmt& st) {
    auto it = sp.plans.find(st.id);
    if (it == sp.plans.end()) return;
    const ExecutionPlan& plan = it->second;
    auto syncs = analyze_plan(sp.program, plan);
    std::string name = plan.label.empty() ? "@" + std::to_string(st.id) : plan.label;
    for (std::size_t i = 0; i < syncs.size(); ++i) {
      out += name + " [" + direction_name(plan.variants[i].gis.direction()) + "] " +
             format_gis(plan.variants[i].gis, ascii) + "\n";
      out += format_sync_plan(syncs[i], ascii);
    }
  });
  return out;
}

}  // namespace graphweave
