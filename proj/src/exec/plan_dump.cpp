#include "graphweave/exec/plan_dump.hpp"

#include <sstream>

namespace graphweave {

namespace {

const char* par_word(ParTag t) {
  switch (t) {
    case ParTag::SR: return "for";
    case ParTag::SP: return "parallel_for";
    case ParTag::WSP: return "parallel_for(dynamic)";
  }
  return "for";
}

std::string set_test(const std::string& set, FilterTag f, const std::string& v) {
  std::string repr = f == FilterTag::BV ? "bitvector" : "bool";
  return set + "." + repr + "[" + v + "]";
}

}  // namespace

std::string variant_pseudocode(const ExecutionPlan& plan, const PlanVariant& v, const SyncPlan& sync) {
  const GisVector& g = v.gis;
  const ApplyChain& c = plan.chain;
  const Direction dir = g.direction();
  const bool push = dir != Direction::DensePull;
  const std::string outer = push ? "src" : "dst";
  const std::string inner = push ? "dst" : "src";
  std::ostringstream os;
  int depth = 1;
  auto line = [&](const std::string& s) { os << std::string(depth * 2, ' ') << s << "\n"; };

  bool uses_buffers = false;
  for (const auto& vs : sync.vectors) uses_buffers |= vs.sync == SyncKind::LocalBufferMerge;

  if (c.modified) line("output = new sparse_frontier()");
  std::string graph = "g";
  if (g.ssg) {
    line(std::string(par_word(g.ssg->parallel)) + " (ssg_id in 0.." + std::to_string(g.ssg->amount) + ") {  // " +
         part_scheme_name(g.ssg->scheme));
    ++depth;
    line("sg = g.SSG_list[ssg_id]");
    if (uses_buffers) line("local = local_buffers[ssg_id]");
    graph = "sg";
  }
  std::string range = dir == Direction::SparsePush && c.from_set ? "frontier.ids" : "vertices";
  if (g.bsg) {
    line(std::string(par_word(g.bsg->parallel)) + " (chunk in " + range + ", grain " +
         std::to_string(g.bsg->amount) + ", " + part_scheme_name(g.bsg->scheme) + ") {");
    ++depth;
    line("for (" + outer + " in chunk) {");
  } else {
    line("for (" + outer + " in " + range + ") {");
  }
  ++depth;
  if (push) {
    if (dir == Direction::DensePush && c.from_set) line("if (!" + set_test("frontier", g.outer.filter, "src") + ") continue");
    if (!c.src_filter.empty()) line("if (!" + c.src_filter + "(src)) continue");
  } else {
    if (c.to_set) line("if (!" + set_test("to_frontier", g.outer.filter, "dst") + ") continue");
    if (!c.dst_filter.empty()) line("if (!" + c.dst_filter + "(dst)) continue");
  }
  std::string nbrs = push ? graph + ".out_neighbors(src)" : graph + ".in_neighbors(dst)";
  line(std::string(g.inner.parallel == ParTag::SR ? "for" : par_word(g.inner.parallel)) + " (" + inner + " in " +
       nbrs + (g.inner.parallel == ParTag::SR ? "" : ", grain " + std::to_string(v.edge_grain)) + ") {");
  ++depth;
  if (push) {
    if (c.to_set) line("if (!" + set_test("to_frontier", g.inner.filter, "dst") + ") continue");
    if (!c.dst_filter.empty()) line("if (!" + c.dst_filter + "(dst)) continue");
  } else {
    if (c.from_set) line("if (!" + set_test("frontier", g.inner.filter, "src") + ") continue");
    if (!c.src_filter.empty()) line("if (!" + c.src_filter + "(src)) continue");
  }
  if (!c.edge_filter.empty()) line("if (!" + c.edge_filter + "(src, dst)) continue");
  line(c.apply_func + "(src, dst)");
  for (const auto& vs : sync.vectors) {
    if (vs.sync == SyncKind::NoSync) continue;
    line("  // " + vs.vector + ": " + sync_kind_name(vs.sync));
  }
  if (c.modified) {
    std::string rec = plan.dedup_enabled() ? "if (changed(" + c.tracked_vector + "[dst]) && CAS(visited[dst], 0, 1))"
                                           : "if (changed(" + c.tracked_vector + "[dst]))";
    line(rec + " output.push(dst)");
  }
  if (!push && c.modified && plan.dedup_enabled() && [&] {
        const VectorSync* t = sync.find(c.tracked_vector);
        return t && t->access.op == AccessOp::Claim;
      }()) {
    line("if (changed(" + c.tracked_vector + "[dst])) break");
  }
  --depth;
  line("}");
  --depth;
  line("}");
  if (g.bsg) {
    --depth;
    line("}");
  }
  if (g.ssg) {
    --depth;
    line("}");
    if (uses_buffers) line("merge local_buffers in ssg order");
  }
  if (c.modified) line("return output");
  return os.str();
}

std::string dump_plan(const ScheduledProgram& sp, bool ascii) {
  std::string out;
  if (!sp.program.main) return out;
  for_each_stmt(sp.program.main->body, [&](const Stmt& st) {
    auto it = sp.plans.find(st.id);
    if (it == sp.plans.end()) return;
    const ExecutionPlan& plan = it->second;
    auto syncs = analyze_plan(sp.program, plan);
    std::string name = plan.label.empty() ? "@" + std::to_string(st.id) : plan.label;
    for (std::size_t i = 0; i < plan.variants.size(); ++i) {
      const PlanVariant& v = plan.variants[i];
      out += name + " [" + direction_name(v.gis.direction()) + "] " + format_gis(v.gis, ascii);
      if (plan.hybrid()) out += i == 0 ? "  when frontier work > threshold" : "  otherwise";
      out += "\n";
      out += variant_pseudocode(plan, v, syncs[i]);
    }
  });
  return out;
}

}  // namespace graphweave
