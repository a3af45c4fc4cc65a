#include "graphweave/exec/engine.hpp"

#include <chrono>

#include "graphweave/error.hpp"

namespace graphweave {

TraversalSide traversal_side(Direction d) {
  return d == Direction::DensePull ? TraversalSide::Pull : TraversalSide::Push;
}

PartitionScheme partition_scheme(PartScheme s) {
  return s == PartScheme::EVC ? PartitionScheme::EVC : PartitionScheme::FVC;
}

namespace {

std::tuple<int, std::int64_t, int> ssg_key(const GisVector& v) {
  return {static_cast<int>(traversal_side(v.direction())), v.ssg->amount, static_cast<int>(v.ssg->scheme)};
}

}  // namespace

void GraphCache::prepare(const GisVector& v) {
  if (!v.ssg) return;
  auto key = ssg_key(v);
  if (ssgs_.count(key)) return;
  ssgs_[key] = build_ssgs(*g_, static_cast<int>(v.ssg->amount), partition_scheme(v.ssg->scheme),
                          traversal_side(v.direction()));
}

bool GraphCache::has_ssgs(const GisVector& v) const { return v.ssg && ssgs_.count(ssg_key(v)) > 0; }

const std::vector<SegmentedSubgraph>& GraphCache::ssgs(const GisVector& v) const {
  auto it = v.ssg ? ssgs_.find(ssg_key(v)) : ssgs_.end();
  if (it == ssgs_.end()) {
    throw Error(ErrorKind::MissingSSGs, "segmented subgraphs were not built for " + format_gis(v, true));
  }
  return it->second;
}

const std::vector<std::int64_t>& GraphCache::degrees(TraversalSide side) {
  std::vector<std::int64_t>& d = side == TraversalSide::Push ? out_deg_ : in_deg_;
  if (d.empty()) {
    const Adjacency& adj = side == TraversalSide::Push ? g_->out() : g_->in();
    d.resize(g_->num_vertices());
    for (VertexId v = 0; v < g_->num_vertices(); ++v) d[v] = adj.degree(v);
  }
  return d;
}

const BlockedChunks& GraphCache::chunks(TraversalSide side, std::int64_t grain, PartitionScheme scheme) {
  auto key = std::make_tuple(static_cast<int>(side), grain, static_cast<int>(scheme));
  auto it = chunks_.find(key);
  if (it != chunks_.end()) return it->second;
  return chunks_[key] = build_bsg_chunks(0, g_->num_vertices(), degrees(side), grain, scheme);
}

BoundPlan bind_plan(const ExecutionPlan& plan, std::vector<SyncPlan> syncs, const Symbols& syms,
                    const std::vector<CompiledFunc>& funcs) {
  BoundPlan bp;
  bp.plan = &plan;
  bp.syncs = std::move(syncs);
  const ApplyChain& c = plan.chain;
  bp.edgeset = syms.edgesets.at(c.edgeset);
  auto fn = [&](const std::string& name) -> const CompiledFunc* {
    if (name.empty()) return nullptr;
    const CompiledFunc* f = find_compiled(funcs, name);
    if (!f) throw Error(ErrorKind::TypeError, "unknown function " + name);
    return f;
  };
  bp.apply = fn(c.apply_func);
  bp.src_filter = fn(c.src_filter);
  bp.dst_filter = fn(c.dst_filter);
  bp.edge_filter = fn(c.edge_filter);
  if (c.modified) bp.tracked = syms.vector_id(c.tracked_vector);

  const std::size_t nvec = syms.vector_names.size();
  bp.sentinels.assign(nvec, ClaimSentinel{});
  bp.reduce_ops.assign(nvec, ReduceOp::Sum);
  for (const SyncPlan& sp : bp.syncs) {
    std::vector<WriteMode> modes(nvec, WriteMode::Plain);
    for (const VectorSync& vs : sp.vectors) {
      int id = syms.vector_id(vs.vector);
      const VectorAccess& a = vs.access;
      if (a.op == AccessOp::Claim) {
        modes[id] = WriteMode::Claim;
      } else if (vs.sync == SyncKind::Atomic) {
        modes[id] = WriteMode::Atomic;
      } else if (vs.sync == SyncKind::LocalBufferMerge) {
        modes[id] = WriteMode::Buffer;
      }
      if (a.op == AccessOp::Min) bp.reduce_ops[id] = ReduceOp::Min;
      if (a.op == AccessOp::Max) bp.reduce_ops[id] = ReduceOp::Max;
      if (a.op == AccessOp::Claim && a.claim_sentinel) {
        ClaimSentinel s;
        const Expr* e = &*a.claim_sentinel;
        if (e->kind == ExprKind::Unary && e->name == "-") {
          s.negate = true;
          e = &e->args[0];
        }
        if (e->kind == ExprKind::IntLit) {
          s.constant = int_value(e->int_value);
        } else if (e->kind == ExprKind::FloatLit) {
          s.constant = double_value(e->float_value);
          s.is_double = true;
        } else if (e->kind == ExprKind::BoolLit) {
          s.constant = int_value(e->bool_value ? 1 : 0);
        } else if (e->kind == ExprKind::Ident && syms.scalars.count(e->name)) {
          s.global = syms.scalars.at(e->name);
          s.is_double = syms.scalar_types[s.global] == ScalarType::Double;
        } else {
          throw Error(ErrorKind::TypeError, "claim sentinel for " + vs.vector + " must be a constant");
        }
        bp.sentinels[id] = s;
      }
      if (id == bp.tracked && a.op == AccessOp::Claim) bp.claim_tracked = true;
    }
    bp.modes.push_back(std::move(modes));
  }
  return bp;
}

bool early_exit_enabled(const BoundPlan& bp, const PlanVariant& v) {
  return bp.plan->dedup_enabled() && bp.claim_tracked && v.gis.direction() == Direction::DensePull;
}

namespace {

FrontierRepr repr_for(FilterTag t) {
  switch (t) {
    case FilterTag::SA: return FrontierRepr::Sparse;
    case FilterTag::BV: return FrontierRepr::Bits;
    default: return FrontierRepr::Bool;
  }
}

const Frontier* prepare_frontier(const Frontier* f, FrontierRepr need, Frontier& storage, Counters& c) {
  if (!f || f->repr() == need) return f;
  storage = f->converted(need);
  ++c.frontier_conversions;
  return &storage;
}

struct Span {
  VertexId outer;
  std::int64_t begin;
  std::int64_t end;
};

struct Traversal {
  const BoundPlan* bp = nullptr;
  bool push = true;
  const Frontier* from = nullptr;
  const Frontier* to = nullptr;
  bool test_from_outer = false;
  bool early_exit = false;
  const std::vector<VertexId>* ids = nullptr;
  std::int64_t outer_count = 0;

  VertexId outer_at(std::int64_t pos) const { return ids ? (*ids)[pos] : pos; }

  bool outer_passes(ExecCtx& ctx, VertexId o) const {
    if (push) {
      if (test_from_outer) {
        ++ctx.counters->membership_tests;
        if (!from->contains(o)) return false;
      }
      return !bp->src_filter || call_filter(*bp->src_filter, ctx, o);
    }
    if (to) {
      ++ctx.counters->membership_tests;
      if (!to->contains(o)) return false;
    }
    return !bp->dst_filter || call_filter(*bp->dst_filter, ctx, o);
  }

  void inner(ExecCtx& ctx, const Adjacency& adj, VertexId o, std::int64_t b, std::int64_t e) const {
    const bool weighted = !adj.weights.empty();
    Counters& c = *ctx.counters;
    for (std::int64_t at = b; at < e; ++at) {
      const VertexId i = adj.neighbors[at];
      ++c.edges_examined;
      const VertexId s = push ? o : i;
      const VertexId d = push ? i : o;
      if (push) {
        if (to) {
          ++c.membership_tests;
          if (!to->contains(d)) continue;
        }
        if (bp->dst_filter && !call_filter(*bp->dst_filter, ctx, d)) continue;
      } else {
        if (from) {
          ++c.membership_tests;
          if (!from->contains(s)) continue;
        }
        if (bp->src_filter && !call_filter(*bp->src_filter, ctx, s)) continue;
      }
      const std::int64_t w = weighted ? adj.weights[at] : 1;
      if (bp->edge_filter && !call_edge_filter(*bp->edge_filter, ctx, s, d, w)) continue;
      ctx.changed = false;
      call_edge(*bp->apply, ctx, s, d, w);
      ++c.edges_applied;
      if (early_exit && ctx.changed) break;
    }
  }

  void range(ExecCtx& ctx, const Adjacency& adj, std::int64_t lo, std::int64_t hi) const {
    for (std::int64_t pos = lo; pos < hi; ++pos) {
      const VertexId o = outer_at(pos);
      if (!outer_passes(ctx, o)) continue;
      inner(ctx, adj, o, adj.offsets[o], adj.offsets[o + 1]);
    }
  }
};

std::uint64_t sentinel_bits(const ClaimSentinel& s, const Runtime& rt, bool vec_double) {
  Value x = s.global >= 0 ? rt.scalars[s.global] : s.constant;
  if (s.negate) x = s.is_double ? double_value(-x.d) : int_value(-x.i);
  if (vec_double && !s.is_double) x = double_value(static_cast<double>(x.i));
  if (!vec_double && s.is_double) x = int_value(static_cast<std::int64_t>(x.d));
  return to_bits(x, vec_double);
}

}  // namespace

std::size_t Engine::select_variant(const BoundPlan& bp, const Graph& g, const Frontier* from) const {
  if (!bp.plan->hybrid() || !from) return 0;
  const double work = static_cast<double>(from->size() + from->sum_out_degrees(g));
  return work > opt_.hybrid_threshold * static_cast<double>(g.num_edges()) ? 0 : 1;
}

std::optional<Frontier> Engine::run_variant(const BoundPlan& bp, std::size_t vi, Runtime& rt, GraphCache& gc,
                                            const Frontier* from_in, const Frontier* to_in, Counters& counters) {
  const ExecutionPlan& plan = *bp.plan;
  const PlanVariant& var = plan.variants.at(vi);
  const GisVector& gis = var.gis;
  const Direction dir = gis.direction();
  const Graph& g = gc.graph();
  const std::int64_t n = g.num_vertices();
  if (n != rt.n) {
    throw Error(ErrorKind::RuntimeError, "edgeset " + plan.chain.edgeset + " has " + std::to_string(n) +
                                             " vertices but vertex data holds " + std::to_string(rt.n));
  }
  if (!bp.apply) throw Error(ErrorKind::RuntimeError, "traversal without an apply function");

  const int workers = pool_.size();
  std::vector<Counters> cnt(workers);

  Traversal t;
  t.bp = &bp;
  t.push = dir != Direction::DensePull;
  Frontier from_store;
  Frontier to_store;
  FrontierRepr from_need =
      dir == Direction::SparsePush ? FrontierRepr::Sparse : repr_for(t.push ? gis.outer.filter : gis.inner.filter);
  FrontierRepr to_need = repr_for(t.push ? gis.inner.filter : gis.outer.filter);
  if (to_need == FrontierRepr::Sparse) to_need = FrontierRepr::Bool;
  t.from = prepare_frontier(from_in, from_need, from_store, cnt[0]);
  t.to = prepare_frontier(to_in, to_need, to_store, cnt[0]);
  t.ids = dir == Direction::SparsePush && t.from ? &t.from->ids() : nullptr;
  t.outer_count = t.ids ? static_cast<std::int64_t>(t.ids->size()) : n;
  t.test_from_outer = dir == Direction::DensePush && t.from;
  t.early_exit = early_exit_enabled(bp, var);

  const std::vector<SegmentedSubgraph>* ssgs = gis.ssg ? &gc.ssgs(gis) : nullptr;
  const int k = ssgs ? static_cast<int>(ssgs->size()) : 1;
  const Adjacency& whole = t.push ? g.out() : g.in();
  auto adj_of = [&](int s) -> const Adjacency& { return ssgs ? (*ssgs)[s].adj : whole; };

  // Write modes and claim sentinels.
  const std::vector<WriteMode>& modes = bp.modes.at(vi);
  const std::size_t nvec = modes.size();
  std::vector<std::uint64_t> sentinels(nvec, 0);
  bool any_buffer = false;
  for (std::size_t v = 0; v < nvec; ++v) {
    if (modes[v] == WriteMode::Claim) sentinels[v] = sentinel_bits(bp.sentinels[v], rt, rt.data.vec(v).is_double());
    if (modes[v] == WriteMode::Buffer) any_buffer = true;
  }
  std::vector<std::vector<std::uint64_t*>> bufptr;
  if (any_buffer) {
    buffers_.resize(std::max<std::size_t>(buffers_.size(), k));
    bufptr.assign(k, std::vector<std::uint64_t*>(nvec, nullptr));
    for (int s = 0; s < k; ++s) {
      buffers_[s].resize(nvec);
      for (std::size_t v = 0; v < nvec; ++v) {
        if (modes[v] != WriteMode::Buffer) continue;
        buffers_[s][v].assign(n, reduce_identity(bp.reduce_ops[v], rt.data.vec(v).is_double()));
        bufptr[s][v] = buffers_[s][v].data();
      }
    }
  }

  const bool modified = plan.chain.modified;
  std::uint8_t* visited = nullptr;
  if (modified && plan.dedup_enabled()) {
    if (static_cast<std::int64_t>(visited_.size()) != n) visited_.assign(n, 0);
    visited = visited_.data();
  }

  std::vector<std::vector<VertexId>> outs(workers);
  std::vector<ExecCtx> ctxs(workers);
  for (int w = 0; w < workers; ++w) {
    ExecCtx& c = ctxs[w];
    c.rt = &rt;
    c.modes = modes.data();
    c.sentinels = sentinels.data();
    c.tracked = modified ? bp.tracked : -1;
    c.visited = visited;
    c.out = modified ? &outs[w] : nullptr;
    c.counters = &cnt[w];
  }

  const bool ssg_par = gis.ssg && gis.ssg->parallel != ParTag::SR;
  const bool b_par = gis.bsg && gis.bsg->parallel != ParTag::SR;
  const bool inner_par = gis.inner.parallel != ParTag::SR;
  const bool dynamic = (gis.ssg && gis.ssg->parallel == ParTag::WSP) ||
                       (gis.bsg && gis.bsg->parallel == ParTag::WSP) || gis.inner.parallel == ParTag::WSP;
  const PoolMode mode = dynamic ? PoolMode::Dynamic : PoolMode::Static;

  // Work units per SSG: neighbor spans (edge-parallel), outer chunks, or the whole outer range.
  std::vector<std::vector<Span>> spans;
  BlockedChunks chunks;
  const BlockedChunks* chunk_ptr = nullptr;
  if (inner_par) {
    std::vector<VertexId> active;
    for (std::int64_t pos = 0; pos < t.outer_count; ++pos) {
      VertexId o = t.outer_at(pos);
      if (t.outer_passes(ctxs[0], o)) active.push_back(o);
    }
    spans.resize(k);
    const std::int64_t grain = std::max<std::int64_t>(1, var.edge_grain);
    for (int s = 0; s < k; ++s) {
      const Adjacency& adj = adj_of(s);
      for (VertexId o : active) {
        for (std::int64_t b = adj.offsets[o]; b < adj.offsets[o + 1]; b += grain) {
          spans[s].push_back(Span{o, b, std::min(b + grain, adj.offsets[o + 1])});
        }
      }
    }
  } else if (gis.bsg) {
    const PartitionScheme scheme = partition_scheme(gis.bsg->scheme);
    if (t.ids) {
      std::vector<std::int64_t> deg(t.ids->size());
      for (std::size_t i = 0; i < deg.size(); ++i) deg[i] = whole.degree((*t.ids)[i]);
      chunks = build_bsg_chunks(0, t.outer_count, deg, gis.bsg->amount, scheme);
      chunk_ptr = &chunks;
    } else {
      chunk_ptr = &gc.chunks(traversal_side(dir), gis.bsg->amount, scheme);
    }
  } else {
    chunks.start.push_back(0);
    chunks.end.push_back(t.outer_count);
    chunk_ptr = &chunks;
  }
  auto units = [&](int s) -> std::size_t { return inner_par ? spans[s].size() : chunk_ptr->size(); };
  auto run_unit = [&](ExecCtx& ctx, int s, std::size_t u) {
    ctx.buffers = any_buffer ? bufptr[s].data() : nullptr;
    if (inner_par) {
      const Span& sp = spans[s][u];
      t.inner(ctx, adj_of(s), sp.outer, sp.begin, sp.end);
    } else {
      t.range(ctx, adj_of(s), chunk_ptr->start[u], chunk_ptr->end[u]);
    }
  };

  if (ssg_par) {
    if (b_par || inner_par) {
      std::vector<std::pair<int, std::size_t>> flat;
      for (int s = 0; s < k; ++s) {
        for (std::size_t u = 0; u < units(s); ++u) flat.emplace_back(s, u);
      }
      pool_.run(flat.size(), mode, [&](std::size_t task, int w) { run_unit(ctxs[w], flat[task].first, flat[task].second); });
    } else {
      pool_.run(static_cast<std::size_t>(k), mode, [&](std::size_t task, int w) {
        for (std::size_t u = 0; u < units(static_cast<int>(task)); ++u) run_unit(ctxs[w], static_cast<int>(task), u);
      });
    }
  } else {
    for (int s = 0; s < k; ++s) {
      if (b_par || inner_par) {
        pool_.run(units(s), mode, [&](std::size_t u, int w) { run_unit(ctxs[w], s, u); });
      } else {
        for (std::size_t u = 0; u < units(s); ++u) run_unit(ctxs[0], s, u);
      }
    }
  }
  cnt[0].ssg_passes += k;

  // Deterministic merge of partition-local buffers, ascending partition id.
  if (any_buffer) {
    for (std::size_t v = 0; v < nvec; ++v) {
      if (modes[v] != WriteMode::Buffer) continue;
      const bool dbl = rt.data.vec(v).is_double();
      const std::uint64_t ident = reduce_identity(bp.reduce_ops[v], dbl);
      for (int s = 0; s < k; ++s) {
        const std::vector<std::uint64_t>& buf = buffers_[s][v];
        for (VertexId u = 0; u < n; ++u) {
          if (buf[u] == ident) continue;
          std::uint64_t& slot = rt.data.vec(v).slot(u);
          std::uint64_t nb = to_bits(reduce_values(bp.reduce_ops[v], dbl, from_bits(slot, dbl), from_bits(buf[u], dbl)), dbl);
          if (nb == slot) continue;
          slot = nb;
          if (static_cast<int>(v) == ctxs[0].tracked && modified) {
            if (visited) {
              if (visited[u]) continue;
              visited[u] = 1;
            }
            outs[0].push_back(u);
          }
        }
      }
      cnt[0].merge_ops += k;
    }
  }

  for (const Counters& c : cnt) counters += c;
  if (!modified) return std::nullopt;
  std::vector<VertexId> ids;
  for (auto& o : outs) ids.insert(ids.end(), o.begin(), o.end());
  if (visited) {
    for (VertexId v : ids) visited[v] = 0;
  }
  return Frontier::from_ids(n, std::move(ids));
}

std::optional<Frontier> Engine::run_edgeset_apply(const BoundPlan& bp, Runtime& rt, GraphCache& gc,
                                                  const Frontier* from, const Frontier* to, TraversalRecord* rec) {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t vi = select_variant(bp, gc.graph(), from);
  Counters c;
  std::optional<Frontier> out = run_variant(bp, vi, rt, gc, from, to, c);
  if (rec) {
    rec->label = bp.plan->label.empty() ? "@" + std::to_string(bp.plan->stmt_id) : bp.plan->label;
    rec->variant = direction_name(bp.plan->variants[vi].gis.direction());
    rec->counters = c;
    rec->wall_ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
  }
  return out;
}

Frontier Engine::run_filter(const CompiledFunc& f, Runtime& rt, const Frontier& set) {
  Counters unused;
  ExecCtx ctx;
  ctx.rt = &rt;
  ctx.counters = &unused;
  std::vector<VertexId> ids;
  for (VertexId v : set.sorted_ids()) {
    if (call_filter(f, ctx, v)) ids.push_back(v);
  }
  return Frontier::from_ids(set.num_vertices(), std::move(ids));
}

void Engine::run_apply(const CompiledFunc& f, Runtime& rt, const Frontier& set) {
  Counters unused;
  ExecCtx ctx;
  ctx.rt = &rt;
  ctx.counters = &unused;
  if (set.is_full()) {
    for (VertexId v = 0; v < set.num_vertices(); ++v) call_vertex(f, ctx, v);
    return;
  }
  for (VertexId v : set.sorted_ids()) call_vertex(f, ctx, v);
}

}  // namespace graphweave
