#include "graphweave/exec/compiled.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "graphweave/error.hpp"

namespace graphweave {

namespace {

struct Typed {
  int node;
  bool is_double;
};

class FuncCompiler {
 public:
  FuncCompiler(const Program& p, const Symbols& syms, const FuncDecl& f) : p_(p), syms_(syms), f_(f) {}

  CompiledFunc run() {
    out_.name = f_.name;
    scopes_.emplace_back();
    for (const auto& prm : f_.params) declare(prm.name, prm.type);
    out_.num_params = static_cast<int>(f_.params.size());
    if (f_.output) out_.output_slot = declare(f_.output->name, f_.output->type);
    out_.body = block(f_.body);
    return std::move(out_);
  }

 private:
  const Program& p_;
  const Symbols& syms_;
  const FuncDecl& f_;
  CompiledFunc out_;
  struct LocalInfo {
    int slot;
    bool is_double;
  };
  std::vector<std::map<std::string, LocalInfo>> scopes_;

  [[noreturn]] void fail(const std::string& msg, SourcePos pos) const {
    throw Error(ErrorKind::TypeError, "in function " + f_.name + ": " + msg, pos);
  }

  int declare(const std::string& name, const Type& t) {
    int slot = out_.num_locals++;
    bool dbl = t.kind == Type::Kind::Scalar && t.scalar == ScalarType::Double;
    scopes_.back()[name] = LocalInfo{slot, dbl};
    return slot;
  }

  const LocalInfo* find_local(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    return nullptr;
  }

  int add(Node n) {
    out_.nodes.push_back(n);
    return static_cast<int>(out_.nodes.size()) - 1;
  }

  int node(NodeOp op, int a = 0, int b = -1, int c = -1) {
    Node n;
    n.op = op;
    n.a = a;
    n.b = b;
    n.c = c;
    return add(n);
  }

  int as_double(Typed t) { return t.is_double ? t.node : node(NodeOp::IntToDouble, 0, t.node); }
  int coerce(Typed t, bool want_double) {
    if (want_double) return as_double(t);
    return t.is_double ? node(NodeOp::DoubleToInt, 0, t.node) : t.node;
  }

  int edgeset_id(const Expr& e) const {
    if (e.kind != ExprKind::Ident) fail("edgeset queries need a named edgeset", e.pos);
    auto it = syms_.edgesets.find(e.name);
    if (it == syms_.edgesets.end()) fail("unknown edgeset " + e.name, e.pos);
    return it->second;
  }

  Typed expr(const Expr& e) {
    switch (e.kind) {
      case ExprKind::IntLit: {
        Node n;
        n.k = int_value(e.int_value);
        return {add(n), false};
      }
      case ExprKind::FloatLit: {
        Node n;
        n.k = double_value(e.float_value);
        return {add(n), true};
      }
      case ExprKind::BoolLit: {
        Node n;
        n.k = int_value(e.bool_value ? 1 : 0);
        return {add(n), false};
      }
      case ExprKind::Ident: {
        if (const LocalInfo* l = find_local(e.name)) return {node(NodeOp::Local, l->slot), l->is_double};
        auto it = syms_.scalars.find(e.name);
        if (it != syms_.scalars.end()) {
          return {node(NodeOp::Global, it->second), syms_.scalar_types[it->second] == ScalarType::Double};
        }
        fail("unknown name " + e.name, e.pos);
      }
      case ExprKind::Index: {
        const Expr& base = e.args[0];
        auto it = syms_.vectors.find(base.name);
        if (base.kind != ExprKind::Ident || it == syms_.vectors.end()) fail("unknown vector " + base.name, e.pos);
        Typed idx = expr(e.args[1]);
        return {node(NodeOp::VecLoad, it->second, coerce(idx, false)),
                syms_.vector_types[it->second] == ScalarType::Double};
      }
      case ExprKind::Call: {
        const std::string& n = e.name;
        if (n == "fabs" || n == "sqrt") {
          int a = as_double(expr(e.args[0]));
          return {node(n == "fabs" ? NodeOp::Fabs : NodeOp::Sqrt, 0, a), true};
        }
        if (n == "toDouble") return {as_double(expr(e.args[0])), true};
        if (n == "toInt") return {coerce(expr(e.args[0]), false), false};
        if (n == "min" || n == "max") {
          Typed a = expr(e.args[0]);
          Typed b = expr(e.args[1]);
          bool dbl = a.is_double || b.is_double;
          NodeOp op = n == "min" ? (dbl ? NodeOp::MinD : NodeOp::MinI) : (dbl ? NodeOp::MaxD : NodeOp::MaxI);
          return {node(op, 0, coerce(a, dbl), coerce(b, dbl)), dbl};
        }
        fail("call to " + n + " is not allowed in functions", e.pos);
      }
      case ExprKind::Method: {
        const Expr& recv = e.args[0];
        const std::string& m = e.name;
        if (recv.kind == ExprKind::Ident && syms_.edgesets.count(recv.name)) {
          int es = edgeset_id(recv);
          if (m == "getOutDegree" || m == "getInDegree") {
            int v = coerce(expr(e.args[1]), false);
            return {node(m == "getOutDegree" ? NodeOp::OutDegree : NodeOp::InDegree, es, v), false};
          }
          if (m == "getNumEdges" || m == "size") return {node(NodeOp::NumEdges, es), false};
        }
        if (recv.kind == ExprKind::Ident && syms_.sets.count(recv.name) && (m == "size" || m == "getVertexSetSize")) {
          return {node(NodeOp::SetSize, syms_.sets.at(recv.name)), false};
        }
        fail("method " + m + " is not allowed in functions", e.pos);
      }
      case ExprKind::Unary: {
        Typed a = expr(e.args[0]);
        if (e.name == "not") return {node(NodeOp::Not, 0, a.node), false};
        return {node(a.is_double ? NodeOp::NegD : NodeOp::NegI, 0, a.node), a.is_double};
      }
      case ExprKind::Binary: {
        const std::string& op = e.name;
        Typed a = expr(e.args[0]);
        Typed b = expr(e.args[1]);
        if (op == "and") return {node(NodeOp::And, 0, a.node, b.node), false};
        if (op == "or") return {node(NodeOp::Or, 0, a.node, b.node), false};
        bool dbl = a.is_double || b.is_double;
        int l = coerce(a, dbl);
        int r = coerce(b, dbl);
        struct Entry {
          const char* op;
          NodeOp i;
          NodeOp d;
          bool cmp;
        };
        static const Entry table[] = {
            {"+", NodeOp::AddI, NodeOp::AddD, false}, {"-", NodeOp::SubI, NodeOp::SubD, false},
            {"*", NodeOp::MulI, NodeOp::MulD, false}, {"/", NodeOp::DivI, NodeOp::DivD, false},
            {"<", NodeOp::LtI, NodeOp::LtD, true},    {"<=", NodeOp::LeI, NodeOp::LeD, true},
            {">", NodeOp::GtI, NodeOp::GtD, true},    {">=", NodeOp::GeI, NodeOp::GeD, true},
            {"==", NodeOp::EqI, NodeOp::EqD, true},   {"!=", NodeOp::NeI, NodeOp::NeD, true},
        };
        for (const auto& t : table) {
          if (op == t.op) return {node(dbl ? t.d : t.i, 0, l, r), dbl && !t.cmp};
        }
        fail("unknown operator " + op, e.pos);
      }
      default: fail("unsupported expression in function", e.pos);
    }
  }

  std::vector<CStmt> block(const std::vector<Stmt>& body) {
    scopes_.emplace_back();
    std::vector<CStmt> out;
    for (const auto& s : body) stmt(s, out);
    scopes_.pop_back();
    return out;
  }

  void stmt(const Stmt& s, std::vector<CStmt>& out) {
    CStmt c;
    switch (s.kind) {
      case StmtKind::VarDecl: {
        bool dbl = s.type.kind == Type::Kind::Scalar && s.type.scalar == ScalarType::Double;
        int value;
        if (s.exprs.empty()) {
          Node zero;
          zero.k = dbl ? double_value(0.0) : int_value(0);
          value = add(zero);
        } else {
          value = coerce(expr(s.exprs[0]), dbl);
        }
        c.op = CStmtOp::SetLocal;
        c.value = value;
        c.target = declare(s.name, s.type);
        out.push_back(std::move(c));
        return;
      }
      case StmtKind::Assign:
      case StmtKind::Reduce: {
        const Expr& target = s.exprs[0];
        Typed v = expr(s.exprs[1]);
        if (target.kind == ExprKind::Ident) {
          const LocalInfo* l = find_local(target.name);
          if (!l) fail("cannot assign to " + target.name, s.pos);
          c.op = CStmtOp::SetLocal;
          c.target = l->slot;
          c.value = coerce(v, l->is_double);
          out.push_back(std::move(c));
          return;
        }
        int vec = syms_.vector_id(target.args[0].name);
        c.op = s.kind == StmtKind::Assign ? CStmtOp::VecStore : CStmtOp::VecReduce;
        c.rop = s.op;
        c.target = vec;
        c.index = coerce(expr(target.args[1]), false);
        c.value = coerce(v, syms_.vector_types[vec] == ScalarType::Double);
        out.push_back(std::move(c));
        return;
      }
      case StmtKind::If:
      case StmtKind::While:
        c.op = s.kind == StmtKind::If ? CStmtOp::If : CStmtOp::While;
        c.value = expr(s.exprs[0]).node;
        c.body = block(s.body);
        c.else_body = block(s.else_body);
        out.push_back(std::move(c));
        return;
      case StmtKind::For: {
        c.op = CStmtOp::For;
        c.value = coerce(expr(s.exprs[0]), false);
        c.limit = coerce(expr(s.exprs[1]), false);
        scopes_.emplace_back();
        c.target = declare(s.name, Type::scalar_of(ScalarType::Int));
        c.body = block(s.body);
        scopes_.pop_back();
        out.push_back(std::move(c));
        return;
      }
      case StmtKind::NameNode:
        for (const auto& inner : s.body) stmt(inner, out);
        return;
      default: fail("statement not allowed in functions", s.pos);
    }
  }
};

[[noreturn]] void runtime_error(const CompiledFunc& f, const std::string& msg) {
  throw Error(ErrorKind::RuntimeError, "in function " + f.name + ": " + msg);
}

Value eval(const CompiledFunc& f, int idx, ExecCtx& ctx) {
  const Node& n = f.nodes[idx];
  auto L = [&] { return eval(f, n.b, ctx); };
  auto R = [&] { return eval(f, n.c, ctx); };
  switch (n.op) {
    case NodeOp::Const: return n.k;
    case NodeOp::Local: return ctx.frame[n.a];
    case NodeOp::Global: return ctx.rt->scalars[n.a];
    case NodeOp::VecLoad: {
      std::int64_t v = L().i;
      if (v < 0 || v >= ctx.rt->n) runtime_error(f, "vertex index " + std::to_string(v) + " out of range");
      return ctx.rt->data.load(n.a, v);
    }
    case NodeOp::AddI: return int_value(L().i + R().i);
    case NodeOp::SubI: return int_value(L().i - R().i);
    case NodeOp::MulI: return int_value(L().i * R().i);
    case NodeOp::DivI: {
      std::int64_t a = L().i, b = R().i;
      if (b == 0) runtime_error(f, "integer division by zero");
      return int_value(a / b);
    }
    case NodeOp::AddD: return double_value(L().d + R().d);
    case NodeOp::SubD: return double_value(L().d - R().d);
    case NodeOp::MulD: return double_value(L().d * R().d);
    case NodeOp::DivD: return double_value(L().d / R().d);
    case NodeOp::NegI: return int_value(-L().i);
    case NodeOp::NegD: return double_value(-L().d);
    case NodeOp::IntToDouble: return double_value(static_cast<double>(L().i));
    case NodeOp::DoubleToInt: return int_value(static_cast<std::int64_t>(L().d));
    case NodeOp::LtI: return int_value(L().i < R().i);
    case NodeOp::LeI: return int_value(L().i <= R().i);
    case NodeOp::GtI: return int_value(L().i > R().i);
    case NodeOp::GeI: return int_value(L().i >= R().i);
    case NodeOp::EqI: return int_value(L().i == R().i);
    case NodeOp::NeI: return int_value(L().i != R().i);
    case NodeOp::LtD: return int_value(L().d < R().d);
    case NodeOp::LeD: return int_value(L().d <= R().d);
    case NodeOp::GtD: return int_value(L().d > R().d);
    case NodeOp::GeD: return int_value(L().d >= R().d);
    case NodeOp::EqD: return int_value(L().d == R().d);
    case NodeOp::NeD: return int_value(L().d != R().d);
    case NodeOp::And: return int_value(L().i != 0 && R().i != 0);
    case NodeOp::Or: return int_value(L().i != 0 || R().i != 0);
    case NodeOp::Not: return int_value(L().i == 0);
    case NodeOp::Fabs: return double_value(std::fabs(L().d));
    case NodeOp::Sqrt: return double_value(std::sqrt(L().d));
    case NodeOp::MinI: return int_value(std::min(L().i, R().i));
    case NodeOp::MaxI: return int_value(std::max(L().i, R().i));
    case NodeOp::MinD: return double_value(std::min(L().d, R().d));
    case NodeOp::MaxD: return double_value(std::max(L().d, R().d));
    case NodeOp::OutDegree:
    case NodeOp::InDegree: {
      const Graph& g = *ctx.rt->edgesets[n.a];
      std::int64_t v = L().i;
      if (v < 0 || v >= g.num_vertices()) runtime_error(f, "vertex index " + std::to_string(v) + " out of range");
      return int_value(n.op == NodeOp::OutDegree ? g.out_degree(v) : g.in_degree(v));
    }
    case NodeOp::NumEdges: return int_value(ctx.rt->edgesets[n.a]->num_edges());
    case NodeOp::SetSize: return int_value(ctx.rt->sets[n.a].size());
  }
  return int_value(0);
}

void note_change(ExecCtx& ctx, VertexId v) {
  ctx.changed = true;
  if (!ctx.out) return;
  if (ctx.visited) {
    std::uint8_t expected = 0;
    if (!std::atomic_ref<std::uint8_t>(ctx.visited[v]).compare_exchange_strong(expected, 1,
                                                                               std::memory_order_relaxed)) {
      return;
    }
  }
  ctx.out->push_back(v);
}

void exec_block(const CompiledFunc& f, const std::vector<CStmt>& body, ExecCtx& ctx);

void exec_store(const CompiledFunc& f, const CStmt& s, ExecCtx& ctx) {
  std::int64_t idx = eval(f, s.index, ctx).i;
  if (idx < 0 || idx >= ctx.rt->n) runtime_error(f, "vertex index " + std::to_string(idx) + " out of range");
  Value v = eval(f, s.value, ctx);
  const VectorStorage& vs = ctx.rt->data.vec(s.target);
  std::atomic_ref<std::uint64_t> ref(vs.slot(idx));
  std::uint64_t nb = to_bits(v, vs.is_double());
  WriteMode mode = ctx.modes ? ctx.modes[s.target] : WriteMode::Plain;
  bool changed;
  switch (mode) {
    case WriteMode::Plain: {
      std::uint64_t ob = ref.load(std::memory_order_relaxed);
      ref.store(nb, std::memory_order_relaxed);
      changed = ob != nb;
      break;
    }
    case WriteMode::Claim: {
      std::uint64_t expected = ctx.sentinels[s.target];
      changed = ref.compare_exchange_strong(expected, nb, std::memory_order_relaxed);
      ++ctx.counters->atomics_executed;
      break;
    }
    default: {
      std::uint64_t ob = ref.exchange(nb, std::memory_order_relaxed);
      ++ctx.counters->atomics_executed;
      changed = ob != nb;
      break;
    }
  }
  if (changed && s.target == ctx.tracked) note_change(ctx, idx);
}

void exec_reduce(const CompiledFunc& f, const CStmt& s, ExecCtx& ctx) {
  std::int64_t idx = eval(f, s.index, ctx).i;
  if (idx < 0 || idx >= ctx.rt->n) runtime_error(f, "vertex index " + std::to_string(idx) + " out of range");
  Value v = eval(f, s.value, ctx);
  const VectorStorage& vs = ctx.rt->data.vec(s.target);
  const bool dbl = vs.is_double();
  WriteMode mode = ctx.modes ? ctx.modes[s.target] : WriteMode::Plain;
  if (mode == WriteMode::Buffer) {
    std::atomic_ref<std::uint64_t> ref(ctx.buffers[s.target][idx]);
    Value acc = from_bits(ref.load(std::memory_order_relaxed), dbl);
    ref.store(to_bits(reduce_values(s.rop, dbl, acc, v), dbl), std::memory_order_relaxed);
    return;
  }
  std::atomic_ref<std::uint64_t> ref(vs.slot(idx));
  bool changed = false;
  if (mode == WriteMode::Plain) {
    std::uint64_t ob = ref.load(std::memory_order_relaxed);
    std::uint64_t nb = to_bits(reduce_values(s.rop, dbl, from_bits(ob, dbl), v), dbl);
    if (nb != ob) {
      ref.store(nb, std::memory_order_relaxed);
      changed = true;
    }
  } else {
    ++ctx.counters->atomics_executed;
    if (s.rop == ReduceOp::Sum && !dbl) {
      ref.fetch_add(static_cast<std::uint64_t>(v.i), std::memory_order_relaxed);
      changed = v.i != 0;
    } else {
      std::uint64_t ob = ref.load(std::memory_order_relaxed);
      while (true) {
        std::uint64_t nb = to_bits(reduce_values(s.rop, dbl, from_bits(ob, dbl), v), dbl);
        if (nb == ob) break;
        if (ref.compare_exchange_weak(ob, nb, std::memory_order_relaxed)) {
          changed = true;
          break;
        }
      }
    }
  }
  if (changed && s.target == ctx.tracked) note_change(ctx, idx);
}

void exec_block(const CompiledFunc& f, const std::vector<CStmt>& body, ExecCtx& ctx) {
  for (const CStmt& s : body) {
    switch (s.op) {
      case CStmtOp::SetLocal: ctx.frame[s.target] = eval(f, s.value, ctx); break;
      case CStmtOp::VecStore: exec_store(f, s, ctx); break;
      case CStmtOp::VecReduce: exec_reduce(f, s, ctx); break;
      case CStmtOp::If:
        if (eval(f, s.value, ctx).i != 0) {
          exec_block(f, s.body, ctx);
        } else {
          exec_block(f, s.else_body, ctx);
        }
        break;
      case CStmtOp::While:
        while (eval(f, s.value, ctx).i != 0) exec_block(f, s.body, ctx);
        break;
      case CStmtOp::For: {
        std::int64_t lo = eval(f, s.value, ctx).i;
        std::int64_t hi = eval(f, s.limit, ctx).i;
        for (std::int64_t i = lo; i < hi; ++i) {
          ctx.frame[s.target] = int_value(i);
          exec_block(f, s.body, ctx);
        }
        break;
      }
    }
  }
}

void prepare_frame(const CompiledFunc& f, ExecCtx& ctx) {
  if (ctx.frame.size() < static_cast<std::size_t>(f.num_locals)) ctx.frame.resize(f.num_locals);
  if (f.output_slot >= 0) ctx.frame[f.output_slot] = int_value(0);
}

}  // namespace

std::vector<CompiledFunc> compile_functions(const Program& p, const Symbols& syms) {
  std::vector<CompiledFunc> out;
  for (const auto& f : p.funcs) out.push_back(FuncCompiler(p, syms, f).run());
  return out;
}

const CompiledFunc* find_compiled(const std::vector<CompiledFunc>& fs, const std::string& name) {
  for (const auto& f : fs) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

void call_vertex(const CompiledFunc& f, ExecCtx& ctx, VertexId v) {
  prepare_frame(f, ctx);
  ctx.frame[0] = int_value(v);
  exec_block(f, f.body, ctx);
}

bool call_filter(const CompiledFunc& f, ExecCtx& ctx, VertexId v) {
  call_vertex(f, ctx, v);
  return ctx.frame[f.output_slot].i != 0;
}

void call_edge(const CompiledFunc& f, ExecCtx& ctx, VertexId src, VertexId dst, std::int64_t weight) {
  prepare_frame(f, ctx);
  ctx.frame[0] = int_value(src);
  ctx.frame[1] = int_value(dst);
  if (f.num_params > 2) ctx.frame[2] = int_value(weight);
  exec_block(f, f.body, ctx);
}

bool call_edge_filter(const CompiledFunc& f, ExecCtx& ctx, VertexId src, VertexId dst, std::int64_t weight) {
  call_edge(f, ctx, src, dst, weight);
  return ctx.frame[f.output_slot].i != 0;
}

std::uint64_t reduce_identity(ReduceOp op, bool is_double) {
  switch (op) {
    case ReduceOp::Sum: return to_bits(is_double ? double_value(0.0) : int_value(0), is_double);
    case ReduceOp::Min:
    case ReduceOp::AsyncMin:
      return to_bits(is_double ? double_value(std::numeric_limits<double>::infinity())
                               : int_value(std::numeric_limits<std::int64_t>::max()),
                     is_double);
    case ReduceOp::Max:
    case ReduceOp::AsyncMax:
      return to_bits(is_double ? double_value(-std::numeric_limits<double>::infinity())
                               : int_value(std::numeric_limits<std::int64_t>::min()),
                     is_double);
  }
  return 0;
}

Value reduce_values(ReduceOp op, bool is_double, Value acc, Value x) {
  switch (op) {
    case ReduceOp::Sum: return is_double ? double_value(acc.d + x.d) : int_value(acc.i + x.i);
    case ReduceOp::Min:
    case ReduceOp::AsyncMin: return is_double ? double_value(std::min(acc.d, x.d)) : int_value(std::min(acc.i, x.i));
    case ReduceOp::Max:
    case ReduceOp::AsyncMax: return is_double ? double_value(std::max(acc.d, x.d)) : int_value(std::max(acc.i, x.i));
  }
  return acc;
}

}  // namespace graphweave
