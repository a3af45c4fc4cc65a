#include "graphweave/exec/program.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "json.hpp"

#include "graphweave/error.hpp"
#include "graphweave/lang/chain.hpp"
#include "graphweave/lang/labels.hpp"
#include "graphweave/lang/printer.hpp"
#include "graphweave/transforms/transforms.hpp"

namespace graphweave {

Counters RunStats::for_label(const std::string& label) const {
  Counters c;
  for (const auto& t : traversals) {
    if (t.label == label) c += t.counters;
  }
  return c;
}

namespace {

nlohmann::ordered_json counters_json(const Counters& c) {
  nlohmann::ordered_json j;
  j["edges_examined"] = c.edges_examined;
  j["edges_applied"] = c.edges_applied;
  j["atomics_executed"] = c.atomics_executed;
  j["frontier_conversions"] = c.frontier_conversions;
  j["ssg_passes"] = c.ssg_passes;
  j["merge_ops"] = c.merge_ops;
  j["membership_tests"] = c.membership_tests;
  return j;
}

}  // namespace

std::string stats_to_json(const RunStats& s, const std::string& program, int indent) {
  nlohmann::ordered_json j;
  j["schema_version"] = kStatsSchemaVersion;
  j["program"] = program;
  j["wall_time_ns"] = s.wall_ns;
  j["totals"] = counters_json(s.totals);
  auto arr = nlohmann::ordered_json::array();
  for (const auto& t : s.traversals) {
    nlohmann::ordered_json e;
    e["label"] = t.label;
    e["variant_chosen"] = t.variant;
    e["counters"] = counters_json(t.counters);
    e["wall_time_ns"] = t.wall_ns;
    arr.push_back(std::move(e));
  }
  j["traversals"] = std::move(arr);
  return j.dump(indent);
}

namespace {

struct MValue {
  enum class K { None, Scalar, Set, List, Edgeset };
  K k = K::None;
  Value v{};
  bool dbl = false;
  std::shared_ptr<Frontier> set;
  std::shared_ptr<std::vector<std::shared_ptr<Frontier>>> list;
  int edgeset = -1;

  static MValue scalar(Value x, bool is_double) {
    MValue m;
    m.k = K::Scalar;
    m.v = x;
    m.dbl = is_double;
    return m;
  }
  static MValue of_int(std::int64_t x) { return scalar(int_value(x), false); }
  static MValue of_double(double x) { return scalar(double_value(x), true); }
  static MValue of_set(Frontier f) {
    MValue m;
    m.k = K::Set;
    m.set = std::make_shared<Frontier>(std::move(f));
    return m;
  }
  double as_double() const { return dbl ? v.d : static_cast<double>(v.i); }
  std::int64_t as_int() const { return dbl ? static_cast<std::int64_t>(v.d) : v.i; }
};

MValue coerce(const MValue& x, bool want_double) {
  if (x.k != MValue::K::Scalar || x.dbl == want_double) return x;
  return want_double ? MValue::of_double(x.as_double()) : MValue::of_int(x.as_int());
}

bool is_double_type(const Type& t) { return t.kind == Type::Kind::Scalar && t.scalar == ScalarType::Double; }

[[noreturn]] void rt_error(const std::string& msg, SourcePos pos = {}) {
  throw Error(ErrorKind::RuntimeError, msg, pos);
}

}  // namespace

struct ProgramRunner::Impl {
  ProgramRunner& r;
  const Program& p;
  const Symbols& syms;
  RunStats stats;
  std::vector<std::map<std::string, MValue>> scopes;
  std::vector<std::shared_ptr<Frontier>> global_sets;
  const Expr* chain_expr = nullptr;
  const BoundPlan* chain_plan = nullptr;

  Impl(ProgramRunner& runner) : r(runner), p(runner.cp_.sp.program), syms(runner.cp_.syms) {}

  std::int64_t n() const { return r.rt_.n; }

  MValue* find_local(const std::string& name) {
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    return nullptr;
  }

  MValue param_value(const Expr& e) {
    MValue def = eval(e.args[1]);
    auto it = r.opt_.params.find(e.args[0].name);
    if (it == r.opt_.params.end()) return def;
    const std::string& s = it->second;
    try {
      std::size_t used = 0;
      MValue out;
      if (def.dbl) {
        out = MValue::of_double(std::stod(s, &used));
      } else if (s == "true" || s == "false") {
        used = s.size();
        out = MValue::of_int(s == "true");
      } else {
        out = MValue::of_int(std::stoll(s, &used));
      }
      if (used != s.size()) throw std::invalid_argument(s);
      return out;
    } catch (const std::exception&) {
      throw Error(ErrorKind::TypeError, "invalid value '" + s + "' for parameter " + e.args[0].name);
    }
  }

  const CompiledFunc& func(const Expr& e) {
    const CompiledFunc* f = e.kind == ExprKind::Ident ? find_compiled(r.cp_.funcs, e.name) : nullptr;
    if (!f) rt_error("unknown function " + print_expr(e), e.pos);
    return *f;
  }

  std::shared_ptr<Frontier> eval_set(const Expr& e) {
    MValue v = eval(e);
    if (v.k != MValue::K::Set) rt_error("expected a vertexset: " + print_expr(e), e.pos);
    return v.set;
  }

  MValue run_chain(const Expr& e) {
    if (&e != chain_expr || !chain_plan) rt_error("edgeset traversal without an execution plan", e.pos);
    const BoundPlan& bp = *chain_plan;
    const ApplyChain& c = bp.plan->chain;
    std::shared_ptr<Frontier> from, to;
    if (c.from_set) from = eval_set(*c.from_set);
    if (c.to_set) to = eval_set(*c.to_set);
    TraversalRecord rec;
    std::optional<Frontier> out =
        r.engine_.run_edgeset_apply(bp, r.rt_, *r.edgeset_cache_[bp.edgeset], from.get(), to.get(), &rec);
    stats.totals += rec.counters;
    if (r.opt_.record_traversals) stats.traversals.push_back(std::move(rec));
    if (!out) return MValue{};
    if (r.opt_.on_output) r.opt_.on_output(rec.label, *out);
    return MValue::of_set(std::move(*out));
  }

  // Receiver that a mutating method writes back to.
  void store_set(const Expr& target, std::shared_ptr<Frontier> s) {
    if (MValue* l = find_local(target.name)) {
      l->set = std::move(s);
      return;
    }
    auto it = syms.sets.find(target.name);
    if (it == syms.sets.end()) rt_error("cannot modify " + target.name, target.pos);
    global_sets[it->second] = s;
    r.rt_.sets[it->second] = *s;
  }

  MValue method(const Expr& e) {
    if (extract_apply_chain(p, e)) return run_chain(e);
    const Expr& recv = e.args[0];
    const std::string& m = e.name;
    MValue rv = eval(recv);
    if (rv.k == MValue::K::Edgeset) {
      const Graph& g = *r.rt_.edgesets[rv.edgeset];
      auto vertex = [&](const Expr& x) {
        std::int64_t v = eval(x).as_int();
        if (v < 0 || v >= g.num_vertices()) rt_error("vertex " + std::to_string(v) + " out of range", x.pos);
        return v;
      };
      if (m == "getVertices") return MValue::of_set(Frontier::full(g.num_vertices()));
      if (m == "getSrcVertices" || m == "getDstVertices") {
        std::vector<VertexId> ids;
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
          if ((m == "getSrcVertices" ? g.out_degree(v) : g.in_degree(v)) > 0) ids.push_back(v);
        }
        return MValue::of_set(Frontier::from_ids(g.num_vertices(), std::move(ids)));
      }
      if (m == "getOutDegree") return MValue::of_int(g.out_degree(vertex(e.args[1])));
      if (m == "getInDegree") return MValue::of_int(g.in_degree(vertex(e.args[1])));
      if (m == "getNumEdges" || m == "size") return MValue::of_int(g.num_edges());
      rt_error("edgeset method " + m + " is not available here", e.pos);
    }
    if (rv.k == MValue::K::Set) {
      if (m == "size" || m == "getVertexSetSize") return MValue::of_int(rv.set->size());
      if (m == "addVertex") {
        std::int64_t v = eval(e.args[1]).as_int();
        if (v < 0 || v >= rv.set->num_vertices()) rt_error("vertex " + std::to_string(v) + " out of range", e.pos);
        auto s = std::make_shared<Frontier>(rv.set->repr() == FrontierRepr::Sparse ? *rv.set
                                                                                   : rv.set->converted(FrontierRepr::Sparse));
        if (!s->contains(v)) s->add(v);
        store_set(recv, s);
        return MValue{};
      }
      if (m == "apply") {
        r.engine_.run_apply(func(e.args[1]), r.rt_, *rv.set);
        return MValue{};
      }
      if (m == "filter") return MValue::of_set(r.engine_.run_filter(func(e.args[1]), r.rt_, *rv.set));
    }
    if (rv.k == MValue::K::List) {
      if (m == "append") {
        rv.list->push_back(eval_set(e.args[1]));
        return MValue{};
      }
      if (m == "pop") {
        if (rv.list->empty()) rt_error("pop from an empty list", e.pos);
        MValue out;
        out.k = MValue::K::Set;
        out.set = rv.list->back();
        rv.list->pop_back();
        return out;
      }
      if (m == "size") return MValue::of_int(static_cast<std::int64_t>(rv.list->size()));
    }
    rt_error("unsupported method " + m, e.pos);
  }

  MValue binary(const Expr& e) {
    const std::string& op = e.name;
    if (op == "and" || op == "or") {
      bool a = eval(e.args[0]).as_int() != 0;
      if (op == "and" && !a) return MValue::of_int(0);
      if (op == "or" && a) return MValue::of_int(1);
      return MValue::of_int(eval(e.args[1]).as_int() != 0);
    }
    MValue a = eval(e.args[0]);
    MValue b = eval(e.args[1]);
    if (a.dbl || b.dbl) {
      double x = a.as_double(), y = b.as_double();
      if (op == "+") return MValue::of_double(x + y);
      if (op == "-") return MValue::of_double(x - y);
      if (op == "*") return MValue::of_double(x * y);
      if (op == "/") return MValue::of_double(x / y);
      if (op == "<") return MValue::of_int(x < y);
      if (op == "<=") return MValue::of_int(x <= y);
      if (op == ">") return MValue::of_int(x > y);
      if (op == ">=") return MValue::of_int(x >= y);
      if (op == "==") return MValue::of_int(x == y);
      if (op == "!=") return MValue::of_int(x != y);
    } else {
      std::int64_t x = a.v.i, y = b.v.i;
      if (op == "+") return MValue::of_int(x + y);
      if (op == "-") return MValue::of_int(x - y);
      if (op == "*") return MValue::of_int(x * y);
      if (op == "/") {
        if (y == 0) rt_error("integer division by zero", e.pos);
        return MValue::of_int(x / y);
      }
      if (op == "<") return MValue::of_int(x < y);
      if (op == "<=") return MValue::of_int(x <= y);
      if (op == ">") return MValue::of_int(x > y);
      if (op == ">=") return MValue::of_int(x >= y);
      if (op == "==") return MValue::of_int(x == y);
      if (op == "!=") return MValue::of_int(x != y);
    }
    rt_error("unknown operator " + op, e.pos);
  }

  MValue eval(const Expr& e) {
    switch (e.kind) {
      case ExprKind::IntLit: return MValue::of_int(e.int_value);
      case ExprKind::FloatLit: return MValue::of_double(e.float_value);
      case ExprKind::BoolLit: return MValue::of_int(e.bool_value);
      case ExprKind::StringLit: return MValue{};
      case ExprKind::Ident: {
        if (MValue* l = find_local(e.name)) return *l;
        if (auto it = syms.scalars.find(e.name); it != syms.scalars.end()) {
          return MValue::scalar(r.rt_.scalars[it->second], syms.scalar_types[it->second] == ScalarType::Double);
        }
        if (auto it = syms.sets.find(e.name); it != syms.sets.end()) {
          MValue m;
          m.k = MValue::K::Set;
          m.set = global_sets[it->second];
          return m;
        }
        if (auto it = syms.edgesets.find(e.name); it != syms.edgesets.end()) {
          MValue m;
          m.k = MValue::K::Edgeset;
          m.edgeset = it->second;
          return m;
        }
        rt_error("unknown name " + e.name, e.pos);
      }
      case ExprKind::Index: {
        if (e.args[0].is_ident("argv")) return MValue{};
        int id = syms.vector_id(e.args[0].name);
        std::int64_t v = eval(e.args[1]).as_int();
        if (v < 0 || v >= n()) rt_error("vertex index " + std::to_string(v) + " out of range", e.pos);
        return MValue::scalar(r.rt_.data.load(id, v), r.rt_.data.vec(id).is_double());
      }
      case ExprKind::Call: {
        const std::string& f = e.name;
        if (f == "param") return param_value(e);
        if (f == "fabs") return MValue::of_double(std::fabs(eval(e.args[0]).as_double()));
        if (f == "sqrt") return MValue::of_double(std::sqrt(eval(e.args[0]).as_double()));
        if (f == "toDouble") return MValue::of_double(eval(e.args[0]).as_double());
        if (f == "toInt") return MValue::of_int(eval(e.args[0]).as_int());
        if (f == "min" || f == "max") {
          MValue a = eval(e.args[0]);
          MValue b = eval(e.args[1]);
          if (a.dbl || b.dbl) {
            double x = a.as_double(), y = b.as_double();
            return MValue::of_double(f == "min" ? std::min(x, y) : std::max(x, y));
          }
          return MValue::of_int(f == "min" ? std::min(a.v.i, b.v.i) : std::max(a.v.i, b.v.i));
        }
        rt_error("cannot call " + f + " here", e.pos);
      }
      case ExprKind::Method: return method(e);
      case ExprKind::Unary: {
        MValue a = eval(e.args[0]);
        if (e.name == "not") return MValue::of_int(a.as_int() == 0);
        return a.dbl ? MValue::of_double(-a.v.d) : MValue::of_int(-a.v.i);
      }
      case ExprKind::Binary: return binary(e);
      case ExprKind::NewVertexSet: {
        std::int64_t size = e.args.empty() ? 0 : eval(e.args[0]).as_int();
        if (size <= 0) return MValue::of_set(Frontier::empty(n()));
        if (size >= n()) return MValue::of_set(Frontier::full(n()));
        std::vector<VertexId> ids(size);
        for (std::int64_t i = 0; i < size; ++i) ids[i] = i;
        return MValue::of_set(Frontier::from_ids(n(), std::move(ids)));
      }
      case ExprKind::NewList: {
        MValue m;
        m.k = MValue::K::List;
        m.list = std::make_shared<std::vector<std::shared_ptr<Frontier>>>();
        return m;
      }
    }
    rt_error("unsupported expression", e.pos);
  }

  MValue default_value(const Type& t) {
    switch (t.kind) {
      case Type::Kind::Scalar: return is_double_type(t) ? MValue::of_double(0.0) : MValue::of_int(0);
      case Type::Kind::Element: return MValue::of_int(0);
      case Type::Kind::VertexSet: return MValue::of_set(Frontier::empty(n()));
      case Type::Kind::List: {
        MValue m;
        m.k = MValue::K::List;
        m.list = std::make_shared<std::vector<std::shared_ptr<Frontier>>>();
        return m;
      }
      default: return MValue{};
    }
  }

  void assign(const Expr& target, MValue v, SourcePos pos) {
    if (target.kind == ExprKind::Index) {
      int id = syms.vector_id(target.args[0].name);
      std::int64_t idx = eval(target.args[1]).as_int();
      if (idx < 0 || idx >= n()) rt_error("vertex index " + std::to_string(idx) + " out of range", pos);
      bool dbl = r.rt_.data.vec(id).is_double();
      r.rt_.data.store(id, idx, coerce(v, dbl).v);
      return;
    }
    if (MValue* l = find_local(target.name)) {
      *l = l->k == MValue::K::Scalar ? coerce(v, l->dbl) : v;
      return;
    }
    if (auto it = syms.scalars.find(target.name); it != syms.scalars.end()) {
      r.rt_.scalars[it->second] = coerce(v, syms.scalar_types[it->second] == ScalarType::Double).v;
      return;
    }
    if (syms.sets.count(target.name)) {
      if (v.k != MValue::K::Set) rt_error("assigning a non-set to " + target.name, pos);
      store_set(target, v.set);
      return;
    }
    rt_error("cannot assign to " + print_expr(target), pos);
  }

  MValue reduce(ReduceOp op, const MValue& a, const MValue& b) {
    if (a.dbl) {
      Value x = reduce_values(op, true, a.v, double_value(b.as_double()));
      return MValue::of_double(x.d);
    }
    return MValue::of_int(reduce_values(op, false, a.v, int_value(b.as_int())).i);
  }

  void print_value(const MValue& v) {
    if (!r.opt_.print_out) return;
    std::ostream& os = *r.opt_.print_out;
    switch (v.k) {
      case MValue::K::Scalar:
        if (v.dbl) {
          char buf[64];
          std::snprintf(buf, sizeof buf, "%.10g", v.v.d);
          os << buf << "\n";
        } else {
          os << v.v.i << "\n";
        }
        break;
      case MValue::K::Set: os << v.set->size() << "\n"; break;
      case MValue::K::List: os << v.list->size() << "\n"; break;
      default: os << "\n"; break;
    }
  }

  void exec_block(const std::vector<Stmt>& body) {
    scopes.emplace_back();
    for (const Stmt& s : body) exec(s);
    scopes.pop_back();
  }

  void exec(const Stmt& s) {
    try {
      exec_inner(s);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::RuntimeError || s.label.empty() || err.detail().rfind("statement ", 0) == 0) throw;
      throw Error(ErrorKind::RuntimeError, "statement " + label_path_of(p, s.id) + ": " + err.detail(), err.pos());
    }
  }

  void exec_inner(const Stmt& s) {
    const BoundPlan* bp = r.cp_.plan_for(s.id);
    if (bp) {
      chain_expr = chain_expr_of(p, s);
      chain_plan = bp;
    }
    switch (s.kind) {
      case StmtKind::VarDecl: {
        MValue v = s.exprs.empty() ? default_value(s.type) : eval(s.exprs[0]);
        if (s.type.kind == Type::Kind::Scalar || s.type.kind == Type::Kind::Element) {
          v = coerce(v, is_double_type(s.type));
        }
        scopes.back()[s.name] = std::move(v);
        break;
      }
      case StmtKind::Assign: assign(s.exprs[0], eval(s.exprs[1]), s.pos); break;
      case StmtKind::Reduce: assign(s.exprs[0], reduce(s.op, eval(s.exprs[0]), eval(s.exprs[1])), s.pos); break;
      case StmtKind::ExprStmt: eval(s.exprs[0]); break;
      case StmtKind::For: {
        std::int64_t lo = eval(s.exprs[0]).as_int();
        std::int64_t hi = eval(s.exprs[1]).as_int();
        for (std::int64_t i = lo; i < hi; ++i) {
          scopes.emplace_back();
          scopes.back()[s.name] = MValue::of_int(i);
          exec_block(s.body);
          scopes.pop_back();
        }
        break;
      }
      case StmtKind::While:
        while (eval(s.exprs[0]).as_int() != 0) exec_block(s.body);
        break;
      case StmtKind::If:
        if (eval(s.exprs[0]).as_int() != 0) {
          exec_block(s.body);
        } else {
          exec_block(s.else_body);
        }
        break;
      case StmtKind::NameNode:
        for (const Stmt& inner : s.body) exec(inner);
        break;
      case StmtKind::Delete:
        if (MValue* l = find_local(s.name)) {
          if (l->k == MValue::K::Set) l->set = std::make_shared<Frontier>(Frontier::empty(n()));
        }
        break;
      case StmtKind::Print: print_value(eval(s.exprs[0])); break;
    }
    if (bp) {
      chain_expr = nullptr;
      chain_plan = nullptr;
    }
  }

  void init_globals() {
    Runtime& rt = r.rt_;
    rt.n = r.graph_.num_vertices();
    rt.data.allocate(syms, r.cp_.sp.layout, rt.n);
    rt.scalars.assign(syms.scalar_types.size(), int_value(0));
    rt.sets.assign(syms.sets.size(), Frontier::empty(rt.n));
    global_sets.assign(syms.sets.size(), nullptr);
    for (auto& gs : global_sets) gs = std::make_shared<Frontier>(Frontier::empty(rt.n));
    const int all = syms.sets.at(kAllVertices);
    global_sets[all] = std::make_shared<Frontier>(Frontier::full(rt.n));
    rt.sets[all] = *global_sets[all];
    for (const auto& g : p.globals) {
      if (g.type.kind == Type::Kind::Scalar) {
        int id = syms.scalars.at(g.name);
        bool dbl = g.type.scalar == ScalarType::Double;
        rt.scalars[id] = g.init ? coerce(eval(*g.init), dbl).v : (dbl ? double_value(0.0) : int_value(0));
      } else if (g.type.kind == Type::Kind::VertexSet && g.init) {
        int id = syms.sets.at(g.name);
        global_sets[id] = eval_set(*g.init);
        rt.sets[id] = *global_sets[id];
      }
    }
  }
};

ProgramRunner::ProgramRunner(const CompiledProgram& cp, const Graph& graph, RunOptions opt)
    : cp_(cp), graph_(graph), opt_(std::move(opt)), pool_(std::max(1, opt_.threads)),
      engine_(pool_, EngineOptions{opt_.hybrid_threshold}) {
  const Program& p = cp_.sp.program;
  rt_.edgesets.assign(cp_.syms.edgeset_names.size(), nullptr);
  std::map<const Graph*, GraphCache*> by_graph;
  for (const auto& g : p.globals) {
    if (g.type.kind != Type::Kind::EdgeSet) continue;
    int id = cp_.syms.edgesets.at(g.name);
    const Expr& init = *g.init;
    const Graph* target = nullptr;
    if (init.kind == ExprKind::Call && init.name == "load") {
      target = &graph_;
    } else if (init.kind == ExprKind::Ident && cp_.syms.edgesets.count(init.name)) {
      target = rt_.edgesets[cp_.syms.edgesets.at(init.name)];
    } else if (init.kind == ExprKind::Method && init.name == "transpose" && init.args[0].kind == ExprKind::Ident &&
               cp_.syms.edgesets.count(init.args[0].name)) {
      owned_.push_back(std::make_unique<Graph>(rt_.edgesets[cp_.syms.edgesets.at(init.args[0].name)]->transposed()));
      target = owned_.back().get();
    } else {
      throw Error(ErrorKind::TypeError, "unsupported edgeset initializer for " + g.name, g.pos);
    }
    if (!target) throw Error(ErrorKind::TypeError, "edgeset " + g.name + " used before it is defined", g.pos);
    rt_.edgesets[id] = target;
  }
  edgeset_cache_.assign(rt_.edgesets.size(), nullptr);
  for (std::size_t i = 0; i < rt_.edgesets.size(); ++i) {
    auto& c = by_graph[rt_.edgesets[i]];
    if (!c) {
      caches_.push_back(std::make_unique<GraphCache>(rt_.edgesets[i]));
      c = caches_.back().get();
    }
    edgeset_cache_[i] = c;
  }
  rt_.n = graph_.num_vertices();
}

ProgramRunner::~ProgramRunner() = default;

void ProgramRunner::prepare() {
  for (const auto& [id, bp] : cp_.bound) {
    for (const auto& v : bp.plan->variants) edgeset_cache_[bp.edgeset]->prepare(v.gis);
  }
}

RunStats ProgramRunner::run() {
  Impl impl(*this);
  auto t0 = std::chrono::steady_clock::now();
  impl.init_globals();
  if (cp_.sp.program.main) impl.exec_block(cp_.sp.program.main->body);
  impl.stats.wall_ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
  return std::move(impl.stats);
}

std::vector<double> ProgramRunner::vector_values(const std::string& name) const {
  return rt_.data.as_doubles(cp_.syms.vector_id(name));
}

std::string ProgramRunner::vector_tsv(const std::string& name) const {
  int id = cp_.syms.vector_id(name);
  const bool dbl = rt_.data.vec(id).is_double();
  std::string out;
  char buf[64];
  for (VertexId v = 0; v < rt_.n; ++v) {
    Value x = rt_.data.load(id, v);
    if (dbl) {
      std::snprintf(buf, sizeof buf, "%lld\t%.17g\n", static_cast<long long>(v), x.d);
    } else {
      std::snprintf(buf, sizeof buf, "%lld\t%lld\n", static_cast<long long>(v), static_cast<long long>(x.i));
    }
    out += buf;
  }
  return out;
}

double ProgramRunner::scalar_value(const std::string& name) const {
  auto it = cp_.syms.scalars.find(name);
  if (it == cp_.syms.scalars.end()) throw Error(ErrorKind::VectorNotFound, "scalar " + name + " does not exist");
  Value v = rt_.scalars[it->second];
  return cp_.syms.scalar_types[it->second] == ScalarType::Double ? v.d : static_cast<double>(v.i);
}

}  // namespace graphweave
