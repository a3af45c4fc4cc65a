#include "graphweave/lang/sema.hpp"

#include <functional>
#include <set>

#include "graphweave/lang/access.hpp"
#include "graphweave/lang/chain.hpp"
#include "graphweave/lang/printer.hpp"

namespace graphweave {

namespace {

[[noreturn]] void type_error(const std::string& msg, SourcePos pos) { throw Error(ErrorKind::TypeError, msg, pos); }

bool numeric_like(const Type& t) {
  return (t.kind == Type::Kind::Scalar && t.scalar != ScalarType::Bool) || t.kind == Type::Kind::Element;
}

bool is_double(const Type& t) { return t.kind == Type::Kind::Scalar && t.scalar == ScalarType::Double; }

/// Whether a value of type `v` may be stored into a slot of type `target`.
bool assignable(const Type& target, const Type& v) {
  if (target == v) return true;
  if (target.kind == Type::Kind::Scalar) {
    if (target.scalar == ScalarType::Double) return numeric_like(v);
    if (target.scalar == ScalarType::Int) {
      return (v.kind == Type::Kind::Scalar && v.scalar == ScalarType::Int) || v.kind == Type::Kind::Element;
    }
    return v.is_bool();
  }
  if (target.kind == Type::Kind::Element) {
    return (v.kind == Type::Kind::Scalar && v.scalar == ScalarType::Int) || v.kind == Type::Kind::Element;
  }
  if (target.kind == Type::Kind::VertexSet && v.kind == Type::Kind::VertexSet) return target.element == v.element;
  return false;
}

const std::set<std::string> kBuiltins = {"fabs", "sqrt", "min", "max", "param", "load", "toDouble", "toInt"};

}  // namespace

bool is_builtin_call(const std::string& name) { return kBuiltins.count(name) > 0; }

Type type_of(const TypeEnv& env, const Expr& e) {
  const Program& p = *env.program;
  switch (e.kind) {
    case ExprKind::IntLit: return Type::scalar_of(ScalarType::Int);
    case ExprKind::FloatLit: return Type::scalar_of(ScalarType::Double);
    case ExprKind::BoolLit: return Type::scalar_of(ScalarType::Bool);
    case ExprKind::StringLit: {
      Type t;
      t.kind = Type::Kind::String;
      return t;
    }
    case ExprKind::Ident: {
      auto it = env.locals.find(e.name);
      if (it != env.locals.end()) return it->second;
      if (const GlobalDecl* g = p.find_global(e.name)) return g->type;
      if (e.name == "__vertices") return Type::vertexset_of("");
      type_error("unknown name " + e.name, e.pos);
    }
    case ExprKind::Index: {
      if (e.args[0].is_ident("argv")) {
        Type t;
        t.kind = Type::Kind::String;
        return t;
      }
      Type base = type_of(env, e.args[0]);
      if (base.kind != Type::Kind::Vector) type_error("indexing a non-vector " + print_expr(e.args[0]), e.pos);
      Type idx = type_of(env, e.args[1]);
      if (idx.kind == Type::Kind::Element) {
        if (idx.element != base.element) {
          type_error("vector " + print_expr(e.args[0]) + " of " + base.element + " indexed by " + idx.element,
                     e.pos);
        }
      } else if (!(idx.kind == Type::Kind::Scalar && idx.scalar == ScalarType::Int)) {
        type_error("vector index must be a vertex or int", e.pos);
      }
      return Type::scalar_of(base.scalar);
    }
    case ExprKind::Call: {
      const std::string& n = e.name;
      if (n == "fabs" || n == "sqrt" || n == "toDouble") {
        if (e.args.size() != 1 || !numeric_like(type_of(env, e.args[0]))) type_error(n + " takes one number", e.pos);
        return Type::scalar_of(ScalarType::Double);
      }
      if (n == "toInt") {
        if (e.args.size() != 1 || !numeric_like(type_of(env, e.args[0]))) type_error(n + " takes one number", e.pos);
        return Type::scalar_of(ScalarType::Int);
      }
      if (n == "min" || n == "max") {
        if (e.args.size() != 2) type_error(n + " takes two numbers", e.pos);
        Type a = type_of(env, e.args[0]);
        Type b = type_of(env, e.args[1]);
        if (!numeric_like(a) || !numeric_like(b)) type_error(n + " takes two numbers", e.pos);
        return Type::scalar_of(is_double(a) || is_double(b) ? ScalarType::Double : ScalarType::Int);
      }
      if (n == "param") {
        if (e.args.size() != 2 || e.args[0].kind != ExprKind::StringLit) {
          type_error("param takes a name string and a default value", e.pos);
        }
        Type d = type_of(env, e.args[1]);
        if (d.kind != Type::Kind::Scalar) type_error("param default must be a scalar", e.pos);
        return d;
      }
      if (n == "load") {
        Type t;
        t.kind = Type::Kind::EdgeSet;
        return t;  // refined by the declaration
      }
      if (p.find_func(n)) type_error("user functions cannot be called directly: " + n, e.pos);
      type_error("unknown function " + n, e.pos);
    }
    case ExprKind::Method: {
      if (auto chain = extract_apply_chain(p, e)) {
        const GlobalDecl* es = p.find_global(chain->edgeset);
        if (chain->modified) return Type::vertexset_of(es->type.dst_kind);
        return Type{};
      }
      Type recv = type_of(env, e.args[0]);
      const std::string& m = e.name;
      std::size_t nargs = e.args.size() - 1;
      auto want_args = [&](std::size_t k) {
        if (nargs != k) type_error(m + " takes " + std::to_string(k) + " argument(s)", e.pos);
      };
      if (recv.kind == Type::Kind::EdgeSet) {
        if (m == "getVertices" || m == "getSrcVertices") {
          want_args(0);
          return Type::vertexset_of(recv.src_kind);
        }
        if (m == "getDstVertices") {
          want_args(0);
          return Type::vertexset_of(recv.dst_kind);
        }
        if (m == "getOutDegrees") {
          want_args(0);
          return Type::vector_of(recv.src_kind, ScalarType::Int);
        }
        if (m == "getInDegrees") {
          want_args(0);
          return Type::vector_of(recv.dst_kind, ScalarType::Int);
        }
        if (m == "getOutDegree" || m == "getInDegree") {
          want_args(1);
          if (!numeric_like(type_of(env, e.args[1]))) type_error(m + " takes a vertex", e.pos);
          return Type::scalar_of(ScalarType::Int);
        }
        if (m == "getNumEdges" || m == "size") {
          want_args(0);
          return Type::scalar_of(ScalarType::Int);
        }
        if (m == "transpose") {
          want_args(0);
          Type t = recv;
          std::swap(t.src_kind, t.dst_kind);
          return t;
        }
        type_error("unknown edgeset method " + m, e.pos);
      }
      if (recv.kind == Type::Kind::VertexSet) {
        if (m == "size" || m == "getVertexSetSize") {
          want_args(0);
          return Type::scalar_of(ScalarType::Int);
        }
        if (m == "addVertex") {
          want_args(1);
          if (!numeric_like(type_of(env, e.args[1]))) type_error("addVertex takes a vertex", e.pos);
          return Type{};
        }
        if (m == "apply" || m == "filter") {
          want_args(1);
          const Expr& fn = e.args[1];
          const FuncDecl* f = fn.kind == ExprKind::Ident ? p.find_func(fn.name) : nullptr;
          if (!f) type_error(m + " expects a function name", e.pos);
          if (f->params.size() != 1) type_error("vertex function " + f->name + " must take one vertex", f->pos);
          const Type& pt = f->params[0].type;
          if (pt.kind != Type::Kind::Element || (!recv.element.empty() && pt.element != recv.element)) {
            type_error("vertex function " + f->name + " does not take " + recv.element, f->pos);
          }
          if (m == "filter") {
            if (!f->output || !f->output->type.is_bool()) {
              type_error("filter function " + f->name + " must declare a bool output", f->pos);
            }
            return Type::vertexset_of(recv.element.empty() ? pt.element : recv.element);
          }
          return Type{};
        }
        type_error("unknown vertexset method " + m, e.pos);
      }
      if (recv.kind == Type::Kind::List) {
        if (m == "append") {
          want_args(1);
          Type v = type_of(env, e.args[1]);
          if (v.kind != Type::Kind::VertexSet) type_error("append takes a vertexset", e.pos);
          return Type{};
        }
        if (m == "pop") {
          want_args(0);
          return Type::vertexset_of(recv.element);
        }
        if (m == "size") {
          want_args(0);
          return Type::scalar_of(ScalarType::Int);
        }
        type_error("unknown list method " + m, e.pos);
      }
      type_error("method " + m + " on a value of type " + to_string(recv), e.pos);
    }
    case ExprKind::Unary: {
      Type t = type_of(env, e.args[0]);
      if (e.name == "not") {
        if (!t.is_bool()) type_error("'not' needs a bool", e.pos);
        return t;
      }
      if (!numeric_like(t)) type_error("unary '-' needs a number", e.pos);
      return t.kind == Type::Kind::Element ? Type::scalar_of(ScalarType::Int) : t;
    }
    case ExprKind::Binary: {
      Type a = type_of(env, e.args[0]);
      Type b = type_of(env, e.args[1]);
      const std::string& op = e.name;
      if (op == "and" || op == "or") {
        if (!a.is_bool() || !b.is_bool()) type_error("'" + op + "' needs bool operands", e.pos);
        return a;
      }
      if (op == "==" || op == "!=" || op == "<" || op == "<=" || op == ">" || op == ">=") {
        bool ok = (numeric_like(a) && numeric_like(b)) || (a.is_bool() && b.is_bool() && (op == "==" || op == "!="));
        if (!ok) type_error("cannot compare " + to_string(a) + " with " + to_string(b), e.pos);
        return Type::scalar_of(ScalarType::Bool);
      }
      if (!numeric_like(a) || !numeric_like(b)) type_error("'" + op + "' needs numeric operands", e.pos);
      return Type::scalar_of(is_double(a) || is_double(b) ? ScalarType::Double : ScalarType::Int);
    }
    case ExprKind::NewVertexSet:
      if (!p.has_element(e.element)) type_error("unknown element " + e.element, e.pos);
      if (e.args.size() > 1) type_error("new vertexset takes at most one size argument", e.pos);
      if (e.args.size() == 1 && !numeric_like(type_of(env, e.args[0]))) type_error("vertexset size must be int", e.pos);
      return Type::vertexset_of(e.element);
    case ExprKind::NewList: {
      Type t;
      t.kind = Type::Kind::List;
      t.element = e.element;
      return t;
    }
  }
  type_error("unsupported expression", e.pos);
}

namespace {

class Checker {
 public:
  explicit Checker(const Program& p) : p_(p) {}

  void run() {
    std::set<std::string> names;
    for (const auto& el : p_.elements) {
      if (!names.insert(el.name).second) type_error("duplicate element " + el.name, el.pos);
    }
    TypeEnv genv;
    genv.program = &p_;
    for (const auto& g : p_.globals) {
      if (!names.insert(g.name).second) type_error("duplicate declaration " + g.name, g.pos);
      check_global(genv, g);
    }
    for (const auto& f : p_.funcs) {
      if (!names.insert(f.name).second) type_error("duplicate declaration " + f.name, f.pos);
    }
    for (const auto& f : p_.funcs) check_function(f, false);
    if (p_.main) {
      if (!p_.main->params.empty()) type_error("main takes no parameters", p_.main->pos);
      check_function(*p_.main, true);
      check_labels(p_.main->body);
    }
  }

 private:
  const Program& p_;

  void check_element(const std::string& kind, SourcePos pos) const {
    if (!p_.has_element(kind)) type_error("undeclared element kind " + kind, pos);
  }

  void check_type_decl(const Type& t, SourcePos pos) const {
    switch (t.kind) {
      case Type::Kind::Vector:
      case Type::Kind::VertexSet:
      case Type::Kind::List:
      case Type::Kind::Element: check_element(t.element, pos); break;
      case Type::Kind::EdgeSet:
        check_element(t.element, pos);
        check_element(t.src_kind, pos);
        check_element(t.dst_kind, pos);
        break;
      default: break;
    }
  }

  void check_global(const TypeEnv& env, const GlobalDecl& g) const {
    check_type_decl(g.type, g.pos);
    if (g.type.kind == Type::Kind::List || g.type.kind == Type::Kind::Element) {
      type_error("unsupported global type for " + g.name, g.pos);
    }
    if (!g.init) {
      if (g.type.kind == Type::Kind::EdgeSet) type_error("edgeset " + g.name + " needs an initializer", g.pos);
      return;
    }
    const Expr& init = *g.init;
    if (g.type.kind == Type::Kind::EdgeSet) {
      if (init.kind == ExprKind::Call && init.name == "load") return;
      Type t = type_of(env, init);
      if (t.kind != Type::Kind::EdgeSet || t.src_kind != g.type.src_kind || t.dst_kind != g.type.dst_kind) {
        type_error("edgeset " + g.name + " initialized with " + to_string(t), g.pos);
      }
      return;
    }
    Type t = type_of(env, init);
    if (g.type.kind == Type::Kind::Vector) {
      if (t.kind == Type::Kind::Vector) {
        if (t.element != g.type.element || !assignable(Type::scalar_of(g.type.scalar), Type::scalar_of(t.scalar))) {
          type_error("vector " + g.name + " initialized with " + to_string(t), g.pos);
        }
        if (init.kind != ExprKind::Method) type_error("vector initializer must be a constant or degree query", g.pos);
        return;
      }
      if (!assignable(Type::scalar_of(g.type.scalar), t)) {
        type_error("vector " + g.name + " of " + scalar_name(g.type.scalar) + " initialized with " + to_string(t),
                   g.pos);
      }
      return;
    }
    if (!assignable(g.type, t)) {
      type_error(g.name + " of type " + to_string(g.type) + " initialized with " + to_string(t), g.pos);
    }
  }

  void check_function(const FuncDecl& f, bool is_main) const {
    TypeEnv env;
    env.program = &p_;
    env.in_main = is_main;
    for (const auto& prm : f.params) {
      check_type_decl(prm.type, f.pos);
      if (prm.type.kind != Type::Kind::Element && !(prm.type.kind == Type::Kind::Scalar)) {
        type_error("parameter " + prm.name + " must be a vertex or scalar", f.pos);
      }
      env.locals[prm.name] = prm.type;
    }
    if (f.output) {
      if (f.output->type.kind != Type::Kind::Scalar) type_error("function output must be a scalar", f.pos);
      env.locals[f.output->name] = f.output->type;
    }
    body(env, f, f.body, is_main);
  }

  void body(TypeEnv env, const FuncDecl& f, const std::vector<Stmt>& stmts, bool is_main) const {
    for (const auto& s : stmts) stmt(env, f, s, is_main);
  }

  bool writes_allowed(const FuncDecl& f, const GlobalDecl& g) const {
    if (f.generated) return true;
    return !g.is_const;
  }

  void check_target(TypeEnv& env, const FuncDecl& f, const Expr& target, bool is_main) const {
    if (target.kind == ExprKind::Ident) {
      if (env.locals.count(target.name)) {
        if (!f.params.empty()) {
          for (const auto& prm : f.params) {
            if (prm.name == target.name) type_error("cannot assign to parameter " + target.name, target.pos);
          }
        }
        return;
      }
      const GlobalDecl* g = p_.find_global(target.name);
      if (!g) type_error("unknown name " + target.name, target.pos);
      if (!is_main) type_error("function " + f.name + " cannot write global " + g->name, target.pos);
      if (g->is_const) type_error("cannot assign to const " + g->name, target.pos);
      if (g->type.kind != Type::Kind::Scalar && g->type.kind != Type::Kind::VertexSet) {
        type_error("cannot assign to " + g->name, target.pos);
      }
      return;
    }
    if (target.kind == ExprKind::Index) {
      type_of(env, target);
      const GlobalDecl* g = p_.find_global(target.args[0].name);
      if (!writes_allowed(f, *g)) type_error("cannot write const vector " + g->name, target.pos);
      return;
    }
    type_error("invalid assignment target", target.pos);
  }

  void check_chain(const TypeEnv& env, const Expr& e) const {
    auto chain = extract_apply_chain(p_, e);
    const GlobalDecl* es = p_.find_global(chain->edgeset);
    const Type& et = es->type;
    auto vertex_set_of = [&](const Expr& x, const std::string& kind, const char* role) {
      Type t = type_of(env, x);
      if (t.kind != Type::Kind::VertexSet || (!t.element.empty() && t.element != kind)) {
        type_error(std::string(role) + " must be a vertexset{" + kind + "}", x.pos);
      }
    };
    if (chain->from_set) vertex_set_of(*chain->from_set, et.src_kind, "from");
    if (chain->to_set) vertex_set_of(*chain->to_set, et.dst_kind, "to");
    auto vertex_filter = [&](const std::string& name, const std::string& kind) {
      if (name.empty()) return;
      const FuncDecl* f = p_.find_func(name);
      if (!f) type_error("unknown filter function " + name, e.pos);
      if (!f->output || !f->output->type.is_bool()) type_error("filter " + name + " must declare a bool output", f->pos);
      if (f->params.size() != 1 || f->params[0].type != Type::element_of(kind)) {
        type_error("filter " + name + " must take one " + kind, f->pos);
      }
    };
    vertex_filter(chain->src_filter, et.src_kind);
    vertex_filter(chain->dst_filter, et.dst_kind);
    auto edge_func = [&](const std::string& name, bool needs_output) {
      const FuncDecl* f = p_.find_func(name);
      if (!f) type_error("unknown function " + name, e.pos);
      if (needs_output && (!f->output || !f->output->type.is_bool())) {
        type_error("edge filter " + name + " must declare a bool output", f->pos);
      }
      if (f->params.size() < 2 || f->params.size() > 3) {
        type_error("edge function " + name + " must take (src, dst) or (src, dst, weight)", f->pos);
      }
      if (f->params[0].type != Type::element_of(et.src_kind) || f->params[1].type != Type::element_of(et.dst_kind)) {
        type_error("edge function " + name + " does not match edgeset " + es->name, f->pos);
      }
      if (f->params.size() == 3) {
        if (!et.weighted) type_error("edge function " + name + " takes a weight but " + es->name + " is unweighted", f->pos);
        if (f->params[2].type != Type::scalar_of(ScalarType::Int)) type_error("edge weight must be int", f->pos);
      }
    };
    edge_func(chain->apply_func, false);
    if (!chain->edge_filter.empty()) edge_func(chain->edge_filter, true);
    if (chain->modified) {
      const GlobalDecl* v = p_.find_global(chain->tracked_vector);
      if (!v || v->type.kind != Type::Kind::Vector) {
        type_error("applyModified tracks unknown vector " + chain->tracked_vector, e.pos);
      }
      if (v->type.element != et.dst_kind) type_error("tracked vector must be indexed by " + et.dst_kind, e.pos);
    }
    // Write/reduction targets in edge functions must be indexed by an endpoint.
    const FuncDecl* apply = p_.find_func(chain->apply_func);
    for (const auto& a : classify_accesses(p_, *apply)) {
      if (a.kind != AccessKind::ReadOnly && (a.indexed_by == Endpoint::Other || a.indexed_by == Endpoint::None)) {
        type_error("updates of " + a.vector + " in " + apply->name + " must be indexed by src or dst", apply->pos);
      }
    }
    classify_chain_accesses(p_, *chain);
  }

  void expr_stmt_check(TypeEnv& env, const Expr& e, bool is_main, SourcePos pos) const {
    if (!is_main) type_error("expression statements are only allowed in main", pos);
    if (extract_apply_chain(p_, e)) {
      check_chain(env, e);
      return;
    }
    if (e.kind != ExprKind::Method) type_error("expression has no effect", pos);
    type_of(env, e);
  }

  void value_check(TypeEnv& env, const Expr& e, bool is_main) const {
    if (extract_apply_chain(p_, e)) {
      if (!is_main) type_error("edgeset traversals are only allowed in main", e.pos);
      check_chain(env, e);
    }
    if (!is_main) {
      for_each_expr(e, [&](const Expr& x) {
        if (x.kind == ExprKind::Method || x.kind == ExprKind::NewVertexSet || x.kind == ExprKind::NewList) {
          if (x.kind == ExprKind::Method) {
            Type recv = type_of(env, x.args[0]);
            bool ok = (recv.kind == Type::Kind::VertexSet && (x.name == "size" || x.name == "getVertexSetSize")) ||
                      (recv.kind == Type::Kind::EdgeSet &&
                       (x.name == "getOutDegree" || x.name == "getInDegree" || x.name == "getNumEdges"));
            if (ok && x.args[0].kind == ExprKind::Ident) return;
          }
          type_error("set operations are only allowed in main", x.pos);
        }
        if (x.kind == ExprKind::Call && (x.name == "param" || x.name == "load")) {
          type_error(x.name + " is only allowed in declarations", x.pos);
        }
      });
    }
  }

  void stmt(TypeEnv& env, const FuncDecl& f, const Stmt& s, bool is_main) const {
    if (!s.label.empty() && !is_main) type_error("labels are only allowed in main", s.pos);
    switch (s.kind) {
      case StmtKind::VarDecl: {
        check_type_decl(s.type, s.pos);
        if (!is_main && s.type.kind != Type::Kind::Scalar) type_error("function locals must be scalars", s.pos);
        if (env.locals.count(s.name)) type_error("redeclaration of " + s.name, s.pos);
        if (!s.exprs.empty()) {
          value_check(env, s.exprs[0], is_main);
          Type t = type_of(env, s.exprs[0]);
          if (!assignable(s.type, t) &&
              !(s.type.kind == Type::Kind::List && t.kind == Type::Kind::List && t.element == s.type.element)) {
            type_error("cannot initialize " + s.name + " of type " + to_string(s.type) + " with " + to_string(t),
                       s.pos);
          }
        }
        env.locals[s.name] = s.type;
        break;
      }
      case StmtKind::Assign: {
        check_target(env, f, s.exprs[0], is_main);
        value_check(env, s.exprs[1], is_main);
        Type t = type_of(env, s.exprs[0]);
        Type v = type_of(env, s.exprs[1]);
        if (!assignable(t, v)) type_error("cannot assign " + to_string(v) + " to " + to_string(t), s.pos);
        break;
      }
      case StmtKind::Reduce: {
        if (s.exprs[0].kind != ExprKind::Index) type_error("reductions must target a vector element", s.pos);
        check_target(env, f, s.exprs[0], is_main);
        value_check(env, s.exprs[1], is_main);
        Type t = type_of(env, s.exprs[0]);
        Type v = type_of(env, s.exprs[1]);
        if (!numeric_like(t) || !assignable(t, v)) {
          type_error("cannot reduce " + to_string(v) + " into " + to_string(t), s.pos);
        }
        break;
      }
      case StmtKind::ExprStmt: expr_stmt_check(env, s.exprs[0], is_main, s.pos); break;
      case StmtKind::For: {
        value_check(env, s.exprs[0], is_main);
        value_check(env, s.exprs[1], is_main);
        Type lo = type_of(env, s.exprs[0]);
        Type hi = type_of(env, s.exprs[1]);
        auto is_int = [](const Type& t) { return t.kind == Type::Kind::Scalar && t.scalar == ScalarType::Int; };
        if (!is_int(lo) || !is_int(hi)) type_error("for-loop bounds must be int", s.pos);
        TypeEnv inner = env;
        inner.locals[s.name] = Type::scalar_of(ScalarType::Int);
        body(inner, f, s.body, is_main);
        break;
      }
      case StmtKind::While:
      case StmtKind::If: {
        value_check(env, s.exprs[0], is_main);
        if (!type_of(env, s.exprs[0]).is_bool()) type_error("condition must be bool", s.pos);
        body(env, f, s.body, is_main);
        body(env, f, s.else_body, is_main);
        break;
      }
      case StmtKind::NameNode: body(env, f, s.body, is_main); break;
      case StmtKind::Delete:
        if (!env.locals.count(s.name)) type_error("delete of unknown variable " + s.name, s.pos);
        break;
      case StmtKind::Print: {
        value_check(env, s.exprs[0], is_main);
        Type t = type_of(env, s.exprs[0]);
        if (t.kind != Type::Kind::Scalar && t.kind != Type::Kind::Element) type_error("print takes a scalar", s.pos);
        break;
      }
    }
  }

  void check_labels(const std::vector<Stmt>& stmts) const {
    std::set<std::string> seen;
    for (const auto& s : stmts) {
      if (!s.label.empty() && !seen.insert(s.label).second) {
        throw Error(ErrorKind::AmbiguousLabel, "duplicate label " + s.label + " in one scope", s.pos);
      }
    }
    // Unlabelled compound statements share their parent's scope.
    std::function<void(const std::vector<Stmt>&, std::set<std::string>&)> flat =
        [&](const std::vector<Stmt>& b, std::set<std::string>& scope) {
          for (const auto& s : b) {
            if (!s.label.empty()) {
              if (!scope.insert(s.label).second) {
                throw Error(ErrorKind::AmbiguousLabel, "duplicate label " + s.label + " in one scope", s.pos);
              }
              std::set<std::string> inner;
              flat(s.body, inner);
              flat(s.else_body, inner);
            } else {
              flat(s.body, scope);
              flat(s.else_body, scope);
            }
          }
        };
    std::set<std::string> top;
    flat(stmts, top);
  }
};

}  // namespace

void check_semantics(const Program& p) { Checker(p).run(); }

}  // namespace graphweave
