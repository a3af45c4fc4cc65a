#include "graphweave/lang/access.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace graphweave {

const VectorAccess* find_access(const AccessMap& m, const std::string& vector) {
  for (const auto& a : m) {
    if (a.vector == vector) return &a;
  }
  return nullptr;
}

const char* access_kind_name(AccessKind k) {
  switch (k) {
    case AccessKind::ReadOnly: return "read-only";
    case AccessKind::WriteOnly: return "write-only";
    case AccessKind::Reduction: return "reduction";
    case AccessKind::AsyncReduction: return "async-reduction";
  }
  return "";
}

const char* access_op_name(AccessOp op) {
  switch (op) {
    case AccessOp::None: return "";
    case AccessOp::Sum: return "sum";
    case AccessOp::Min: return "min";
    case AccessOp::Max: return "max";
    case AccessOp::Claim: return "claim";
  }
  return "";
}

namespace {

struct Use {
  int order = 0;
  bool read = false;
  bool written = false;
  std::vector<ReduceOp> reductions;
  Endpoint update_index = Endpoint::None;
  Endpoint read_index = Endpoint::None;
  SourcePos pos;
};

Endpoint merge(Endpoint a, Endpoint b) {
  if (a == Endpoint::None) return b;
  if (b == Endpoint::None || a == b) return a;
  if (a == Endpoint::Other || b == Endpoint::Other) return Endpoint::Other;
  return Endpoint::Both;
}

class Collector {
 public:
  Collector(const Program& p, const FuncDecl& f) : p_(p), f_(f) {}

  std::map<std::string, Use> uses;
  int next_order = 0;

  void run() {
    for (const auto& s : f_.body) stmt(s);
  }

 private:
  const Program& p_;
  const FuncDecl& f_;

  bool is_vector(const std::string& name) const {
    const GlobalDecl* g = p_.find_global(name);
    return g && g->type.kind == Type::Kind::Vector;
  }

  Endpoint endpoint_of(const Expr& idx) const {
    if (idx.kind == ExprKind::Ident) {
      if (!f_.params.empty() && idx.name == f_.params[0].name) return Endpoint::Src;
      if (f_.params.size() > 1 && idx.name == f_.params[1].name) return Endpoint::Dst;
    }
    return Endpoint::Other;
  }

  Use& touch(const std::string& name, SourcePos pos) {
    auto it = uses.find(name);
    if (it == uses.end()) {
      Use u;
      u.order = next_order++;
      u.pos = pos;
      it = uses.emplace(name, u).first;
    }
    return it->second;
  }

  void reads(const Expr& e) {
    if (e.kind == ExprKind::Index && e.args[0].kind == ExprKind::Ident && is_vector(e.args[0].name)) {
      Use& u = touch(e.args[0].name, e.pos);
      u.read = true;
      u.read_index = merge(u.read_index, endpoint_of(e.args[1]));
      reads(e.args[1]);
      return;
    }
    for (const auto& a : e.args) reads(a);
  }

  void stmt(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::Assign:
      case StmtKind::Reduce: {
        const Expr& target = s.exprs[0];
        if (target.kind == ExprKind::Index && target.args[0].kind == ExprKind::Ident &&
            is_vector(target.args[0].name)) {
          Use& u = touch(target.args[0].name, target.pos);
          if (s.kind == StmtKind::Assign) u.written = true;
          else u.reductions.push_back(s.op);
          u.update_index = merge(u.update_index, endpoint_of(target.args[1]));
          reads(target.args[1]);
        }
        reads(s.exprs[1]);
        break;
      }
      default:
        for (const auto& e : s.exprs) reads(e);
        break;
    }
    for (const auto& c : s.body) stmt(c);
    for (const auto& c : s.else_body) stmt(c);
  }
};

AccessOp op_of(ReduceOp r) {
  switch (r) {
    case ReduceOp::Sum: return AccessOp::Sum;
    case ReduceOp::Min:
    case ReduceOp::AsyncMin: return AccessOp::Min;
    case ReduceOp::Max:
    case ReduceOp::AsyncMax: return AccessOp::Max;
  }
  return AccessOp::None;
}

[[noreturn]] void mixed(const std::string& vec, const std::string& func, const std::string& why, SourcePos pos) {
  throw Error(ErrorKind::MixedAccessError, "vector " + vec + " in function " + func + " " + why, pos);
}

}  // namespace

AccessMap classify_accesses(const Program& p, const FuncDecl& f) {
  Collector c(p, f);
  c.run();
  std::vector<std::pair<int, VectorAccess>> ordered;
  for (const auto& [name, u] : c.uses) {
    VectorAccess a;
    a.vector = name;
    if (!u.written && u.reductions.empty()) {
      a.kind = AccessKind::ReadOnly;
      a.indexed_by = u.read_index;
    } else if (u.written) {
      if (!u.reductions.empty()) mixed(name, f.name, "is both assigned and reduced", u.pos);
      if (u.read) mixed(name, f.name, "is both read and written", u.pos);
      a.kind = AccessKind::WriteOnly;
      a.indexed_by = u.update_index;
    } else {
      AccessOp op = op_of(u.reductions[0]);
      bool async = false;
      for (ReduceOp r : u.reductions) {
        if (op_of(r) != op) mixed(name, f.name, "is reduced with different operators", u.pos);
        if (r == ReduceOp::AsyncMin || r == ReduceOp::AsyncMax) async = true;
      }
      if (u.read) {
        // Reading a vector that is min/max-reduced in the same function only
        // converges under reordering, so it is treated as the async form.
        if (op == AccessOp::Sum) mixed(name, f.name, "is both read and sum-reduced", u.pos);
        async = true;
      }
      a.kind = async ? AccessKind::AsyncReduction : AccessKind::Reduction;
      a.op = op;
      a.indexed_by = u.update_index;
    }
    ordered.emplace_back(u.order, std::move(a));
  }
  std::sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  AccessMap out;
  for (auto& [order, a] : ordered) out.push_back(std::move(a));
  return out;
}

namespace {

// Finds `vec[param] == C` among the top-level conjuncts of the filter's output assignment.
std::optional<Expr> claim_sentinel(const Program& p, const FuncDecl& filter, const std::string& vec) {
  if (!filter.output || filter.params.empty()) return std::nullopt;
  const std::string& v = filter.params[0].name;
  auto is_target = [&](const Expr& e) {
    return e.kind == ExprKind::Index && e.args[0].is_ident(vec) && e.args[1].is_ident(v);
  };
  auto is_constant = [&](const Expr& e) {
    if (e.kind == ExprKind::IntLit || e.kind == ExprKind::FloatLit || e.kind == ExprKind::BoolLit) return true;
    if (e.kind == ExprKind::Ident) {
      const GlobalDecl* g = p.find_global(e.name);
      return g && g->is_const && g->type.kind == Type::Kind::Scalar;
    }
    return false;
  };
  std::optional<Expr> found;
  std::function<void(const Expr&)> scan = [&](const Expr& e) {
    if (e.kind == ExprKind::Binary && e.name == "and") {
      scan(e.args[0]);
      scan(e.args[1]);
    } else if (e.kind == ExprKind::Binary && e.name == "==") {
      if (is_target(e.args[0]) && is_constant(e.args[1])) found = e.args[1];
      if (is_target(e.args[1]) && is_constant(e.args[0])) found = e.args[0];
    }
  };
  for (const auto& s : filter.body) {
    if (s.kind == StmtKind::Assign && s.exprs[0].is_ident(filter.output->name)) scan(s.exprs[1]);
  }
  return found;
}

}  // namespace

AccessMap classify_chain_accesses(const Program& p, const ApplyChain& c) {
  const FuncDecl* apply = p.find_func(c.apply_func);
  if (!apply) throw Error(ErrorKind::TypeError, "unknown apply function " + c.apply_func);
  AccessMap out = classify_accesses(p, *apply);

  struct FilterInfo {
    const FuncDecl* f;
    bool dst_side;
  };
  std::vector<FilterInfo> filters;
  if (!c.src_filter.empty()) filters.push_back({p.find_func(c.src_filter), false});
  if (!c.dst_filter.empty()) filters.push_back({p.find_func(c.dst_filter), true});
  if (!c.edge_filter.empty()) filters.push_back({p.find_func(c.edge_filter), false});

  for (const auto& fi : filters) {
    if (!fi.f) throw Error(ErrorKind::TypeError, "unknown filter function");
    AccessMap fm = classify_accesses(p, *fi.f);
    for (const auto& fa : fm) {
      if (fa.kind != AccessKind::ReadOnly) {
        throw Error(ErrorKind::MixedAccessError,
                    "filter function " + fi.f->name + " may not update vector " + fa.vector, fi.f->pos);
      }
      VectorAccess* existing = nullptr;
      for (auto& a : out) {
        if (a.vector == fa.vector) existing = &a;
      }
      if (!existing) {
        out.push_back(fa);
        continue;
      }
      if (existing->kind == AccessKind::ReadOnly || existing->kind == AccessKind::AsyncReduction) continue;
      if (existing->kind == AccessKind::WriteOnly && existing->indexed_by == Endpoint::Dst && fi.dst_side) {
        if (auto sentinel = claim_sentinel(p, *fi.f, fa.vector)) {
          existing->kind = AccessKind::AsyncReduction;
          existing->op = AccessOp::Claim;
          existing->claim_sentinel = sentinel;
          continue;
        }
      }
      mixed(fa.vector, apply->name, "is updated while filter " + fi.f->name + " reads it", apply->pos);
    }
  }
  return out;
}

}  // namespace graphweave
