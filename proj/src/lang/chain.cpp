#include "graphweave/lang/chain.hpp"

#include <vector>

namespace graphweave {

namespace {

const Expr* chain_root(const Expr& e) {
  const Expr* cur = &e;
  while (cur->kind == ExprKind::Method) cur = &cur->args[0];
  return cur;
}

bool is_edgeset_global(const Program& p, const Expr& e) {
  if (e.kind != ExprKind::Ident) return false;
  const GlobalDecl* g = p.find_global(e.name);
  return g && g->type.kind == Type::Kind::EdgeSet;
}

const std::string& func_arg(const Expr& call, std::size_t i) {
  if (call.args.size() <= i || call.args[i].kind != ExprKind::Ident) {
    throw Error(ErrorKind::TypeError, call.name + " expects a function name", call.pos);
  }
  return call.args[i].name;
}

}  // namespace

std::optional<ApplyChain> extract_apply_chain(const Program& p, const Expr& e) {
  if (e.kind != ExprKind::Method) return std::nullopt;
  const Expr* root = chain_root(e);
  if (!is_edgeset_global(p, *root)) return std::nullopt;

  std::vector<const Expr*> calls;
  for (const Expr* cur = &e; cur->kind == ExprKind::Method; cur = &cur->args[0]) calls.push_back(cur);
  if (calls.size() == 1 && e.name != "apply" && e.name != "applyModified") {
    // Plain edgeset methods (getVertices, transpose, ...) are not traversals.
    return std::nullopt;
  }

  ApplyChain c;
  c.edgeset = root->name;
  bool terminated = false;
  for (auto it = calls.rbegin(); it != calls.rend(); ++it) {
    const Expr& call = **it;
    if (terminated) throw Error(ErrorKind::TypeError, "operator after apply in edgeset chain", call.pos);
    std::size_t nargs = call.args.size() - 1;
    auto one_arg = [&]() {
      if (nargs != 1) throw Error(ErrorKind::TypeError, call.name + " takes one argument", call.pos);
    };
    auto is_func = [&](const Expr& a) { return a.kind == ExprKind::Ident && p.find_func(a.name) != nullptr; };
    if (call.name == "from") {
      one_arg();
      if (is_func(call.args[1])) c.src_filter = call.args[1].name;
      else c.from_set = call.args[1];
    } else if (call.name == "to") {
      one_arg();
      if (is_func(call.args[1])) c.dst_filter = call.args[1].name;
      else c.to_set = call.args[1];
    } else if (call.name == "srcFilter") {
      one_arg();
      c.src_filter = func_arg(call, 1);
    } else if (call.name == "dstFilter") {
      one_arg();
      c.dst_filter = func_arg(call, 1);
    } else if (call.name == "filter") {
      one_arg();
      c.edge_filter = func_arg(call, 1);
    } else if (call.name == "apply") {
      one_arg();
      c.apply_func = func_arg(call, 1);
      terminated = true;
    } else if (call.name == "applyModified") {
      if (nargs < 2 || nargs > 3) throw Error(ErrorKind::TypeError, "applyModified takes 2 or 3 arguments", call.pos);
      c.apply_func = func_arg(call, 1);
      c.modified = true;
      c.tracked_vector = func_arg(call, 2);
      if (nargs == 3) {
        const Expr& flag = call.args[3];
        if (flag.kind != ExprKind::BoolLit) {
          throw Error(ErrorKind::TypeError, "applyModified's third argument must be a boolean literal", flag.pos);
        }
        c.dedup = !flag.bool_value;
      }
      terminated = true;
    } else {
      throw Error(ErrorKind::TypeError, "unknown edgeset operator " + call.name, call.pos);
    }
  }
  if (!terminated) {
    throw Error(ErrorKind::TypeError, "edgeset chain must end in apply or applyModified", e.pos);
  }
  return c;
}

namespace {

template <typename S, typename E>
E* chain_slot(const Program& p, S& s) {
  E* candidate = nullptr;
  switch (s.kind) {
    case StmtKind::ExprStmt: candidate = &s.exprs[0]; break;
    case StmtKind::VarDecl:
      if (!s.exprs.empty()) candidate = &s.exprs[0];
      break;
    case StmtKind::Assign: candidate = &s.exprs[1]; break;
    default: return nullptr;
  }
  if (!candidate || !extract_apply_chain(p, *candidate)) return nullptr;
  return candidate;
}

}  // namespace

const Expr* chain_expr_of(const Program& p, const Stmt& s) { return chain_slot<const Stmt, const Expr>(p, s); }
Expr* chain_expr_of(const Program& p, Stmt& s) { return chain_slot<Stmt, Expr>(p, s); }

}  // namespace graphweave
