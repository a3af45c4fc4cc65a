#include "graphweave/transforms/transforms.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "graphweave/lang/chain.hpp"
#include "graphweave/lang/labels.hpp"

namespace graphweave {

int LayoutPlan::group_of(const std::string& vector) const {
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (std::find(groups[g].begin(), groups[g].end(), vector) != groups[g].end()) return static_cast<int>(g);
  }
  return -1;
}

namespace {

void rename_expr(Expr& e, const std::map<std::string, std::string>& names) {
  if (e.kind == ExprKind::Ident) {
    auto it = names.find(e.name);
    if (it != names.end()) e.name = it->second;
  }
  for (auto& a : e.args) rename_expr(a, names);
}

void rename_stmts(std::vector<Stmt>& body, const std::map<std::string, std::string>& names) {
  for_each_stmt(body, [&](Stmt& s) {
    for (auto& e : s.exprs) rename_expr(e, names);
    if (s.kind == StmtKind::VarDecl || s.kind == StmtKind::For || s.kind == StmtKind::Delete) {
      auto it = names.find(s.name);
      if (it != names.end()) s.name = it->second;
    }
  });
}

void clear_ids(std::vector<Stmt>& body) {
  for_each_stmt(body, [](Stmt& s) { s.id = -1; });
}

bool uses_name(const std::vector<Stmt>& body, const std::string& name) {
  bool found = false;
  for_each_stmt(body, [&](const Stmt& s) {
    if (s.name == name) found = true;
    for (const auto& e : s.exprs) {
      for_each_expr(e, [&](const Expr& x) {
        if (x.kind == ExprKind::Ident && x.name == name) found = true;
      });
    }
  });
  return found;
}

Stmt name_node(const std::string& label, std::vector<Stmt> body, SourcePos pos) {
  Stmt n;
  n.kind = StmtKind::NameNode;
  n.label = label;
  n.body = std::move(body);
  n.pos = pos;
  return n;
}

Stmt for_loop(const std::string& label, const std::string& var, Expr lo, Expr hi, std::vector<Stmt> body,
              SourcePos pos) {
  Stmt f;
  f.kind = StmtKind::For;
  f.label = label;
  f.name = var;
  f.exprs = {std::move(lo), std::move(hi)};
  f.body = std::move(body);
  f.pos = pos;
  return f;
}

std::string parent_path(const std::vector<std::string>& path) {
  std::string out;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (i) out += ":";
    out += path[i];
  }
  return out;
}

void require_for(const Stmt& s, const std::string& label) {
  if (s.kind != StmtKind::For) throw Error(ErrorKind::NotAForLoop, label + " is not a for loop", s.pos);
}

}  // namespace

void fuse_for_loops(Program& p, const std::string& l1, const std::string& l2, const std::string& fused) {
  StmtHandle h1 = resolve_label(p, l1);
  StmtHandle h2 = resolve_label(p, l2);
  require_for(h1.stmt(), l1);
  require_for(h2.stmt(), l2);
  if (h1.container != h2.container || h1.index == h2.index) {
    throw Error(ErrorKind::NonSiblingLoops, l1 + " and " + l2 + " are not sibling loops", h1.stmt().pos);
  }
  if (h2.index != h1.index + 1) {
    throw Error(ErrorKind::NonSiblingLoops, l1 + " and " + l2 + " are not adjacent", h2.stmt().pos);
  }
  std::vector<Stmt>& c = *h1.container;
  for (const auto& s : c) {
    if (s.label == fused) throw Error(ErrorKind::AmbiguousLabel, "label " + fused + " already exists", s.pos);
  }
  Stmt a = c[h1.index];
  Stmt b = c[h2.index];
  const std::string var = a.name;
  if (b.name != var) {
    if (uses_name(b.body, var)) {
      throw Error(ErrorKind::NonSiblingLoops, "loop variable " + var + " is captured in " + l2, b.pos);
    }
    rename_stmts(b.body, {{b.name, var}});
  }

  std::vector<Stmt> replacement;
  const bool same_range = a.exprs[0] == b.exprs[0] && a.exprs[1] == b.exprs[1];
  if (same_range) {
    replacement.push_back(for_loop(fused, var, a.exprs[0], a.exprs[1],
                                   {name_node(a.label, a.body, a.pos), name_node(b.label, b.body, b.pos)}, a.pos));
  } else {
    auto literal = [](const Expr& e) { return e.kind == ExprKind::IntLit; };
    if (!(a.exprs[0] == b.exprs[0] || (literal(a.exprs[0]) && literal(b.exprs[0]))) ||
        !(a.exprs[1] == b.exprs[1] || (literal(a.exprs[1]) && literal(b.exprs[1])))) {
      throw Error(ErrorKind::InvalidCombination, "ranges of " + l1 + " and " + l2 + " cannot be aligned", a.pos);
    }
    // Each side is either structurally equal or both literal.
    Expr lo = a.exprs[0];
    Expr hi = a.exprs[1];
    if (literal(a.exprs[0]) && literal(b.exprs[0])) {
      lo = Expr::int_lit(std::max(a.exprs[0].int_value, b.exprs[0].int_value));
    }
    if (literal(a.exprs[1]) && literal(b.exprs[1])) {
      hi = Expr::int_lit(std::min(a.exprs[1].int_value, b.exprs[1].int_value));
    }
    if (literal(lo) && literal(hi) && hi.int_value < lo.int_value) {
      throw Error(ErrorKind::InvalidCombination, "ranges of " + l1 + " and " + l2 + " do not overlap", a.pos);
    }
    // Prologue: the loop that starts earlier runs alone until the overlap.
    if (literal(a.exprs[0]) && literal(b.exprs[0]) && a.exprs[0].int_value != b.exprs[0].int_value) {
      const Stmt& early = a.exprs[0].int_value < b.exprs[0].int_value ? a : b;
      std::vector<Stmt> body{name_node(early.label, early.body, early.pos)};
      clear_ids(body);
      replacement.push_back(for_loop(fused + "_prologue", var, early.exprs[0], lo, std::move(body), a.pos));
    }
    replacement.push_back(for_loop(fused, var, lo, hi,
                                   {name_node(a.label, a.body, a.pos), name_node(b.label, b.body, b.pos)}, a.pos));
    if (literal(a.exprs[1]) && literal(b.exprs[1]) && a.exprs[1].int_value != b.exprs[1].int_value) {
      const Stmt& late = a.exprs[1].int_value > b.exprs[1].int_value ? a : b;
      std::vector<Stmt> body{name_node(late.label, late.body, late.pos)};
      clear_ids(body);
      replacement.push_back(for_loop(fused + "_epilogue", var, hi, late.exprs[1], std::move(body), a.pos));
    }
  }
  c.erase(c.begin() + static_cast<std::ptrdiff_t>(h1.index), c.begin() + static_cast<std::ptrdiff_t>(h2.index) + 1);
  c.insert(c.begin() + static_cast<std::ptrdiff_t>(h1.index), replacement.begin(), replacement.end());
  p.number_statements();
}

void split_for_loop(Program& p, const std::string& label, const std::string& la, const std::string& lb,
                    std::int64_t split) {
  StmtHandle h = resolve_label(p, label);
  require_for(h.stmt(), label);
  Stmt loop = h.stmt();
  const Expr& lo = loop.exprs[0];
  const Expr& hi = loop.exprs[1];
  if (lo.kind == ExprKind::IntLit && split < lo.int_value) {
    throw Error(ErrorKind::SplitOutOfRange,
                "split point " + std::to_string(split) + " is below the start of " + label, loop.pos);
  }
  if (hi.kind == ExprKind::IntLit && split > hi.int_value) {
    throw Error(ErrorKind::SplitOutOfRange,
                "split point " + std::to_string(split) + " is past the end of " + label, loop.pos);
  }
  for (const auto& s : *h.container) {
    if (&s != &h.stmt() && (s.label == la || s.label == lb)) {
      throw Error(ErrorKind::AmbiguousLabel, "label " + s.label + " already exists", s.pos);
    }
  }
  Expr mid = Expr::int_lit(split);
  // Non-literal bounds are clamped at run time.
  Expr a_hi = hi.kind == ExprKind::IntLit ? mid : Expr::call("min", {mid, hi});
  Expr b_lo = lo.kind == ExprKind::IntLit ? mid : Expr::call("max", {mid, lo});
  Stmt first = for_loop(la, loop.name, lo, a_hi, loop.body, loop.pos);
  Stmt second = for_loop(lb, loop.name, b_lo, hi, loop.body, loop.pos);
  first.id = loop.id;
  clear_ids(second.body);
  second.id = -1;
  std::vector<Stmt>& c = *h.container;
  std::size_t at = h.index;
  c[at] = std::move(first);
  c.insert(c.begin() + static_cast<std::ptrdiff_t>(at) + 1, std::move(second));
  p.number_statements();
}

void fuse_apply_functions(Program& p, const std::string& label1, const std::string& label2,
                          const std::string& fused_name) {
  StmtHandle h1 = resolve_label(p, label1);
  StmtHandle h2 = resolve_label(p, label2);
  if (h1.container == h2.container && h1.index == h2.index) {
    throw Error(ErrorKind::IncompatibleChains, "cannot fuse " + label1 + " with itself", h1.stmt().pos);
  }
  Expr* e1 = chain_expr_of(p, h1.stmt());
  Expr* e2 = chain_expr_of(p, h2.stmt());
  if (!e1) throw Error(ErrorKind::IncompatibleChains, label1 + " is not an edgeset traversal", h1.stmt().pos);
  if (!e2) throw Error(ErrorKind::IncompatibleChains, label2 + " is not an edgeset traversal", h2.stmt().pos);
  ApplyChain c1 = *extract_apply_chain(p, *e1);
  ApplyChain c2 = *extract_apply_chain(p, *e2);
  if (h2.stmt().kind != StmtKind::ExprStmt || c2.modified) {
    throw Error(ErrorKind::IncompatibleChains, label2 + " produces a frontier and cannot be removed",
                h2.stmt().pos);
  }
  ApplyChain cmp = c2;
  cmp.apply_func = c1.apply_func;
  if (!(cmp == c1)) {
    throw Error(ErrorKind::IncompatibleChains, label1 + " and " + label2 + " traverse with different clauses",
                h2.stmt().pos);
  }
  if (p.find_func(fused_name) || p.find_global(fused_name)) {
    throw Error(ErrorKind::TypeError, "name " + fused_name + " is already declared", h1.stmt().pos);
  }
  const FuncDecl* f1 = p.find_func(c1.apply_func);
  const FuncDecl* f2 = p.find_func(c2.apply_func);
  if (f1->params.size() != f2->params.size()) {
    throw Error(ErrorKind::IncompatibleChains, c1.apply_func + " and " + c2.apply_func + " take different parameters",
                f2->pos);
  }
  std::map<std::string, std::string> renames;
  for (std::size_t i = 0; i < f1->params.size(); ++i) {
    if (f1->params[i].type != f2->params[i].type) {
      throw Error(ErrorKind::IncompatibleChains,
                  c1.apply_func + " and " + c2.apply_func + " take different parameter types", f2->pos);
    }
    if (f1->params[i].name != f2->params[i].name) renames[f2->params[i].name] = f1->params[i].name;
  }
  std::set<std::string> taken;
  for (const auto& prm : f1->params) taken.insert(prm.name);
  for_each_stmt(f1->body, [&](const Stmt& s) {
    if (s.kind == StmtKind::VarDecl) taken.insert(s.name);
  });
  for_each_stmt(f2->body, [&](const Stmt& s) {
    if (s.kind == StmtKind::VarDecl && taken.count(s.name)) {
      std::string fresh = s.name;
      while (taken.count(fresh)) fresh += "_2";
      renames[s.name] = fresh;
      taken.insert(fresh);
    }
  });

  FuncDecl fused;
  fused.name = fused_name;
  fused.params = f1->params;
  fused.pos = f1->pos;
  fused.body = f1->body;
  std::vector<Stmt> tail = f2->body;
  rename_stmts(tail, renames);
  fused.body.insert(fused.body.end(), tail.begin(), tail.end());
  clear_ids(fused.body);

  // Retarget the first traversal: the chain's terminal call holds the function name.
  e1->args[1].name = fused_name;

  std::vector<std::string> parent = h2.path;
  std::vector<Stmt>& c = *h2.container;
  c.erase(c.begin() + static_cast<std::ptrdiff_t>(h2.index));
  if (parent.size() > 1) {
    StmtHandle ph = resolve_label(p, parent_path(parent));
    if (ph.stmt().kind == StmtKind::NameNode && ph.stmt().body.empty()) {
      ph.container->erase(ph.container->begin() + static_cast<std::ptrdiff_t>(ph.index));
    }
  }
  p.funcs.push_back(std::move(fused));
  p.number_statements();
}

void fuse_fields(const Program& p, LayoutPlan& layout, const std::vector<std::string>& vectors) {
  std::string kind;
  std::set<std::string> wanted;
  for (const auto& v : vectors) {
    const GlobalDecl* g = p.find_global(v);
    if (!g || g->type.kind != Type::Kind::Vector) throw Error(ErrorKind::UnknownVector, "unknown vector " + v);
    if (layout.group_of(v) >= 0 || !wanted.insert(v).second) {
      throw Error(ErrorKind::AlreadyFused, "vector " + v + " is already fused");
    }
    if (kind.empty()) {
      kind = g->type.element;
    } else if (kind != g->type.element) {
      throw Error(ErrorKind::MixedElementKinds,
                  "cannot fuse vectors of " + kind + " with " + v + " of " + g->type.element);
    }
  }
  std::vector<std::string> group;
  for (const auto* g : p.vector_decls()) {
    if (wanted.count(g->name)) group.push_back(g->name);
  }
  layout.groups.push_back(std::move(group));
}

void lower_vector_initializers(Program& p) {
  if (!p.main) return;
  std::vector<Stmt> prelude;
  for (auto& g : p.globals) {
    if (g.type.kind != Type::Kind::Vector || !g.init) continue;
    Expr init = *g.init;
    g.init.reset();
    const std::string v = "v";
    if (init.kind == ExprKind::Method && (init.name == "getOutDegrees" || init.name == "getInDegrees")) {
      init = Expr::method(init.args[0], init.name == "getOutDegrees" ? "getOutDegree" : "getInDegree",
                          {Expr::ident(v)});
    }
    FuncDecl f;
    f.name = "__init_" + g.name;
    f.params = {Param{v, Type::element_of(g.type.element)}};
    f.generated = true;
    f.pos = g.pos;
    Stmt assign;
    assign.kind = StmtKind::Assign;
    assign.exprs = {Expr::index(Expr::ident(g.name), Expr::ident(v)), std::move(init)};
    assign.pos = g.pos;
    f.body.push_back(std::move(assign));

    Stmt call;
    call.kind = StmtKind::ExprStmt;
    call.exprs = {Expr::method(Expr::ident(kAllVertices), "apply", {Expr::ident(f.name)})};
    call.pos = g.pos;
    prelude.push_back(std::move(call));
    p.funcs.push_back(std::move(f));
  }
  p.main->body.insert(p.main->body.begin(), prelude.begin(), prelude.end());
  p.number_statements();
}

}  // namespace graphweave
