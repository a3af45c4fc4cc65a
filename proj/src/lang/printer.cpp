#include "graphweave/lang/printer.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace graphweave {

const char* scalar_name(ScalarType t) {
  switch (t) {
    case ScalarType::Int: return "int";
    case ScalarType::Double: return "double";
    case ScalarType::Bool: return "bool";
  }
  return "int";
}

Type Type::scalar_of(ScalarType s) {
  Type t;
  t.kind = Kind::Scalar;
  t.scalar = s;
  return t;
}

Type Type::element_of(const std::string& name) {
  Type t;
  t.kind = Kind::Element;
  t.element = name;
  return t;
}

Type Type::vertexset_of(const std::string& kind) {
  Type t;
  t.kind = Kind::VertexSet;
  t.element = kind;
  return t;
}

Type Type::vector_of(const std::string& kind, ScalarType s) {
  Type t;
  t.kind = Kind::Vector;
  t.element = kind;
  t.scalar = s;
  return t;
}

std::string to_string(const Type& t) {
  switch (t.kind) {
    case Type::Kind::Void: return "void";
    case Type::Kind::Scalar: return scalar_name(t.scalar);
    case Type::Kind::Element: return t.element;
    case Type::Kind::VertexSet: return "vertexset{" + t.element + "}";
    case Type::Kind::EdgeSet:
      return "edgeset{" + t.element + "}(" + t.src_kind + "," + t.dst_kind + (t.weighted ? ",int" : "") + ")";
    case Type::Kind::Vector: return "vector{" + t.element + "}(" + scalar_name(t.scalar) + ")";
    case Type::Kind::List: return "list{vertexset{" + t.element + "}}";
    case Type::Kind::String: return "string";
  }
  return "?";
}

Expr Expr::int_lit(std::int64_t v) {
  Expr e;
  e.kind = ExprKind::IntLit;
  e.int_value = v;
  return e;
}

Expr Expr::float_lit(double v) {
  Expr e;
  e.kind = ExprKind::FloatLit;
  e.float_value = v;
  return e;
}

Expr Expr::bool_lit(bool v) {
  Expr e;
  e.kind = ExprKind::BoolLit;
  e.bool_value = v;
  return e;
}

Expr Expr::ident(const std::string& name) {
  Expr e;
  e.kind = ExprKind::Ident;
  e.name = name;
  return e;
}

Expr Expr::index(Expr base, Expr idx) {
  Expr e;
  e.kind = ExprKind::Index;
  e.args.push_back(std::move(base));
  e.args.push_back(std::move(idx));
  return e;
}

Expr Expr::call(const std::string& name, std::vector<Expr> args) {
  Expr e;
  e.kind = ExprKind::Call;
  e.name = name;
  e.args = std::move(args);
  return e;
}

Expr Expr::method(Expr receiver, const std::string& name, std::vector<Expr> args) {
  Expr e;
  e.kind = ExprKind::Method;
  e.name = name;
  e.args.push_back(std::move(receiver));
  for (auto& a : args) e.args.push_back(std::move(a));
  return e;
}

Expr Expr::binary(const std::string& op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = ExprKind::Binary;
  e.name = op;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  return e;
}

const char* reduce_token(ReduceOp op) {
  switch (op) {
    case ReduceOp::Sum: return "+=";
    case ReduceOp::Min: return "min=";
    case ReduceOp::Max: return "max=";
    case ReduceOp::AsyncMin: return "asyncMin=";
    case ReduceOp::AsyncMax: return "asyncMax=";
  }
  return "+=";
}

const GlobalDecl* Program::find_global(const std::string& name) const {
  for (const auto& g : globals) {
    if (g.name == name) return &g;
  }
  return nullptr;
}

const FuncDecl* Program::find_func(const std::string& name) const {
  for (const auto& f : funcs) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

FuncDecl* Program::find_func(const std::string& name) {
  for (auto& f : funcs) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

bool Program::has_element(const std::string& name) const {
  for (const auto& e : elements) {
    if (e.name == name) return true;
  }
  return false;
}

std::vector<const GlobalDecl*> Program::vector_decls() const {
  std::vector<const GlobalDecl*> out;
  for (const auto& g : globals) {
    if (g.type.kind == Type::Kind::Vector) out.push_back(&g);
  }
  return out;
}

std::vector<const GlobalDecl*> Program::set_decls() const {
  std::vector<const GlobalDecl*> out;
  for (const auto& g : globals) {
    if (g.type.kind == Type::Kind::VertexSet || g.type.kind == Type::Kind::EdgeSet) out.push_back(&g);
  }
  return out;
}

void Program::number_statements() {
  auto assign = [this](Stmt& s) {
    if (s.id < 0) s.id = next_stmt_id++;
  };
  for (auto& f : funcs) for_each_stmt(f.body, assign);
  if (main) for_each_stmt(main->body, assign);
}

namespace {

int precedence(const Expr& e) {
  if (e.kind == ExprKind::Binary) {
    const std::string& op = e.name;
    if (op == "or") return 1;
    if (op == "and") return 2;
    if (op == "==" || op == "!=" || op == "<" || op == "<=" || op == ">" || op == ">=") return 4;
    if (op == "+" || op == "-") return 5;
    return 6;
  }
  if (e.kind == ExprKind::Unary) return e.name == "not" ? 3 : 7;
  if ((e.kind == ExprKind::IntLit && e.int_value < 0) || (e.kind == ExprKind::FloatLit && e.float_value < 0)) {
    return 7;
  }
  return 8;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "1.0e308" : "-1.0e308";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // Shortest spelling that reparses exactly.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) {
      s = buf;
      break;
    }
  }
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string wrap(const Expr& child, int min_prec) {
  std::string s = print_expr(child);
  return precedence(child) < min_prec ? "(" + s + ")" : s;
}

std::string join_args(const std::vector<Expr>& args, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < args.size(); ++i) {
    if (i > from) out += ", ";
    out += print_expr(args[i]);
  }
  return out;
}

}  // namespace

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case ExprKind::IntLit: return std::to_string(e.int_value);
    case ExprKind::FloatLit: return format_double(e.float_value);
    case ExprKind::BoolLit: return e.bool_value ? "true" : "false";
    case ExprKind::StringLit: return "\"" + e.name + "\"";
    case ExprKind::Ident: return e.name;
    case ExprKind::Index: return wrap(e.args[0], 8) + "[" + print_expr(e.args[1]) + "]";
    case ExprKind::Call: return e.name + "(" + join_args(e.args, 0) + ")";
    case ExprKind::Method: return wrap(e.args[0], 8) + "." + e.name + "(" + join_args(e.args, 1) + ")";
    case ExprKind::Unary:
      if (e.name == "not") return "not " + wrap(e.args[0], 4);
      return "-" + wrap(e.args[0], 7);
    case ExprKind::Binary: {
      int p = precedence(e);
      return wrap(e.args[0], p) + " " + e.name + " " + wrap(e.args[1], p + 1);
    }
    case ExprKind::NewVertexSet: return "new vertexset{" + e.element + "}(" + join_args(e.args, 0) + ")";
    case ExprKind::NewList: return "new list{vertexset{" + e.element + "}}(" + join_args(e.args, 0) + ")";
  }
  return "";
}

std::string print_stmt(const Stmt& s, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
  std::string head = pad;
  if (!s.label.empty()) head += "#" + s.label + "# ";
  std::string out;
  auto body = [&](const std::vector<Stmt>& b) {
    std::string r;
    for (const auto& c : b) r += print_stmt(c, indent + 1);
    return r;
  };
  switch (s.kind) {
    case StmtKind::VarDecl:
      out = head + "var " + s.name + " : " + to_string(s.type);
      if (!s.exprs.empty()) out += " = " + print_expr(s.exprs[0]);
      return out + ";\n";
    case StmtKind::Assign: return head + print_expr(s.exprs[0]) + " = " + print_expr(s.exprs[1]) + ";\n";
    case StmtKind::Reduce:
      return head + print_expr(s.exprs[0]) + " " + reduce_token(s.op) + " " + print_expr(s.exprs[1]) + ";\n";
    case StmtKind::ExprStmt: return head + print_expr(s.exprs[0]) + ";\n";
    case StmtKind::For:
      return head + "for " + s.name + " in " + print_expr(s.exprs[0]) + ":" + print_expr(s.exprs[1]) + "\n" +
             body(s.body) + pad + "end\n";
    case StmtKind::While: return head + "while " + print_expr(s.exprs[0]) + "\n" + body(s.body) + pad + "end\n";
    case StmtKind::If:
      out = head + "if " + print_expr(s.exprs[0]) + "\n" + body(s.body);
      if (!s.else_body.empty()) out += pad + "else\n" + body(s.else_body);
      return out + pad + "end\n";
    case StmtKind::NameNode: return head + "namenode\n" + body(s.body) + pad + "end\n";
    case StmtKind::Delete: return head + "delete " + s.name + ";\n";
    case StmtKind::Print: return head + "print " + print_expr(s.exprs[0]) + ";\n";
  }
  return "";
}

namespace {

std::string print_func(const FuncDecl& f) {
  std::ostringstream os;
  os << "func " << f.name << "(";
  for (std::size_t i = 0; i < f.params.size(); ++i) {
    if (i) os << ", ";
    os << f.params[i].name << " : " << to_string(f.params[i].type);
  }
  os << ")";
  if (f.output) os << " -> " << f.output->name << " : " << to_string(f.output->type);
  os << "\n";
  for (const auto& s : f.body) os << print_stmt(s, 1);
  os << "end\n";
  return os.str();
}

}  // namespace

std::string print_program(const Program& p) {
  std::ostringstream os;
  for (const auto& e : p.elements) os << "element " << e.name << " end\n";
  if (!p.elements.empty()) os << "\n";
  for (const auto& g : p.globals) {
    if (g.is_const) os << "const ";
    os << g.name << " : " << to_string(g.type);
    if (g.init) os << " = " << print_expr(*g.init);
    os << ";\n";
  }
  if (!p.globals.empty()) os << "\n";
  for (const auto& f : p.funcs) os << print_func(f) << "\n";
  if (p.main) os << print_func(*p.main);
  return os.str();
}

}  // namespace graphweave
