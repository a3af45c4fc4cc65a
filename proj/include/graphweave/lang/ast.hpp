#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphweave/error.hpp"

namespace graphweave {

enum class ScalarType { Int, Double, Bool };

const char* scalar_name(ScalarType t);

struct Type {
  enum class Kind { Void, Scalar, Element, VertexSet, EdgeSet, Vector, List, String };

  Kind kind = Kind::Void;
  ScalarType scalar = ScalarType::Int;
  // Element: the element name. VertexSet/Vector/List: vertex element kind.
  // EdgeSet: the edge element kind.
  std::string element;
  std::string src_kind;
  std::string dst_kind;
  bool weighted = false;

  static Type scalar_of(ScalarType s);
  static Type element_of(const std::string& name);
  static Type vertexset_of(const std::string& kind);
  static Type vector_of(const std::string& kind, ScalarType s);

  bool is_numeric() const { return kind == Kind::Scalar && scalar != ScalarType::Bool; }
  bool is_bool() const { return kind == Kind::Scalar && scalar == ScalarType::Bool; }

  friend bool operator==(const Type&, const Type&) = default;
};

std::string to_string(const Type& t);

enum class ExprKind {
  IntLit,
  FloatLit,
  BoolLit,
  StringLit,
  Ident,
  Index,         // args = [base, index]
  Call,          // name(args)
  Method,        // args = [receiver, call args...]
  Unary,         // name = "-" | "not"; args = [operand]
  Binary,        // name = operator; args = [lhs, rhs]
  NewVertexSet,  // element = kind; args = [] or [size]
  NewList,       // element = vertex kind of the listed vertexsets
};

struct Expr {
  ExprKind kind = ExprKind::IntLit;
  std::string name;
  std::string element;
  std::int64_t int_value = 0;
  double float_value = 0.0;
  bool bool_value = false;
  std::vector<Expr> args;
  SourcePos pos;

  static Expr int_lit(std::int64_t v);
  static Expr float_lit(double v);
  static Expr bool_lit(bool v);
  static Expr ident(const std::string& name);
  static Expr index(Expr base, Expr idx);
  static Expr call(const std::string& name, std::vector<Expr> args);
  static Expr method(Expr receiver, const std::string& name, std::vector<Expr> args);
  static Expr binary(const std::string& op, Expr lhs, Expr rhs);

  bool is_ident(const std::string& n) const { return kind == ExprKind::Ident && name == n; }

  friend bool operator==(const Expr&, const Expr&) = default;
};

enum class ReduceOp { Sum, Min, Max, AsyncMin, AsyncMax };

const char* reduce_token(ReduceOp op);

enum class StmtKind {
  VarDecl,   // name, type, exprs = [] or [init]
  Assign,    // exprs = [target, value]
  Reduce,    // exprs = [target, value], op
  ExprStmt,  // exprs = [expr]
  For,       // name = loop var, exprs = [lo, hi], body
  While,     // exprs = [cond], body
  If,        // exprs = [cond], body, else_body
  NameNode,  // label, body
  Delete,    // name
  Print,     // exprs = [expr]
};

struct Stmt {
  StmtKind kind = StmtKind::ExprStmt;
  int id = -1;
  std::string label;
  std::string name;
  Type type;
  ReduceOp op = ReduceOp::Sum;
  std::vector<Expr> exprs;
  std::vector<Stmt> body;
  std::vector<Stmt> else_body;
  SourcePos pos;

  friend bool operator==(const Stmt&, const Stmt&) = default;
};

struct ElementDecl {
  std::string name;
  SourcePos pos;
  friend bool operator==(const ElementDecl&, const ElementDecl&) = default;
};

/// Top-level declaration: scalars, vertexsets, edgesets and vertex vectors.
struct GlobalDecl {
  std::string name;
  Type type;
  bool is_const = false;
  std::optional<Expr> init;
  SourcePos pos;
  friend bool operator==(const GlobalDecl&, const GlobalDecl&) = default;
};

struct Param {
  std::string name;
  Type type;
  friend bool operator==(const Param&, const Param&) = default;
};

struct FuncDecl {
  std::string name;
  std::vector<Param> params;
  std::optional<Param> output;
  std::vector<Stmt> body;
  bool generated = false;
  SourcePos pos;
  friend bool operator==(const FuncDecl&, const FuncDecl&) = default;
};

struct Program {
  std::vector<ElementDecl> elements;
  std::vector<GlobalDecl> globals;
  std::vector<FuncDecl> funcs;
  std::optional<FuncDecl> main;
  int next_stmt_id = 0;

  const GlobalDecl* find_global(const std::string& name) const;
  const FuncDecl* find_func(const std::string& name) const;
  FuncDecl* find_func(const std::string& name);
  bool has_element(const std::string& name) const;
  std::vector<const GlobalDecl*> vector_decls() const;
  std::vector<const GlobalDecl*> set_decls() const;

  /// Gives every statement without an id a fresh one.
  void number_statements();

  friend bool operator==(const Program&, const Program&) = default;
};

/// Walks every statement of a body recursively, parents before children.
template <typename Fn>
void for_each_stmt(std::vector<Stmt>& body, Fn&& fn) {
  for (auto& s : body) {
    fn(s);
    for_each_stmt(s.body, fn);
    for_each_stmt(s.else_body, fn);
  }
}

template <typename Fn>
void for_each_stmt(const std::vector<Stmt>& body, Fn&& fn) {
  for (const auto& s : body) {
    fn(s);
    for_each_stmt(s.body, fn);
    for_each_stmt(s.else_body, fn);
  }
}

template <typename Fn>
void for_each_expr(const Expr& e, Fn&& fn) {
  fn(e);
  for (const auto& a : e.args) for_each_expr(a, fn);
}

}  // namespace graphweave
