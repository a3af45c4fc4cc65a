#include "graphweave/lang/parser.hpp"

#include <cstdlib>
#include <set>

namespace graphweave {

namespace {

int binary_precedence(TokenKind k, const Token& t) {
  switch (k) {
    case TokenKind::OrOr: return 1;
    case TokenKind::AndAnd: return 2;
    case TokenKind::Eq:
    case TokenKind::Ne:
    case TokenKind::Lt:
    case TokenKind::Le:
    case TokenKind::Gt:
    case TokenKind::Ge: return 4;
    case TokenKind::Plus:
    case TokenKind::Minus: return 5;
    case TokenKind::Star:
    case TokenKind::Slash: return 6;
    case TokenKind::Ident:
      if (t.text == "or") return 1;
      if (t.text == "and") return 2;
      return 0;
    default: return 0;
  }
}

std::string binary_name(const Token& t) {
  switch (t.kind) {
    case TokenKind::OrOr: return "or";
    case TokenKind::AndAnd: return "and";
    case TokenKind::Ident: return t.text;
    default: return t.text;
  }
}

class Parser {
 public:
  explicit Parser(const std::vector<Token>& toks) : toks_(toks) {
    eof_.kind = TokenKind::End;
    if (!toks_.empty()) eof_.pos = toks_.back().pos;
  }

  Program program() {
    Program p;
    while (!at_end() && !at_schedule_section()) {
      const Token& t = peek();
      if (t.kind == TokenKind::Ident && t.text == "element") {
        advance();
        ElementDecl e;
        e.pos = t.pos;
        e.name = expect(TokenKind::Ident, "element name").text;
        expect_keyword("end");
        p.elements.push_back(e);
      } else if (t.kind == TokenKind::Ident && t.text == "func") {
        FuncDecl f = func();
        if (f.name == "main") {
          if (p.main) throw Error(ErrorKind::SyntaxError, "duplicate main function", f.pos);
          p.main = std::move(f);
        } else {
          p.funcs.push_back(std::move(f));
        }
      } else {
        p.globals.push_back(global());
      }
    }
    p.number_statements();
    return p;
  }

  bool at_schedule_section() const {
    return pos_ + 1 < toks_.size() && toks_[pos_].kind == TokenKind::Ident &&
           toks_[pos_].text == "schedule" && toks_[pos_ + 1].kind == TokenKind::Colon;
  }

  std::size_t position() const { return pos_; }

  Schedule schedule() {
    Schedule s;
    if (at_schedule_section()) pos_ += 2;
    while (!at_end()) {
      expect_keyword("program");
      if (peek().kind != TokenKind::Arrow) fail("'->'");
      while (peek().kind == TokenKind::Arrow) {
        advance();
        const Token& name = expect(TokenKind::Ident, "scheduling function name");
        expect(TokenKind::LParen, "'('");
        std::vector<RawSchedArg> args;
        if (peek().kind != TokenKind::RParen) {
          args.push_back(sched_arg());
          while (peek().kind == TokenKind::Comma) {
            advance();
            args.push_back(sched_arg());
          }
        }
        expect(TokenKind::RParen, "')'");
        s.calls.push_back(build_schedule_call(name.text, args, name.pos));
      }
      expect(TokenKind::Semicolon, "';'");
    }
    return s;
  }

 private:
  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
  Token eof_;

  bool at_end() const { return pos_ >= toks_.size(); }

  const Token& peek(std::size_t k = 0) const {
    if (pos_ + k >= toks_.size()) return eof_;
    return toks_[pos_ + k];
  }

  const Token& advance() {
    const Token& t = peek();
    if (!at_end()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string got = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
    throw Error(ErrorKind::SyntaxError, "expected " + expected + ", found " + got, t.pos);
  }

  bool is_keyword(const std::string& kw, std::size_t k = 0) const {
    const Token& t = peek(k);
    return t.kind == TokenKind::Ident && t.text == kw;
  }

  const Token& expect(TokenKind kind, const std::string& what) {
    if (peek().kind != kind) fail(what);
    return advance();
  }

  void expect_keyword(const std::string& kw) {
    if (!is_keyword(kw)) fail("'" + kw + "'");
    advance();
  }

  RawSchedArg sched_arg() {
    RawSchedArg a;
    a.pos = peek().pos;
    if (peek().kind == TokenKind::String) {
      a.kind = RawSchedArg::Kind::String;
      a.text = advance().text;
    } else if (peek().kind == TokenKind::Int) {
      a.kind = RawSchedArg::Kind::Int;
      a.value = std::stoll(advance().text);
    } else if (peek().kind == TokenKind::Minus && peek(1).kind == TokenKind::Int) {
      advance();
      a.kind = RawSchedArg::Kind::Int;
      a.value = -std::stoll(advance().text);
    } else if (peek().kind == TokenKind::LBrace) {
      advance();
      a.kind = RawSchedArg::Kind::List;
      if (peek().kind != TokenKind::RBrace) {
        a.list.push_back(expect(TokenKind::String, "string").text);
        while (peek().kind == TokenKind::Comma) {
          advance();
          a.list.push_back(expect(TokenKind::String, "string").text);
        }
      }
      expect(TokenKind::RBrace, "'}'");
    } else {
      fail("string, integer or {list}");
    }
    return a;
  }

  ScalarType scalar_type() {
    const Token& t = expect(TokenKind::Ident, "scalar type");
    if (t.text == "int") return ScalarType::Int;
    if (t.text == "double" || t.text == "float") return ScalarType::Double;
    if (t.text == "bool") return ScalarType::Bool;
    throw Error(ErrorKind::SyntaxError, "expected scalar type, found '" + t.text + "'", t.pos);
  }

  Type type() {
    const Token& t = peek();
    if (t.kind != TokenKind::Ident) fail("type");
    if (t.text == "int" || t.text == "double" || t.text == "float" || t.text == "bool") {
      return Type::scalar_of(scalar_type());
    }
    advance();
    Type ty;
    if (t.text == "vertexset") {
      expect(TokenKind::LBrace, "'{'");
      ty = Type::vertexset_of(expect(TokenKind::Ident, "element kind").text);
      expect(TokenKind::RBrace, "'}'");
    } else if (t.text == "edgeset") {
      ty.kind = Type::Kind::EdgeSet;
      expect(TokenKind::LBrace, "'{'");
      ty.element = expect(TokenKind::Ident, "edge element kind").text;
      expect(TokenKind::RBrace, "'}'");
      expect(TokenKind::LParen, "'('");
      ty.src_kind = expect(TokenKind::Ident, "source element kind").text;
      expect(TokenKind::Comma, "','");
      ty.dst_kind = expect(TokenKind::Ident, "destination element kind").text;
      if (peek().kind == TokenKind::Comma) {
        advance();
        ScalarType w = scalar_type();
        if (w != ScalarType::Int) {
          throw Error(ErrorKind::TypeError, "edge weights must be int", t.pos);
        }
        ty.weighted = true;
      }
      expect(TokenKind::RParen, "')'");
    } else if (t.text == "vector") {
      expect(TokenKind::LBrace, "'{'");
      std::string kind = expect(TokenKind::Ident, "element kind").text;
      expect(TokenKind::RBrace, "'}'");
      expect(TokenKind::LParen, "'('");
      ScalarType s = scalar_type();
      expect(TokenKind::RParen, "')'");
      ty = Type::vector_of(kind, s);
    } else if (t.text == "list") {
      expect(TokenKind::LBrace, "'{'");
      Type inner = type();
      if (inner.kind != Type::Kind::VertexSet) {
        throw Error(ErrorKind::TypeError, "lists may only hold vertexsets", t.pos);
      }
      expect(TokenKind::RBrace, "'}'");
      ty.kind = Type::Kind::List;
      ty.element = inner.element;
    } else {
      ty = Type::element_of(t.text);
    }
    return ty;
  }

  GlobalDecl global() {
    GlobalDecl g;
    g.pos = peek().pos;
    if (is_keyword("const")) {
      advance();
      g.is_const = true;
    }
    g.name = expect(TokenKind::Ident, "declaration").text;
    expect(TokenKind::Colon, "':'");
    g.type = type();
    if (peek().kind == TokenKind::Assign) {
      advance();
      g.init = expr();
    }
    expect(TokenKind::Semicolon, "';'");
    return g;
  }

  FuncDecl func() {
    FuncDecl f;
    f.pos = peek().pos;
    expect_keyword("func");
    f.name = expect(TokenKind::Ident, "function name").text;
    expect(TokenKind::LParen, "'('");
    if (peek().kind != TokenKind::RParen) {
      f.params.push_back(param());
      while (peek().kind == TokenKind::Comma) {
        advance();
        f.params.push_back(param());
      }
    }
    expect(TokenKind::RParen, "')'");
    if (peek().kind == TokenKind::Arrow) {
      advance();
      f.output = param();
    }
    f.body = block({"end"});
    expect_keyword("end");
    return f;
  }

  Param param() {
    Param p;
    p.name = expect(TokenKind::Ident, "parameter name").text;
    expect(TokenKind::Colon, "':'");
    p.type = type();
    return p;
  }

  std::vector<Stmt> block(const std::set<std::string>& terminators) {
    std::vector<Stmt> out;
    while (true) {
      if (at_end()) fail("'end'");
      const Token& t = peek();
      if (t.kind == TokenKind::Ident && terminators.count(t.text)) break;
      out.push_back(stmt());
    }
    return out;
  }

  Stmt stmt() {
    Stmt s;
    s.pos = peek().pos;
    if (peek().kind == TokenKind::Label) s.label = advance().text;

    if (is_keyword("var")) {
      advance();
      s.kind = StmtKind::VarDecl;
      s.name = expect(TokenKind::Ident, "variable name").text;
      expect(TokenKind::Colon, "':'");
      s.type = type();
      if (peek().kind == TokenKind::Assign) {
        advance();
        s.exprs.push_back(expr());
      }
      expect(TokenKind::Semicolon, "';'");
    } else if (is_keyword("for")) {
      advance();
      s.kind = StmtKind::For;
      s.name = expect(TokenKind::Ident, "loop variable").text;
      expect_keyword("in");
      s.exprs.push_back(expr());
      expect(TokenKind::Colon, "':'");
      s.exprs.push_back(expr());
      s.body = block({"end"});
      expect_keyword("end");
    } else if (is_keyword("while")) {
      advance();
      s.kind = StmtKind::While;
      s.exprs.push_back(expr());
      s.body = block({"end"});
      expect_keyword("end");
    } else if (is_keyword("if")) {
      advance();
      if_rest(s);
    } else if (is_keyword("namenode")) {
      advance();
      s.kind = StmtKind::NameNode;
      if (s.label.empty()) throw Error(ErrorKind::SyntaxError, "namenode requires a label", s.pos);
      s.body = block({"end"});
      expect_keyword("end");
    } else if (is_keyword("delete")) {
      advance();
      s.kind = StmtKind::Delete;
      s.name = expect(TokenKind::Ident, "variable name").text;
      expect(TokenKind::Semicolon, "';'");
    } else if (is_keyword("print")) {
      advance();
      s.kind = StmtKind::Print;
      s.exprs.push_back(expr());
      expect(TokenKind::Semicolon, "';'");
    } else {
      Expr e = expr();
      TokenKind k = peek().kind;
      if (k == TokenKind::Assign) {
        advance();
        s.kind = StmtKind::Assign;
        s.exprs.push_back(std::move(e));
        s.exprs.push_back(expr());
      } else if (k == TokenKind::PlusAssign || k == TokenKind::MinAssign || k == TokenKind::MaxAssign ||
                 k == TokenKind::AsyncMinAssign || k == TokenKind::AsyncMaxAssign) {
        advance();
        s.kind = StmtKind::Reduce;
        s.op = k == TokenKind::PlusAssign       ? ReduceOp::Sum
               : k == TokenKind::MinAssign      ? ReduceOp::Min
               : k == TokenKind::MaxAssign      ? ReduceOp::Max
               : k == TokenKind::AsyncMinAssign ? ReduceOp::AsyncMin
                                                : ReduceOp::AsyncMax;
        s.exprs.push_back(std::move(e));
        s.exprs.push_back(expr());
      } else {
        s.kind = StmtKind::ExprStmt;
        s.exprs.push_back(std::move(e));
      }
      expect(TokenKind::Semicolon, "';'");
    }
    return s;
  }

  // Parses after `if`/`elif`; consumes the closing `end`.
  void if_rest(Stmt& s) {
    s.kind = StmtKind::If;
    s.exprs.push_back(expr());
    s.body = block({"end", "else", "elif"});
    if (is_keyword("elif")) {
      Stmt nested;
      nested.pos = advance().pos;
      if_rest(nested);
      s.else_body.push_back(std::move(nested));
      return;
    }
    if (is_keyword("else")) {
      advance();
      s.else_body = block({"end"});
    }
    expect_keyword("end");
  }

  Expr expr(int min_prec = 1) {
    Expr lhs = unary();
    while (true) {
      const Token& t = peek();
      int prec = binary_precedence(t.kind, t);
      if (prec == 0 || prec < min_prec) break;
      std::string op = binary_name(t);
      SourcePos pos = t.pos;
      advance();
      Expr rhs = expr(prec + 1);
      Expr b = Expr::binary(op, std::move(lhs), std::move(rhs));
      b.pos = pos;
      lhs = std::move(b);
    }
    return lhs;
  }

  Expr unary() {
    const Token& t = peek();
    if (t.kind == TokenKind::Minus) {
      SourcePos pos = advance().pos;
      Expr operand = unary();
      if (operand.kind == ExprKind::IntLit) {
        operand.int_value = -operand.int_value;
        operand.pos = pos;
        return operand;
      }
      if (operand.kind == ExprKind::FloatLit) {
        operand.float_value = -operand.float_value;
        operand.pos = pos;
        return operand;
      }
      Expr u;
      u.kind = ExprKind::Unary;
      u.name = "-";
      u.pos = pos;
      u.args.push_back(std::move(operand));
      return u;
    }
    if (t.kind == TokenKind::Not || (t.kind == TokenKind::Ident && t.text == "not")) {
      SourcePos pos = advance().pos;
      // `not` binds looser than comparisons: `not a == b` is `not (a == b)`.
      Expr operand = expr(3);
      Expr u;
      u.kind = ExprKind::Unary;
      u.name = "not";
      u.pos = pos;
      u.args.push_back(std::move(operand));
      return u;
    }
    return postfix();
  }

  std::vector<Expr> call_args() {
    std::vector<Expr> args;
    expect(TokenKind::LParen, "'('");
    if (peek().kind != TokenKind::RParen) {
      args.push_back(expr());
      while (peek().kind == TokenKind::Comma) {
        advance();
        args.push_back(expr());
      }
    }
    expect(TokenKind::RParen, "')'");
    return args;
  }

  Expr postfix() {
    Expr e = primary();
    while (true) {
      if (peek().kind == TokenKind::LBracket) {
        SourcePos pos = advance().pos;
        Expr idx = expr();
        expect(TokenKind::RBracket, "']'");
        Expr ix = Expr::index(std::move(e), std::move(idx));
        ix.pos = pos;
        e = std::move(ix);
      } else if (peek().kind == TokenKind::Dot) {
        advance();
        const Token& name = expect(TokenKind::Ident, "method name");
        std::vector<Expr> args = call_args();
        Expr m = Expr::method(std::move(e), name.text, std::move(args));
        m.pos = name.pos;
        e = std::move(m);
      } else {
        break;
      }
    }
    return e;
  }

  Expr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Int: {
        advance();
        Expr e = Expr::int_lit(std::stoll(t.text));
        e.pos = t.pos;
        return e;
      }
      case TokenKind::Float: {
        advance();
        Expr e = Expr::float_lit(std::strtod(t.text.c_str(), nullptr));
        e.pos = t.pos;
        return e;
      }
      case TokenKind::String: {
        advance();
        Expr e;
        e.kind = ExprKind::StringLit;
        e.name = t.text;
        e.pos = t.pos;
        return e;
      }
      case TokenKind::LParen: {
        advance();
        Expr e = expr();
        expect(TokenKind::RParen, "')'");
        return e;
      }
      case TokenKind::Ident: {
        if (t.text == "true" || t.text == "false") {
          advance();
          Expr e = Expr::bool_lit(t.text == "true");
          e.pos = t.pos;
          return e;
        }
        if (t.text == "new") {
          SourcePos pos = advance().pos;
          const Token& what = expect(TokenKind::Ident, "'vertexset' or 'list'");
          Expr e;
          e.pos = pos;
          if (what.text == "vertexset") {
            e.kind = ExprKind::NewVertexSet;
            expect(TokenKind::LBrace, "'{'");
            e.element = expect(TokenKind::Ident, "element kind").text;
            expect(TokenKind::RBrace, "'}'");
            e.args = call_args();
          } else if (what.text == "list") {
            e.kind = ExprKind::NewList;
            expect(TokenKind::LBrace, "'{'");
            Type inner = type();
            if (inner.kind != Type::Kind::VertexSet) {
              throw Error(ErrorKind::TypeError, "lists may only hold vertexsets", what.pos);
            }
            e.element = inner.element;
            expect(TokenKind::RBrace, "'}'");
            e.args = call_args();
          } else {
            throw Error(ErrorKind::SyntaxError, "expected 'vertexset' or 'list' after 'new'", what.pos);
          }
          return e;
        }
        advance();
        if (peek().kind == TokenKind::LParen) {
          Expr e = Expr::call(t.text, call_args());
          e.pos = t.pos;
          return e;
        }
        Expr e = Expr::ident(t.text);
        e.pos = t.pos;
        return e;
      }
      default: fail("expression");
    }
  }
};

}  // namespace

Program parse_program(const std::vector<Token>& tokens) {
  Parser p(tokens);
  Program prog = p.program();
  if (p.position() != tokens.size()) {
    throw Error(ErrorKind::SyntaxError, "unexpected schedule section", tokens[p.position()].pos);
  }
  return prog;
}

Schedule parse_schedule(const std::vector<Token>& tokens) {
  Parser p(tokens);
  return p.schedule();
}

ParsedSource parse_source(std::string_view text) {
  std::vector<Token> tokens = tokenize(text);
  Parser p(tokens);
  ParsedSource out;
  out.program = p.program();
  if (p.position() < tokens.size()) {
    out.has_schedule_section = true;
    std::vector<Token> rest(tokens.begin() + static_cast<std::ptrdiff_t>(p.position()), tokens.end());
    out.schedule = parse_schedule(rest);
  }
  return out;
}

Schedule parse_schedule_text(std::string_view text) { return parse_schedule(tokenize(text)); }

}  // namespace graphweave
