#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "graphweave/error.hpp"

namespace graphweave {

enum class TokenKind {
  Ident,
  Int,
  Float,
  String,
  Label,  // #name#
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Semicolon,
  Colon,
  Dot,
  Arrow,
  Assign,
  PlusAssign,
  MinAssign,
  MaxAssign,
  AsyncMinAssign,
  AsyncMaxAssign,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  Plus,
  Minus,
  Star,
  Slash,
  Not,
  AndAnd,
  OrOr,
  End,
};

const char* token_kind_name(TokenKind k);

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourcePos pos;
};

/// Comments run from `%` or `//` to the end of the line.
std::vector<Token> tokenize(std::string_view source);

}  // namespace graphweave
