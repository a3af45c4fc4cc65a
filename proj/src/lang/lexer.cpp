#include "graphweave/lang/lexer.hpp"

#include <cctype>

namespace graphweave {

const char* token_kind_name(TokenKind k) {
  switch (k) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::Int: return "integer";
    case TokenKind::Float: return "float";
    case TokenKind::String: return "string";
    case TokenKind::Label: return "label";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Comma: return "','";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::Assign: return "'='";
    case TokenKind::PlusAssign: return "'+='";
    case TokenKind::MinAssign: return "'min='";
    case TokenKind::MaxAssign: return "'max='";
    case TokenKind::AsyncMinAssign: return "'asyncMin='";
    case TokenKind::AsyncMaxAssign: return "'asyncMax='";
    case TokenKind::Eq: return "'=='";
    case TokenKind::Ne: return "'!='";
    case TokenKind::Lt: return "'<'";
    case TokenKind::Le: return "'<='";
    case TokenKind::Gt: return "'>'";
    case TokenKind::Ge: return "'>='";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Slash: return "'/'";
    case TokenKind::Not: return "'!'";
    case TokenKind::AndAnd: return "'&&'";
    case TokenKind::OrOr: return "'||'";
    case TokenKind::End: return "end of input";
  }
  return "token";
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      if (at_end()) break;
      out.push_back(next());
    }
    return out;
  }

 private:
  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;

  bool at_end() const { return i_ >= src_.size(); }
  char peek(std::size_t k = 0) const { return i_ + k < src_.size() ? src_[i_ + k] : '\0'; }

  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_space_and_comments() {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '%' || (c == '/' && peek(1) == '/')) {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token make(TokenKind k, std::string text, SourcePos pos) { return Token{k, std::move(text), pos}; }

  Token next() {
    SourcePos pos{line_, col_};
    char c = peek();

    if (ident_start(c)) {
      std::string word;
      while (!at_end() && ident_char(peek())) {
        word += peek();
        advance();
      }
      if (peek() == '=' && peek(1) != '=') {
        TokenKind k = TokenKind::End;
        if (word == "min") k = TokenKind::MinAssign;
        else if (word == "max") k = TokenKind::MaxAssign;
        else if (word == "asyncMin") k = TokenKind::AsyncMinAssign;
        else if (word == "asyncMax") k = TokenKind::AsyncMaxAssign;
        if (k != TokenKind::End) {
          advance();
          return make(k, word + "=", pos);
        }
      }
      return make(TokenKind::Ident, word, pos);
    }

    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      std::string num;
      bool is_float = false;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        num += peek();
        advance();
      }
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        is_float = true;
        num += peek();
        advance();
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          num += peek();
          advance();
        }
      } else if (peek() == '.' && !ident_start(peek(1))) {
        // `1.` is a float literal; `1.foo` is not.
        is_float = true;
        num += peek();
        advance();
      }
      if (peek() == 'e' || peek() == 'E') {
        std::size_t k = 1;
        if (peek(k) == '+' || peek(k) == '-') ++k;
        if (std::isdigit(static_cast<unsigned char>(peek(k)))) {
          is_float = true;
          for (std::size_t j = 0; j < k; ++j) {
            num += peek();
            advance();
          }
          while (std::isdigit(static_cast<unsigned char>(peek()))) {
            num += peek();
            advance();
          }
        }
      }
      return make(is_float ? TokenKind::Float : TokenKind::Int, num, pos);
    }

    if (c == '"') {
      advance();
      std::string s;
      while (!at_end() && peek() != '"') {
        if (peek() == '\n') throw Error(ErrorKind::IllegalCharacter, "unterminated string literal", pos);
        s += peek();
        advance();
      }
      if (at_end()) throw Error(ErrorKind::IllegalCharacter, "unterminated string literal", pos);
      advance();
      return make(TokenKind::String, s, pos);
    }

    if (c == '#') {
      advance();
      std::string name;
      while (!at_end() && ident_char(peek())) {
        name += peek();
        advance();
      }
      if (name.empty() || peek() != '#') {
        throw Error(ErrorKind::IllegalCharacter, "'#' must form a label like #name#", pos);
      }
      advance();
      return make(TokenKind::Label, name, pos);
    }

    auto two = [&](char a, char b) { return peek() == a && peek(1) == b; };
    auto take = [&](TokenKind k, int len) {
      std::string text(src_.substr(i_, static_cast<std::size_t>(len)));
      for (int j = 0; j < len; ++j) advance();
      return make(k, text, pos);
    };

    if (two('-', '>')) return take(TokenKind::Arrow, 2);
    if (two('+', '=')) return take(TokenKind::PlusAssign, 2);
    if (two('=', '=')) return take(TokenKind::Eq, 2);
    if (two('!', '=')) return take(TokenKind::Ne, 2);
    if (two('<', '=')) return take(TokenKind::Le, 2);
    if (two('>', '=')) return take(TokenKind::Ge, 2);
    if (two('&', '&')) return take(TokenKind::AndAnd, 2);
    if (two('|', '|')) return take(TokenKind::OrOr, 2);

    switch (c) {
      case '(': return take(TokenKind::LParen, 1);
      case ')': return take(TokenKind::RParen, 1);
      case '{': return take(TokenKind::LBrace, 1);
      case '}': return take(TokenKind::RBrace, 1);
      case '[': return take(TokenKind::LBracket, 1);
      case ']': return take(TokenKind::RBracket, 1);
      case ',': return take(TokenKind::Comma, 1);
      case ';': return take(TokenKind::Semicolon, 1);
      case ':': return take(TokenKind::Colon, 1);
      case '.': return take(TokenKind::Dot, 1);
      case '=': return take(TokenKind::Assign, 1);
      case '<': return take(TokenKind::Lt, 1);
      case '>': return take(TokenKind::Gt, 1);
      case '+': return take(TokenKind::Plus, 1);
      case '-': return take(TokenKind::Minus, 1);
      case '*': return take(TokenKind::Star, 1);
      case '/': return take(TokenKind::Slash, 1);
      case '!': return take(TokenKind::Not, 1);
      default: break;
    }
    std::string shown(1, c);
    throw Error(ErrorKind::IllegalCharacter, "unexpected character '" + shown + "'", pos);
  }
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace graphweave
