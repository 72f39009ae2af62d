#pragma once

#include <cctype>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cfgsim/errors.hpp"

// Frontend for the mini-language: single int-valued functions over int
// and int[] parameters with assignments, if/else, while, for and return.
// All bitwise operators share one precedence level and all relational
// operators share another, so swapping an operator for its class partner
// never changes the shape of the parse tree.

namespace cfgsim {

enum class Tok {
  identifier, number,
  kw_int, kw_if, kw_else, kw_while, kw_for, kw_return,
  lparen, rparen, lbrace, rbrace, lbracket, rbracket, semicolon, comma,
  assign,
  plus, minus, star, slash, percent,
  lt, le, gt, ge, eq, ne,
  amp, pipe, caret,
  eof
};

struct Token {
  Tok kind;
  std::string text;
  int line = 1;
  int col = 1;
  std::size_t offset = 0;
};

inline bool is_binary_op(Tok t) {
  switch (t) {
    case Tok::plus: case Tok::minus: case Tok::star: case Tok::slash:
    case Tok::percent: case Tok::lt: case Tok::le: case Tok::gt:
    case Tok::ge: case Tok::eq: case Tok::ne: case Tok::amp:
    case Tok::pipe: case Tok::caret:
      return true;
    default:
      return false;
  }
}

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> tokens;
  int line = 1, col = 1;
  std::size_t i = 0;
  const std::size_t n = src.size();

  auto push = [&](Tok kind, std::size_t start, std::size_t len) {
    tokens.push_back({kind, src.substr(start, len), line,
                      col - static_cast<int>(i - start), start});
  };

  while (i < n) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    const std::size_t start = i;
    const int start_col = col;
    auto emit = [&](Tok kind, int len) {
      i += len;
      col += len;
      tokens.push_back({kind, src.substr(start, len), line, start_col, start});
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                       src[j] == '_'))
        ++j;
      const std::string word = src.substr(i, j - i);
      Tok kind = Tok::identifier;
      if (word == "int") kind = Tok::kw_int;
      else if (word == "if") kind = Tok::kw_if;
      else if (word == "else") kind = Tok::kw_else;
      else if (word == "while") kind = Tok::kw_while;
      else if (word == "for") kind = Tok::kw_for;
      else if (word == "return") kind = Tok::kw_return;
      emit(kind, static_cast<int>(j - i));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      emit(Tok::number, static_cast<int>(j - i));
      continue;
    }
    switch (c) {
      case '(': emit(Tok::lparen, 1); continue;
      case ')': emit(Tok::rparen, 1); continue;
      case '{': emit(Tok::lbrace, 1); continue;
      case '}': emit(Tok::rbrace, 1); continue;
      case '[': emit(Tok::lbracket, 1); continue;
      case ']': emit(Tok::rbracket, 1); continue;
      case ';': emit(Tok::semicolon, 1); continue;
      case ',': emit(Tok::comma, 1); continue;
      case '+': emit(Tok::plus, 1); continue;
      case '-': emit(Tok::minus, 1); continue;
      case '*': emit(Tok::star, 1); continue;
      case '/': emit(Tok::slash, 1); continue;
      case '%': emit(Tok::percent, 1); continue;
      case '&': emit(Tok::amp, 1); continue;
      case '|': emit(Tok::pipe, 1); continue;
      case '^': emit(Tok::caret, 1); continue;
      case '<':
        if (i + 1 < n && src[i + 1] == '=') emit(Tok::le, 2);
        else emit(Tok::lt, 1);
        continue;
      case '>':
        if (i + 1 < n && src[i + 1] == '=') emit(Tok::ge, 2);
        else emit(Tok::gt, 1);
        continue;
      case '=':
        if (i + 1 < n && src[i + 1] == '=') emit(Tok::eq, 2);
        else emit(Tok::assign, 1);
        continue;
      case '!':
        if (i + 1 < n && src[i + 1] == '=') {
          emit(Tok::ne, 2);
          continue;
        }
        throw ParseError("unexpected '!'", line, col);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'",
                         line, col);
    }
  }
  tokens.push_back({Tok::eof, "", line, col, n});
  return tokens;
}

// ---------------------------------------------------------------------------
// AST

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  enum class Kind { number, variable, index, binary };
  Kind kind;

  long long number = 0;          // Kind::number
  std::string name;              // variable / index base
  ExprPtr subscript;             // index
  std::string op;                // binary
  std::size_t op_offset = 0;     // byte offset of the operator token
  ExprPtr lhs, rhs;              // binary
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Stmt {
  enum class Kind { decl, assign, if_, while_, for_, return_ };
  Kind kind;
  int index = -1;  // source-order statement index; for clauses share the for's

  // decl / assign: name [subscript] = value
  std::string name;
  ExprPtr subscript;  // array store target, assign only
  ExprPtr value;      // nullptr for a bare decl

  // if_/while_/for_: condition and bodies
  ExprPtr cond;
  std::vector<StmtPtr> body;       // then-branch / loop body
  std::vector<StmtPtr> else_body;  // if_ only
  StmtPtr for_init, for_update;    // for_ only
};

struct Param {
  std::string name;
  bool is_array = false;
};

struct Function {
  std::string name;
  std::vector<Param> params;
  std::vector<StmtPtr> body;
  int statement_count = 0;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(const std::string& src) : tokens_(lex(src)) {}

  Function parse_function() {
    Function fn;
    expect(Tok::kw_int, "return type");
    fn.name = expect(Tok::identifier, "function name").text;
    expect(Tok::lparen, "'('");
    if (!at(Tok::rparen)) {
      for (;;) {
        Param p;
        expect(Tok::kw_int, "parameter type");
        if (at(Tok::lbracket)) {
          advance();
          expect(Tok::rbracket, "']'");
          p.is_array = true;
        }
        p.name = expect(Tok::identifier, "parameter name").text;
        for (const auto& q : fn.params)
          if (q.name == p.name)
            err("duplicate parameter '" + p.name + "'");
        fn.params.push_back(p);
        if (!at(Tok::comma)) break;
        advance();
      }
    }
    expect(Tok::rparen, "')'");
    fn.body = parse_block();
    expect(Tok::eof, "end of input (one function per program)");
    int next = 0;
    assign_indices(fn.body, next);
    fn.statement_count = next;
    return fn;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;

  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token advance() { return tokens_[pos_++]; }

  [[noreturn]] void err(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().col);
  }

  Token expect(Tok k, const std::string& what) {
    if (!at(k)) err("expected " + what + ", found '" + peek().text + "'");
    return advance();
  }

  std::vector<StmtPtr> parse_block() {
    expect(Tok::lbrace, "'{'");
    std::vector<StmtPtr> stmts;
    while (!at(Tok::rbrace)) {
      if (at(Tok::eof)) err("expected '}'");
      stmts.push_back(parse_stmt());
    }
    advance();
    return stmts;
  }

  StmtPtr parse_stmt() {
    if (at(Tok::kw_int)) {
      auto s = parse_simple();
      expect(Tok::semicolon, "';'");
      return s;
    }
    if (at(Tok::identifier)) {
      auto s = parse_simple();
      expect(Tok::semicolon, "';'");
      return s;
    }
    if (at(Tok::kw_if)) return parse_if();
    if (at(Tok::kw_while)) return parse_while();
    if (at(Tok::kw_for)) return parse_for();
    if (at(Tok::kw_return)) {
      advance();
      auto s = std::make_unique<Stmt>();
      s->kind = Stmt::Kind::return_;
      s->value = parse_expr();
      expect(Tok::semicolon, "';'");
      return s;
    }
    err("expected a statement");
  }

  // declaration with initializer or (array) assignment, without the ';'
  StmtPtr parse_simple() {
    auto s = std::make_unique<Stmt>();
    if (at(Tok::kw_int)) {
      advance();
      s->kind = Stmt::Kind::decl;
      s->name = expect(Tok::identifier, "variable name").text;
      if (at(Tok::assign)) {
        advance();
        s->value = parse_expr();
      }
      return s;
    }
    s->kind = Stmt::Kind::assign;
    s->name = expect(Tok::identifier, "assignment target").text;
    if (at(Tok::lbracket)) {
      advance();
      s->subscript = parse_expr();
      expect(Tok::rbracket, "']'");
    }
    expect(Tok::assign, "'='");
    s->value = parse_expr();
    return s;
  }

  StmtPtr parse_if() {
    advance();
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::if_;
    expect(Tok::lparen, "'('");
    s->cond = parse_expr();
    expect(Tok::rparen, "')'");
    s->body = parse_block();
    if (at(Tok::kw_else)) {
      advance();
      if (at(Tok::kw_if)) {
        s->else_body.push_back(parse_if());
      } else {
        s->else_body = parse_block();
      }
    }
    return s;
  }

  StmtPtr parse_while() {
    advance();
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::while_;
    expect(Tok::lparen, "'('");
    s->cond = parse_expr();
    expect(Tok::rparen, "')'");
    s->body = parse_block();
    return s;
  }

  StmtPtr parse_for() {
    advance();
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::for_;
    expect(Tok::lparen, "'('");
    s->for_init = parse_simple();
    expect(Tok::semicolon, "';'");
    s->cond = parse_expr();
    expect(Tok::semicolon, "';'");
    s->for_update = parse_simple();
    expect(Tok::rparen, "')'");
    s->body = parse_block();
    return s;
  }

  // Precedence, loosest first: bitwise (& | ^), equality (== !=),
  // relational (< <= > >=), additive (+ -), multiplicative (* / %).
  ExprPtr parse_expr() { return parse_level(0); }

  static int level_of(Tok t) {
    switch (t) {
      case Tok::amp: case Tok::pipe: case Tok::caret: return 0;
      case Tok::eq: case Tok::ne: return 1;
      case Tok::lt: case Tok::le: case Tok::gt: case Tok::ge: return 2;
      case Tok::plus: case Tok::minus: return 3;
      case Tok::star: case Tok::slash: case Tok::percent: return 4;
      default: return -1;
    }
  }

  ExprPtr parse_level(int level) {
    if (level > 4) return parse_primary();
    auto lhs = parse_level(level + 1);
    while (is_binary_op(peek().kind) && level_of(peek().kind) == level) {
      const Token op = advance();
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::binary;
      e->op = op.text;
      e->op_offset = op.offset;
      e->lhs = std::move(lhs);
      e->rhs = parse_level(level + 1);
      lhs = std::move(e);
    }
    return lhs;
  }

  ExprPtr parse_primary() {
    if (at(Tok::number)) {
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::number;
      e->number = std::stoll(advance().text);
      return e;
    }
    if (at(Tok::minus)) {  // negative literal only
      advance();
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::number;
      e->number = -std::stoll(expect(Tok::number, "number").text);
      return e;
    }
    if (at(Tok::identifier)) {
      auto e = std::make_unique<Expr>();
      e->name = advance().text;
      if (at(Tok::lbracket)) {
        advance();
        e->kind = Expr::Kind::index;
        e->subscript = parse_expr();
        expect(Tok::rbracket, "']'");
      } else {
        e->kind = Expr::Kind::variable;
      }
      return e;
    }
    if (at(Tok::lparen)) {
      advance();
      auto e = parse_expr();
      expect(Tok::rparen, "')'");
      return e;
    }
    err("expected an expression");
  }

  static void assign_indices(std::vector<StmtPtr>& stmts, int& next) {
    for (auto& s : stmts) {
      s->index = next++;
      if (s->kind == Stmt::Kind::if_) {
        assign_indices(s->body, next);
        assign_indices(s->else_body, next);
      } else if (s->kind == Stmt::Kind::while_ ||
                 s->kind == Stmt::Kind::for_) {
        assign_indices(s->body, next);
      }
    }
  }
};

// A named program in mini-language source form.
struct MiniProgram {
  std::string name;
  std::string source;
};

inline Function parse_program(const MiniProgram& p) {
  Parser parser(p.source);
  return parser.parse_function();
}

}  // namespace cfgsim
