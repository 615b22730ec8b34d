#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "teamlogic/errors.hpp"
#include "teamlogic/formula.hpp"

namespace teamlogic {

// Concrete syntax, loosest binding last:
//
//   unary   ~f  !p            (!: variables only)
//   f & g
//   f | g
//   f otimes g
//   f ovee g
//   f --> g                   (right associative)
//
//   atoms   p  !p  dep(xs; y)  dep(y)  ind(ps; qs; rs)  inc(ps; qs)  max(xs)
//
// Tuple elements are separated by commas or plain whitespace. The other
// binary connectives associate to the left. Keywords (dep ind inc max
// ovee otimes) are not variable names.

namespace detail {

enum class TokKind : std::uint8_t {
  Ident, Dep, Ind, Inc, Max, Ovee, Otimes, Arrow,
  LParen, RParen, Comma, Semi, Amp, Pipe, Bang, Tilde, End,
};

struct Token {
  TokKind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      std::size_t line = line_, col = column_;
      if (pos_ >= text_.size()) {
        out.push_back({TokKind::End, "", line, col});
        return out;
      }
      char c = text_[pos_];
      if (is_ident_start(c)) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance();
        std::string word(text_.substr(start, pos_ - start));
        out.push_back({keyword_kind(word), std::move(word), line, col});
        continue;
      }
      switch (c) {
        case '(': out.push_back({TokKind::LParen, "(", line, col}); advance(); continue;
        case ')': out.push_back({TokKind::RParen, ")", line, col}); advance(); continue;
        case ',': out.push_back({TokKind::Comma, ",", line, col}); advance(); continue;
        case ';': out.push_back({TokKind::Semi, ";", line, col}); advance(); continue;
        case '&': out.push_back({TokKind::Amp, "&", line, col}); advance(); continue;
        case '|': out.push_back({TokKind::Pipe, "|", line, col}); advance(); continue;
        case '!': out.push_back({TokKind::Bang, "!", line, col}); advance(); continue;
        case '~': out.push_back({TokKind::Tilde, "~", line, col}); advance(); continue;
        case '-':
          if (text_.substr(pos_).starts_with("-->")) {
            out.push_back({TokKind::Arrow, "-->", line, col});
            advance(); advance(); advance();
            continue;
          }
          throw ParseError("expected '-->'", line, col);
        default:
          throw ParseError(std::string("unexpected character '") + c + "'",
                           line, col);
      }
    }
  }

 private:
  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
  }
  static TokKind keyword_kind(std::string_view word) {
    if (word == "dep") return TokKind::Dep;
    if (word == "ind") return TokKind::Ind;
    if (word == "inc") return TokKind::Inc;
    if (word == "max") return TokKind::Max;
    if (word == "ovee") return TokKind::Ovee;
    if (word == "otimes") return TokKind::Otimes;
    return TokKind::Ident;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {  // comment to end of line
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula run() {
    Formula f = implication();
    expect(TokKind::End, "end of input");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[index_]; }
  Token take() { return tokens_[index_++]; }
  bool at(TokKind k) const { return peek().kind == k; }
  bool accept(TokKind k) {
    if (!at(k)) return false;
    ++index_;
    return true;
  }
  void expect(TokKind k, const char* what) {
    if (!accept(k))
      throw ParseError(std::string("expected ") + what + ", found '" +
                           describe(peek()) + "'",
                       peek().line, peek().column);
  }
  static std::string describe(const Token& t) {
    return t.kind == TokKind::End ? "end of input" : t.text;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message + ", found '" + describe(peek()) + "'",
                     peek().line, peek().column);
  }

  Formula implication() {
    Formula lhs = int_disjunction();
    if (accept(TokKind::Arrow)) return Formula::int_impl(lhs, implication());
    return lhs;
  }

  Formula int_disjunction() {
    Formula f = tensor_level();
    while (accept(TokKind::Ovee)) f = Formula::int_disj(f, tensor_level());
    return f;
  }

  Formula tensor_level() {
    Formula f = disjunction();
    while (accept(TokKind::Otimes)) f = Formula::tensor(f, disjunction());
    return f;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(TokKind::Pipe)) f = Formula::disj(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(TokKind::Amp)) f = Formula::conj(f, unary());
    return f;
  }

  Formula unary() {
    if (accept(TokKind::Tilde)) return Formula::class_neg(unary());
    if (accept(TokKind::Bang)) {
      if (!at(TokKind::Ident)) fail("'!' applies to variables only; expected a variable name");
      return Formula::neg_prop(PropSymbol(take().text));
    }
    return atom();
  }

  Formula atom() {
    const Token& t = peek();
    switch (t.kind) {
      case TokKind::Ident:
        return Formula::prop(PropSymbol(take().text));
      case TokKind::LParen: {
        take();
        Formula f = implication();
        expect(TokKind::RParen, "')'");
        return f;
      }
      case TokKind::Dep: return dep_atom();
      case TokKind::Ind: return ind_atom();
      case TokKind::Inc: return inc_atom();
      case TokKind::Max: return max_atom();
      default:
        fail("expected a formula");
    }
  }

  Formula dep_atom() {
    Token head = take();
    expect(TokKind::LParen, "'('");
    SymbolList first = tuple_maybe_empty();
    if (accept(TokKind::Semi)) {
      PropSymbol target = variable();
      expect(TokKind::RParen, "')'");
      return guarded(head, [&] { return Formula::dep(std::move(first), target); });
    }
    // dep(y): constancy shorthand.
    if (first.size() != 1)
      throw ParseError("dep needs 'dep(controls; target)' or 'dep(target)'",
                       head.line, head.column);
    expect(TokKind::RParen, "')'");
    return guarded(head, [&] { return Formula::dep({}, first[0]); });
  }

  Formula ind_atom() {
    Token head = take();
    expect(TokKind::LParen, "'('");
    SymbolList cond = tuple_maybe_empty();
    expect(TokKind::Semi, "';'");
    SymbolList left = tuple_maybe_empty();
    expect(TokKind::Semi, "';'");
    SymbolList right = tuple_maybe_empty();
    expect(TokKind::RParen, "')'");
    return guarded(head, [&] {
      return Formula::indep(std::move(cond), std::move(left), std::move(right));
    });
  }

  Formula inc_atom() {
    Token head = take();
    expect(TokKind::LParen, "'('");
    SymbolList left = tuple_maybe_empty();
    expect(TokKind::Semi, "';'");
    SymbolList right = tuple_maybe_empty();
    expect(TokKind::RParen, "')'");
    return guarded(head, [&] {
      return Formula::incl(std::move(left), std::move(right));
    });
  }

  Formula max_atom() {
    Token head = take();
    expect(TokKind::LParen, "'('");
    SymbolList symbols = tuple_maybe_empty();
    expect(TokKind::RParen, "')'");
    return guarded(head, [&] { return Formula::maximal(std::move(symbols)); });
  }

  // Arity and distinctness errors from factories, rethrown with a position.
  template <typename MakeFn>
  Formula guarded(const Token& head, MakeFn&& make) {
    try {
      return make();
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), head.line, head.column);
    }
  }

  PropSymbol variable() {
    if (!at(TokKind::Ident)) fail("expected a variable name");
    return PropSymbol(take().text);
  }

  SymbolList tuple_maybe_empty() {
    SymbolList out;
    if (!at(TokKind::Ident)) return out;
    out.push_back(PropSymbol(take().text));
    while (true) {
      if (accept(TokKind::Comma)) {
        if (!at(TokKind::Ident)) fail("expected a variable name after ','");
        out.push_back(PropSymbol(take().text));
      } else if (at(TokKind::Ident)) {
        out.push_back(PropSymbol(take().text));  // whitespace-separated
      } else {
        return out;
      }
    }
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

}  // namespace detail

inline Formula parse(std::string_view text) {
  detail::Lexer lexer(text);
  detail::Parser parser(lexer.run());
  return parser.run();
}

}  // namespace teamlogic
