#pragma once

// Concrete formula syntax: a hand-rolled recursive-descent parser and the
// matching printer.
//
//   formula     := orExpr
//   orExpr      := andExpr {"|" andExpr}
//   andExpr     := impExpr {"&" impExpr}
//   impExpr     := unExpr ["->" impExpr]
//   unExpr      := "!" unExpr | "X" unExpr | "F" unExpr | "G" unExpr
//                | "X~" unExpr | atomOrParen ["U" unExpr]
//   atomOrParen := ident | "true" | "false" | "#" | "(" formula ")"
//
// Notes that follow from the grammar: "&" and "|" chains associate to the
// right; "a -> b" is sugar for "!a | b" and is desugared while parsing;
// "U" is right-associative and its left operand is an atomOrParen, so
// "G a U b" reads as G(a U b) and "!a U b" as !(a U b) — write "(G a) U b"
// or "(!a) U b" to get the other reading.  The tokens "X~" and "#" belong
// to the obligation exchange inside the decentralised algorithm; they are
// recognised here so they can be rejected with a precise error, because
// input specifications must be past-free and sharp-free.

#include <cctype>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "formula.hpp"

namespace ltlmon {

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position(position) {}
  std::size_t position;
};

namespace detail {

struct Token {
  enum Kind {
    Ident,
    KwTrue,
    KwFalse,
    Bang,
    Amp,
    Bar,
    Arrow,
    LParen,
    RParen,
    OpNext,
    OpFinally,
    OpGlobally,
    OpUntil,
    OpPrev,   // "X~"
    HashTok,  // "#"
    End,
  };
  Kind kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Token::Kind k, std::size_t at, std::string text = "") {
    out.push_back(Token{k, std::move(text), at});
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t at = i;
    switch (c) {
      case '!': push(Token::Bang, at); ++i; continue;
      case '&': push(Token::Amp, at); ++i; continue;
      case '|': push(Token::Bar, at); ++i; continue;
      case '(': push(Token::LParen, at); ++i; continue;
      case ')': push(Token::RParen, at); ++i; continue;
      case '#': push(Token::HashTok, at); ++i; continue;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          push(Token::Arrow, at);
          i += 2;
          continue;
        }
        throw ParseError("stray '-'", at);
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                              s[j] == '_'))
        ++j;
      std::string word = s.substr(i, j - i);
      if (word == "X" && j < s.size() && s[j] == '~') {
        push(Token::OpPrev, at);
        i = j + 1;
        continue;
      }
      i = j;
      if (word == "true") push(Token::KwTrue, at);
      else if (word == "false") push(Token::KwFalse, at);
      else if (word == "X") push(Token::OpNext, at);
      else if (word == "F") push(Token::OpFinally, at);
      else if (word == "G") push(Token::OpGlobally, at);
      else if (word == "U") push(Token::OpUntil, at);
      else push(Token::Ident, at, std::move(word));
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }
  push(Token::End, s.size());
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const std::set<std::string>& alphabet)
      : toks_(std::move(toks)), alphabet_(alphabet) {}

  Formula run() {
    Formula f = or_expr();
    expect(Token::End, "unexpected trailing input");
    return f;
  }

 private:
  const Token& peek() const { return toks_[at_]; }
  Token take() { return toks_[at_++]; }
  void expect(Token::Kind k, const char* msg) {
    if (peek().kind != k) throw ParseError(msg, peek().pos);
    ++at_;
  }

  Formula or_expr() {
    std::vector<Formula> items{and_expr()};
    while (peek().kind == Token::Bar) {
      take();
      items.push_back(and_expr());
    }
    return disj_all(items);
  }

  Formula and_expr() {
    std::vector<Formula> items{imp_expr()};
    while (peek().kind == Token::Amp) {
      take();
      items.push_back(imp_expr());
    }
    return conj_all(items);
  }

  Formula imp_expr() {
    Formula a = un_expr();
    if (peek().kind == Token::Arrow) {
      take();
      Formula b = imp_expr();
      return Formula::disj(Formula::neg(a), b);
    }
    return a;
  }

  Formula un_expr() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Bang: take(); return Formula::neg(un_expr());
      case Token::OpNext: take(); return Formula::next(un_expr());
      case Token::OpFinally: take(); return Formula::eventually(un_expr());
      case Token::OpGlobally: take(); return Formula::always(un_expr());
      case Token::OpPrev:
        throw ParseError(
            "past operator 'X~' cannot appear in an input formula", t.pos);
      default: break;
    }
    Formula a = atom_or_paren();
    if (peek().kind == Token::OpUntil) {
      take();
      return Formula::until(a, un_expr());
    }
    return a;
  }

  Formula atom_or_paren() {
    Token t = take();
    switch (t.kind) {
      case Token::KwTrue: return Formula::tt();
      case Token::KwFalse: return Formula::ff();
      case Token::HashTok:
        throw ParseError("'#' cannot appear in an input formula", t.pos);
      case Token::Ident:
        if (!alphabet_.count(t.text))
          throw ParseError("unknown proposition '" + t.text + "'", t.pos);
        return Formula::atom(t.text);
      case Token::LParen: {
        Formula f = or_expr();
        expect(Token::RParen, "expected ')'");
        return f;
      }
      case Token::End: throw ParseError("unexpected end of input", t.pos);
      default: throw ParseError("expected a proposition or '('", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
  const std::set<std::string>& alphabet_;
};

}  // namespace detail

// Parses `text` against `alphabet`.  The result is past-free and sharp-free;
// unknown propositions and the internal tokens "X~" / "#" are rejected with
// the offending position.
inline Formula parse_formula(const std::string& text,
                             const std::set<std::string>& alphabet) {
  return detail::Parser(detail::lex(text), alphabet).run();
}

// Printing ------------------------------------------------------------------

namespace detail {

// A child that would re-lex as its own unExpr/atomOrParen needs no wrapping;
// binary operators do.
inline bool is_binary(const Formula& f) {
  Op o = f.op();
  return o == Op::And || o == Op::Or || o == Op::Until;
}

inline bool is_leaf_token(const Formula& f) {
  Op o = f.op();
  return o == Op::Atom || o == Op::True || o == Op::False || o == Op::Sharp;
}

inline void print_into(const Formula& f, std::string& out);

inline void print_wrapped(const Formula& f, bool wrap, std::string& out) {
  if (wrap) {
    out += '(';
    print_into(f, out);
    out += ')';
  } else {
    print_into(f, out);
  }
}

inline void print_unary(const char* tok, const Formula& kid,
                        std::string& out) {
  out += tok;
  if (is_binary(kid)) {
    print_wrapped(kid, true, out);
  } else {
    out += ' ';
    print_into(kid, out);
  }
}

inline void print_into(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::Sharp: out += '#'; return;
    case Op::Atom: out += f.name(); return;
    case Op::Prev:
      for (std::uint32_t i = 0; i < f.steps(); ++i) out += "X~ ";
      out += f.name();
      return;
    case Op::Not:
      out += '!';
      print_wrapped(f.lhs(), is_binary(f.lhs()), out);
      return;
    case Op::Next: print_unary("X", f.lhs(), out); return;
    case Op::Finally: print_unary("F", f.lhs(), out); return;
    case Op::Globally: print_unary("G", f.lhs(), out); return;
    case Op::Until:
      // The grammar allows only an atomOrParen on the left of "U".
      print_wrapped(f.lhs(), !is_leaf_token(f.lhs()), out);
      out += " U ";
      print_wrapped(f.rhs(), f.rhs().is(Op::And) || f.rhs().is(Op::Or), out);
      return;
    case Op::And:
      print_wrapped(f.lhs(), f.lhs().is(Op::Or), out);
      out += " & ";
      print_wrapped(f.rhs(), f.rhs().is(Op::Or), out);
      return;
    case Op::Or:
      print_into(f.lhs(), out);
      out += " | ";
      print_into(f.rhs(), out);
      return;
  }
}

}  // namespace detail

// Renders f with minimal parentheses; parse_formula(print_formula(f)) gives
// f back up to associativity normalisation (for past-free, sharp-free f).
inline std::string print_formula(const Formula& f) {
  std::string out;
  detail::print_into(f, out);
  return out;
}

}  // namespace ltlmon
