#include "nam/parse.hpp"

#include <cctype>
#include <vector>

namespace nam {

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::runtime_error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)),
      line(line),
      column(column) {}

namespace {

enum class Tok {
  LParen, RParen, LBrace, RBrace,
  Bar, Amp, Tilde, Dot, Eq, Arrow, DArrow,
  Var, In, ConstUS, ConstOM, ConstAT,
  KwT, KwF, KwN, KwA, KwE,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      int ln = line_, co = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", ln, co});
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c))) {
        out.push_back(word(ln, co));
        continue;
      }
      switch (c) {
        case '(': out.push_back(sym(Tok::LParen, ln, co)); break;
        case ')': out.push_back(sym(Tok::RParen, ln, co)); break;
        case '{': out.push_back(sym(Tok::LBrace, ln, co)); break;
        case '}': out.push_back(sym(Tok::RBrace, ln, co)); break;
        case '|': out.push_back(sym(Tok::Bar, ln, co)); break;
        case '&': out.push_back(sym(Tok::Amp, ln, co)); break;
        case '~': out.push_back(sym(Tok::Tilde, ln, co)); break;
        case '.': out.push_back(sym(Tok::Dot, ln, co)); break;
        case '=': out.push_back(sym(Tok::Eq, ln, co)); break;
        case '-':
          advance();
          if (pos_ < src_.size() && src_[pos_] == '>') {
            advance();
            out.push_back({Tok::Arrow, "->", ln, co});
          } else {
            throw ParseError("stray '-'", ln, co);
          }
          break;
        case '<':
          advance();
          if (pos_ + 1 < src_.size() && src_[pos_] == '-' && src_[pos_ + 1] == '>') {
            advance();
            advance();
            out.push_back({Tok::DArrow, "<->", ln, co});
          } else {
            throw ParseError("stray '<'", ln, co);
          }
          break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", ln, co);
      }
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  Token sym(Tok k, int ln, int co) {
    std::string t(1, src_[pos_]);
    advance();
    return {k, t, ln, co};
  }

  Token word(int ln, int co) {
    size_t start = pos_;
    while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) advance();
    std::string w(src_.substr(start, pos_ - start));
    if (std::islower(static_cast<unsigned char>(w[0]))) {
      for (char c : w) {
        if (!(std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c))))
          throw ParseError("bad variable name '" + w + "'", ln, co);
      }
      if (w == "in") return {Tok::In, w, ln, co};
      return {Tok::Var, w, ln, co};
    }
    if (w == "T") return {Tok::KwT, w, ln, co};
    if (w == "F") return {Tok::KwF, w, ln, co};
    if (w == "N") return {Tok::KwN, w, ln, co};
    if (w == "A") return {Tok::KwA, w, ln, co};
    if (w == "E") return {Tok::KwE, w, ln, co};
    if (w == "US") return {Tok::ConstUS, w, ln, co};
    if (w == "OM") return {Tok::ConstOM, w, ln, co};
    if (w == "AT") return {Tok::ConstAT, w, ln, co};
    throw ParseError("unknown symbol '" + w + "'", ln, co);
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(Lexer(src).run()) {}

  FormulaPtr formula_all() {
    auto f = p_iff();
    expect(Tok::End, "trailing input");
    return f;
  }

  TermPtr term_all() {
    auto t = p_term();
    expect(Tok::End, "trailing input");
    return t;
  }

  // True if the whole input is a single term.
  bool try_term_all(TermPtr* out) {
    size_t save = pos_;
    try {
      auto t = p_term();
      if (peek().kind == Tok::End) {
        *out = t;
        return true;
      }
    } catch (const ParseError&) {
    }
    pos_ = save;
    return false;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(msg + (t.text.empty() ? "" : " (got '" + t.text + "')"), t.line, t.col);
  }

  Token expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    return take();
  }

  FormulaPtr p_iff() {
    auto f = p_imp();
    while (peek().kind == Tok::DArrow) {
      take();
      f = iff(f, p_imp());
    }
    return f;
  }

  FormulaPtr p_imp() {
    std::vector<FormulaPtr> parts;
    parts.push_back(p_or());
    while (peek().kind == Tok::Arrow) {
      take();
      parts.push_back(p_or());
    }
    auto f = parts.back();
    for (size_t i = parts.size() - 1; i-- > 0;) f = implies(parts[i], f);
    return f;
  }

  FormulaPtr p_or() {
    auto f = p_and();
    while (peek().kind == Tok::Bar) {
      take();
      f = disj(f, p_and());
    }
    return f;
  }

  FormulaPtr p_and() {
    auto f = p_unary();
    while (peek().kind == Tok::Amp) {
      take();
      f = conj(f, p_unary());
    }
    return f;
  }

  FormulaPtr p_unary() {
    switch (peek().kind) {
      case Tok::Tilde:
        take();
        return neg(p_unary());
      case Tok::KwA: {
        take();
        auto v = expect(Tok::Var, "variable");
        expect(Tok::Dot, "'.'");
        return forall(v.text, p_unary());
      }
      case Tok::KwE: {
        take();
        auto v = expect(Tok::Var, "variable");
        expect(Tok::Dot, "'.'");
        return exists(v.text, p_unary());
      }
      default:
        return p_atom();
    }
  }

  FormulaPtr p_atom() {
    switch (peek().kind) {
      case Tok::LParen: {
        take();
        auto f = p_iff();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::KwT:
        take();
        return verum();
      case Tok::KwF:
        take();
        return falsum();
      case Tok::KwN: {
        take();
        expect(Tok::LParen, "'('");
        auto t = p_term();
        expect(Tok::RParen, "')'");
        return normal_atom(t);
      }
      default: {
        auto lhs = p_term();
        if (peek().kind == Tok::In) {
          take();
          return member_of(lhs, p_term());
        }
        if (peek().kind == Tok::Eq) {
          take();
          return equal_terms(lhs, p_term());
        }
        fail("expected 'in' or '='");
      }
    }
  }

  TermPtr p_term() {
    switch (peek().kind) {
      case Tok::Var:
        return mk_var(take().text);
      case Tok::ConstUS:
        take();
        return mk_const(ConstTag::US);
      case Tok::ConstOM:
        take();
        return mk_const(ConstTag::OM);
      case Tok::ConstAT:
        take();
        return mk_const(ConstTag::AT);
      case Tok::LBrace: {
        take();
        auto v = expect(Tok::Var, "variable");
        expect(Tok::Bar, "'|'");
        auto body = p_iff();
        expect(Tok::RBrace, "'}'");
        return mk_builder(v.text, body);
      }
      default:
        fail("expected a term");
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
  return Parser(text).formula_all();
}

TermPtr parse_term(std::string_view text) {
  return Parser(text).term_all();
}

std::variant<FormulaPtr, TermPtr> parse_any(std::string_view text) {
  Parser p(text);
  TermPtr t;
  if (p.try_term_all(&t)) return t;
  return Parser(text).formula_all();
}

}  // namespace nam
