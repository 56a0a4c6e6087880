#include <cctype>

#include "prockit/error.hpp"
#include "prockit/expr.hpp"

namespace prockit {

namespace {

enum class Tok { Action, Var, LParen, RParen, LBrace, RBrace, Comma, Plus, Dot, Par, LeftMerge, CommMerge, Star, Omega, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

bool arg_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*' || c == ',' || c == '\'' || c == '#' ||
         c == '-';
}

class Lexer {
 public:
  Lexer(std::string_view text, bool aux) : text_(text), aux_(aux) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", line_, col_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        break;
      }
    }
  }

  void advance(std::size_t n) {
    pos_ += n;
    col_ += n;
  }

  bool starts(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  Token next() {
    std::size_t line = line_, col = col_;
    auto tok = [&](Tok k, std::size_t n) {
      std::string t(text_.substr(pos_, n));
      advance(n);
      return Token{k, t, line, col};
    };
    char c = text_[pos_];
    if (starts("||_")) {
      if (!aux_) fail("left merge is not allowed here");
      return tok(Tok::LeftMerge, 3);
    }
    if (starts("||")) return tok(Tok::Par, 2);
    if (c == '|') {
      if (!aux_) fail("communication merge is not allowed here");
      return tok(Tok::CommMerge, 1);
    }
    if (starts("^omega")) {
      if (pos_ + 6 < text_.size() && ident_char(text_[pos_ + 6])) fail("expected '^omega'");
      return tok(Tok::Omega, 6);
    }
    switch (c) {
      case '(':
        return tok(Tok::LParen, 1);
      case ')':
        return tok(Tok::RParen, 1);
      case '{':
        return tok(Tok::LBrace, 1);
      case '}':
        return tok(Tok::RBrace, 1);
      case ',':
        return tok(Tok::Comma, 1);
      case '+':
        return tok(Tok::Plus, 1);
      case '.':
        return tok(Tok::Dot, 1);
      case '*':
        return tok(Tok::Star, 1);
      default:
        break;
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      std::size_t n = 1;
      while (pos_ + n < text_.size() && ident_char(text_[pos_ + n])) ++n;
      return tok(Tok::Var, n);
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t n = 1;
      while (pos_ + n < text_.size() && ident_char(text_[pos_ + n])) ++n;
      std::string_view word = text_.substr(pos_, n);
      bool keyword = word == "encap" || word == "hide";
      if (!keyword && pos_ + n < text_.size() && text_[pos_ + n] == '(') {
        if (word == kTau || word == kDelta) fail("'" + std::string(word) + "' is reserved and cannot take arguments");
        int depth = 0;
        std::size_t i = pos_ + n;
        do {
          char d = i < text_.size() ? text_[i] : '\0';
          if (d == '(') {
            ++depth;
          } else if (d == ')') {
            --depth;
          } else if (!arg_char(d)) {
            col_ += i - pos_;
            fail(d == '\0' ? "unterminated action arguments" : "unexpected character in action arguments");
          }
          ++i;
        } while (depth > 0);
        return tok(Tok::Action, i - pos_);
      }
      return tok(Tok::Action, n);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  bool aux_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ExprPtr run() {
    ExprPtr e = alt();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    ++pos_;
  }

  ExprPtr alt() {
    ExprPtr e = mid();
    while (peek().kind == Tok::Plus) {
      ++pos_;
      e = Expr::alt(e, mid());
    }
    return e;
  }

  static bool mid_op(Tok k) {
    return k == Tok::Par || k == Tok::LeftMerge || k == Tok::CommMerge || k == Tok::Star;
  }

  ExprPtr mid() {
    ExprPtr e = seqt();
    if (!mid_op(peek().kind)) return e;
    Tok op = peek().kind;
    while (mid_op(peek().kind)) {
      if (peek().kind != op) fail("ambiguous same-precedence mix of '" + toks_[pos_].text + "'; add parentheses");
      ++pos_;
      ExprPtr r = seqt();
      switch (op) {
        case Tok::Par:
          e = Expr::par(e, r);
          break;
        case Tok::LeftMerge:
          e = Expr::left_merge(e, r);
          break;
        case Tok::CommMerge:
          e = Expr::comm_merge(e, r);
          break;
        default:
          e = Expr::star(e, r);
          break;
      }
    }
    return e;
  }

  ExprPtr seqt() {
    ExprPtr e = post();
    while (peek().kind == Tok::Dot) {
      ++pos_;
      e = Expr::seq(e, post());
    }
    return e;
  }

  ExprPtr post() {
    ExprPtr e = prim();
    while (peek().kind == Tok::Omega) {
      ++pos_;
      e = Expr::omega(e);
    }
    return e;
  }

  std::set<std::string> labelset() {
    expect(Tok::LBrace, "'{'");
    std::set<std::string> out;
    if (peek().kind == Tok::RBrace) {
      ++pos_;
      return out;
    }
    while (true) {
      if (peek().kind != Tok::Action) fail("expected an action in label set");
      if (peek().text == kTau) fail("tau cannot appear in a label set");
      if (peek().text == kDelta) fail("delta cannot appear in a label set");
      out.insert(take().text);
      if (peek().kind == Tok::Comma) {
        ++pos_;
        continue;
      }
      expect(Tok::RBrace, "',' or '}'");
      return out;
    }
  }

  ExprPtr prim() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Var:
        return Expr::var(take().text);
      case Tok::LParen: {
        ++pos_;
        ExprPtr e = alt();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Action: {
        if (t.text == "encap" || t.text == "hide") {
          bool is_encap = t.text == "encap";
          ++pos_;
          expect(Tok::LParen, "'(' after operator name");
          auto set = labelset();
          expect(Tok::Comma, "','");
          ExprPtr body = alt();
          expect(Tok::RParen, "')'");
          return is_encap ? Expr::encap(std::move(set), body) : Expr::hide(std::move(set), body);
        }
        std::string name = take().text;
        if (name == kTau) return Expr::tau();
        if (name == kDelta) return Expr::delta();
        return Expr::atom(name);
      }
      case Tok::End:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(std::string_view text, const ParseOptions& opts) {
  return Parser(Lexer(text, opts.allow_aux).run()).run();
}

}  // namespace prockit
