#include "logdiv/parser.hpp"

#include <cctype>
#include <sstream>

namespace logdiv {

ParseError::ParseError(const std::string& msg, int line, int column)
    : Error(msg + " at line " + std::to_string(line) + ", column " +
            std::to_string(column)),
      line(line),
      column(column) {}

namespace {

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  char advance() {
    char c = text_[pos_++];
    ++col_;
    return c;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, col_);
  }

  std::string identifier() {
    skip_ws();
    std::string s;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      s += advance();
    return s;
  }

  // Non-negative integer literal.
  mpz_class integer() {
    skip_ws();
    std::string s;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      s += advance();
    if (s.empty()) fail("expected integer");
    return mpz_class(s);
  }

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(const std::string& text, RingPtr ring)
      : lex_(text), ring_(std::move(ring)) {}

  Poly parse() {
    Poly p = expression();
    if (!lex_.eof()) lex_.fail("unexpected trailing input");
    return p;
  }

 private:
  Poly expression() {
    bool neg = false;
    if (lex_.peek() == '-') {
      lex_.advance();
      neg = true;
    } else if (lex_.peek() == '+') {
      lex_.advance();
    }
    Poly p = term();
    if (neg) p = -p;
    while (!lex_.eof()) {
      char c = lex_.peek();
      if (c == '+') {
        lex_.advance();
        p += term();
      } else if (c == '-') {
        lex_.advance();
        p -= term();
      } else {
        break;
      }
    }
    return p;
  }

  Poly term() {
    Poly p = factor();
    while (!lex_.eof() && lex_.peek() == '*') {
      lex_.advance();
      p *= factor();
    }
    return p;
  }

  Poly factor() {
    Poly base = atom();
    if (!lex_.eof() && lex_.peek() == '^') {
      lex_.advance();
      if (lex_.peek() == '-') lex_.fail("negative exponent");
      mpz_class e = lex_.integer();
      if (!e.fits_sint_p()) lex_.fail("exponent too large");
      base = base.pow(static_cast<int>(e.get_si()));
    }
    return base;
  }

  Poly atom() {
    char c = lex_.peek();
    if (c == '(') {
      lex_.advance();
      Poly p = expression();
      if (lex_.peek() != ')') lex_.fail("expected ')'");
      lex_.advance();
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = lex_.integer();
      if (!lex_.eof() && lex_.peek() == '/') {
        lex_.advance();
        mpz_class den = lex_.integer();
        if (den == 0) lex_.fail("zero denominator");
        Rat q(num, den);
        q.canonicalize();
        return Poly::constant(ring_, q);
      }
      return Poly::constant(ring_, Rat(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      int line = lex_.line(), col = lex_.col();
      std::string name = lex_.identifier();
      auto idx = ring_->index(name);
      if (!idx) throw ParseError("unknown variable '" + name + "'", line, col);
      return Poly::variable(ring_, *idx);
    }
    lex_.fail(std::string("unexpected character '") + c + "'");
  }

  Lexer lex_;
  RingPtr ring_;
};

}  // namespace

Poly parse_expression(const std::string& text, const RingPtr& ring) {
  return Parser(text, ring).parse();
}

std::vector<std::string> collect_variables(const std::string& text) {
  std::vector<std::string> vars;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        s += text[i++];
      bool seen = false;
      for (const auto& v : vars) seen = seen || v == s;
      if (!seen) vars.push_back(s);
    } else {
      ++i;
    }
  }
  return vars;
}

}  // namespace logdiv
