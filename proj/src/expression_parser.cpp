#include "dualspace/expression_parser.hpp"

#include <cctype>
#include <charconv>

#include "dualspace/errors.hpp"
#include "dualspace/format.hpp"

namespace dualspace {

bool operator==(const Expression& x, const Expression& y) { return x.terms == y.terms; }

namespace {

bool is_word_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) != 0 || ch == '_';
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expression parse() {
    Expression e = parse_expr();
    skip_ws();
    if (!done()) fail("unexpected '" + std::string(1, peek()) + "'");
    return e;
  }

 private:
  bool done() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek())) != 0) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }

  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(message, line, column);
  }

  void expect(char ch) {
    skip_ws();
    if (peek() != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  Expression parse_expr() {
    Expression e;
    skip_ws();
    double sign = 1.0;
    if (peek() == '-') {
      sign = -1.0;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    e.terms.push_back(parse_term(sign));
    while (true) {
      skip_ws();
      if (peek() == '+') {
        sign = 1.0;
      } else if (peek() == '-') {
        sign = -1.0;
      } else {
        break;
      }
      ++pos_;
      e.terms.push_back(parse_term(sign));
    }
    return e;
  }

  ExpressionTerm parse_term(double sign) {
    skip_ws();
    if (done()) fail("expected a term");
    ExpressionTerm t;
    Complex value;
    if (try_coefficient(value)) {
      t.explicit_coeff = true;
      t.coeff = sign * value;
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        parse_body(t);
      }
    } else {
      t.coeff = sign;
      parse_body(t);
    }
    const std::size_t save = pos_;
    skip_ws();
    if (peek() == '+') {
      ++pos_;
      skip_ws();
      if (src_.substr(pos_, 4) == "h.c.") {
        pos_ += 4;
        t.add_conjugate = true;
        return t;
      }
    }
    pos_ = save;
    return t;
  }

  void parse_body(ExpressionTerm& t) {
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      t.group.push_back(parse_expr());
      expect(')');
      return;
    }
    t.factors.push_back(parse_factor());
    while (true) {
      const std::size_t save = pos_;
      skip_ws();
      if (peek() != '*') {
        pos_ = save;
        return;
      }
      ++pos_;
      skip_ws();
      t.factors.push_back(parse_factor());
    }
  }

  LadderSymbol parse_factor() {
    skip_ws();
    const std::size_t start = pos_;
    while (!done() && std::isalpha(static_cast<unsigned char>(peek())) != 0) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    LadderSymbol::Kind kind;
    if (name == "a") {
      kind = LadderSymbol::Kind::BosonAnnihilate;
    } else if (name == "ad") {
      kind = LadderSymbol::Kind::BosonCreate;
    } else if (name == "c") {
      kind = LadderSymbol::Kind::FermionAnnihilate;
    } else if (name == "cd") {
      kind = LadderSymbol::Kind::FermionCreate;
    } else if (name.empty()) {
      fail("expected an operator a, ad, c or cd");
    } else {
      fail_at("unknown operator '" + std::string(name) + "'", start);
    }
    expect('[');
    skip_ws();
    const std::size_t index_at = pos_;
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    const std::size_t digits = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek())) != 0) ++pos_;
    if (digits == pos_) fail("expected a mode index");
    long long index = 0;
    const auto res = std::from_chars(src_.data() + digits, src_.data() + pos_, index);
    if (res.ec != std::errc() || index > 1000000) fail_at("mode index out of range", index_at);
    if (negative || index == 0) fail_at("mode indices start at 1", index_at);
    expect(']');
    return {kind, static_cast<int>(index)};
  }

  bool parse_decimal(double& out) {
    const std::size_t start = pos_;
    if (peek() == '+' || peek() == '-') ++pos_;
    bool any = false;
    while (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
      ++pos_;
      any = true;
    }
    if (peek() == '.') {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
        ++pos_;
        any = true;
      }
    }
    if (!any) {
      pos_ = start;
      return false;
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look])) != 0) {
        pos_ = look;
        while (std::isdigit(static_cast<unsigned char>(peek())) != 0) ++pos_;
      }
    }
    std::size_t first = start;
    if (src_[first] == '+') ++first;
    const auto res = std::from_chars(src_.data() + first, src_.data() + pos_, out);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_) fail_at("bad number", start);
    return true;
  }

  bool try_coefficient(Complex& out) {
    const char ch = peek();
    if (std::isdigit(static_cast<unsigned char>(ch)) != 0 || ch == '.') {
      double x = 0.0;
      if (!parse_decimal(x)) fail("bad number");
      if (peek() == 'i' && !is_word_char(peek(1))) {
        ++pos_;
        out = Complex(0.0, x);
      } else {
        out = Complex(x, 0.0);
      }
      if (is_word_char(peek())) fail("unexpected '" + std::string(1, peek()) + "' after number");
      return true;
    }
    if (ch == 'i' && !is_word_char(peek(1))) {
      ++pos_;
      out = Complex(0.0, 1.0);
      return true;
    }
    if (ch == '(') {
      const std::size_t save = pos_;
      ++pos_;
      skip_ws();
      double re = 0.0, im = 0.0;
      if (parse_decimal(re)) {
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          skip_ws();
          if (!parse_decimal(im)) fail("expected the imaginary part");
          expect(')');
          out = Complex(re, im);
          return true;
        }
      }
      pos_ = save;
    }
    return false;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

std::string coefficient_text(Complex c) {
  if (c.imag() == 0.0) return format_double(c.real());
  return format_complex_coefficient(c);
}

std::string term_text(const ExpressionTerm& t, bool first) {
  Complex c = t.coeff;
  std::string out;
  if (c.imag() == 0.0 && (c.real() < 0.0 || std::signbit(c.real()))) {
    out = first ? "-" : " - ";
    c = -c;
  } else if (!first) {
    out = " + ";
  }
  std::string body;
  if (!t.group.empty()) {
    body = "(" + pretty_print(t.group.front()) + ")";
  } else {
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
      if (i > 0) body += "*";
      body += t.factors[i].to_string();
    }
  }
  if (t.explicit_coeff) {
    out += coefficient_text(c);
    if (!body.empty()) out += "*" + body;
  } else {
    out += body;
  }
  if (t.add_conjugate) out += " + h.c.";
  return out;
}

}  // namespace

Expression parse_expression(std::string_view src) { return Parser(src).parse(); }

std::string pretty_print(const Expression& expr) {
  std::string out;
  for (std::size_t i = 0; i < expr.terms.size(); ++i) out += term_text(expr.terms[i], i == 0);
  return out;
}

OperatorPolynomial expand(const Expression& expr) {
  OperatorPolynomial total;
  for (const auto& t : expr.terms) {
    OperatorPolynomial p;
    if (!t.group.empty()) {
      p = t.coeff * expand(t.group.front());
    } else if (!t.factors.empty()) {
      p = OperatorPolynomial::monomial(t.coeff, t.factors);
    } else {
      p = OperatorPolynomial::identity(t.coeff);
    }
    if (t.add_conjugate) p += p.hermitian_conjugate();
    total += p;
  }
  return total;
}

OperatorPolynomial parse_polynomial(std::string_view src) {
  return expand(parse_expression(src));
}

}  // namespace dualspace
