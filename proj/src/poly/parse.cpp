#include <cctype>
#include <string>

#include "soscert/errors.hpp"
#include "soscert/polynomial.hpp"

namespace soscert {

namespace {

// Recursive descent over
//   expr   := [sign] term (sign term)*
//   term   := factor ('*'? factor)*      ('*' optional only after a number)
//   factor := number | name ['^' uint] | '(' expr ')' ['^' uint]
//   number := digits ['/' digits]
class Parser {
 public:
  Parser(std::string_view text, const VariableContext& ctx) : text_(text), ctx_(ctx) {}

  Polynomial run() {
    skip_space();
    if (at_end()) throw ParseError("empty expression", pos_);
    Polynomial p = expression();
    skip_space();
    if (!at_end()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  static bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  Polynomial expression() {
    Polynomial sum(ctx_);
    skip_space();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    while (true) {
      Polynomial t = term();
      sum = negative ? sum - t : sum + t;
      skip_space();
      if (peek() != '+' && peek() != '-') break;
      negative = peek() == '-';
      ++pos_;
    }
    return sum;
  }

  Polynomial term() {
    skip_space();
    bool after_number = std::isdigit(static_cast<unsigned char>(peek()));
    Polynomial product = factor();
    while (true) {
      skip_space();
      if (peek() == '*') {
        ++pos_;
        skip_space();
        after_number = std::isdigit(static_cast<unsigned char>(peek()));
        product = product * factor();
      } else if (after_number && (name_start(peek()) || peek() == '(')) {
        after_number = false;
        product = product * factor();
      } else {
        break;
      }
    }
    return product;
  }

  Polynomial factor() {
    skip_space();
    if (at_end()) throw ParseError("expected a factor, found end of input", pos_);
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return Polynomial::constant(ctx_, number());
    if (name_start(c)) {
      const auto start = pos_;
      while (!at_end() && name_char(text_[pos_])) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      const auto index = ctx_.index_of(name);
      if (index == ctx_.size()) throw ParseError("unknown variable '" + name + "'", start);
      return power(Polynomial::variable(ctx_, index));
    }
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      skip_space();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return power(inner);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Polynomial power(const Polynomial& base) {
    skip_space();
    if (peek() != '^') return base;
    ++pos_;
    skip_space();
    const auto start = pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("non-integer exponent", start);
    std::string digits;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
    if (peek() == '.' || peek() == '/') throw ParseError("non-integer exponent", start);
    if (digits.size() > 6) throw ParseError("exponent too large", start);
    return pow(base, static_cast<unsigned>(std::stoul(digits)));
  }

  Rational number() {
    const auto start = pos_;
    std::string digits;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
    if (peek() == '.') throw ParseError("decimal coefficients are not supported; use p/q", pos_);
    if (peek() == '/') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        throw ParseError("expected denominator after '/'", pos_);
      std::string den;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) den += text_[pos_++];
      Integer d(den);
      if (d == 0) throw ParseError("zero denominator", start);
      Rational q(Integer(digits), d);
      q.canonicalize();
      return q;
    }
    return Rational(Integer(digits));
  }

  std::string_view text_;
  const VariableContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse(std::string_view text, const VariableContext& ctx) { return Parser(text, ctx).run(); }

Polynomial parse(std::string_view text, std::vector<std::string> variables) {
  return parse(text, VariableContext(std::move(variables)));
}

}  // namespace soscert
