#include "catfin/parse.hpp"

#include <cctype>
#include <cstddef>
#include <string>
#include <vector>

#include "catfin/error.hpp"

namespace catfin {
namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& vars, MonomialOrder ord)
      : text_(text), vars_(vars), ord_(std::move(ord)) {}

  Poly run() {
    skip_ws();
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size())
      fail(Errc::SyntaxError,
           "syntax error at position " + std::to_string(pos_) + ": unexpected '" +
               std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void bad(const std::string& what) const {
    fail(Errc::SyntaxError, "syntax error at position " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek_is(c)) return false;
    ++pos_;
    return true;
  }

  Poly expr() {
    bool negate = false;
    skip_ws();
    if (accept('-'))
      negate = true;
    else
      accept('+');
    Poly acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Poly factor() {
    skip_ws();
    if (pos_ >= text_.size()) bad("expected a factor");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) bad("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return rational_factor();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return variable_factor();
    bad("expected a factor");
  }

  Poly rational_factor() {
    std::string num = natural_digits();
    std::string den;
    if (accept('/')) {
      skip_ws();
      den = natural_digits();
      if (den.find_first_not_of('0') == std::string::npos) bad("zero denominator");
    }
    Rational q = den.empty() ? parse_rational(num) : parse_rational(num + "/" + den);
    return Poly::constant(q, vars_.size(), ord_);
  }

  std::string natural_digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) bad("expected a number");
    return text_.substr(start, pos_ - start);
  }

  Poly variable_factor() {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
        ++pos_;
      else
        break;
    }
    std::string name = text_.substr(start, pos_ - start);
    std::size_t var = vars_.size();
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) {
        var = i;
        break;
      }
    if (var == vars_.size()) fail(Errc::UnknownVariable, "unknown variable '" + name + "'");
    Exp exp = 1;
    if (accept('^')) {
      std::string digits = natural_digits();
      if (digits.size() > 9) bad("exponent too large");
      exp = static_cast<Exp>(std::stoul(digits));
    }
    Monomial m = Monomial::one(vars_.size());
    m.e[var] = exp;
    return Poly::term(Rational(1), std::move(m), vars_.size(), ord_);
  }

  const std::string& text_;
  const std::vector<std::string>& vars_;
  MonomialOrder ord_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_polynomial(const std::string& text, const std::vector<std::string>& vars,
                      MonomialOrder ord) {
  return Parser(text, vars, std::move(ord)).run();
}

}  // namespace catfin
