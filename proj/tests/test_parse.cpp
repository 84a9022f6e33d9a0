#include <string>
#include <vector>

#include "catfin/error.hpp"
#include "catfin/parse.hpp"
#include "catfin/poly.hpp"
#include "doctest.h"

using namespace catfin;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> X{"x"};

Errc thrown_code(const std::string& text, const std::vector<std::string>& vars) {
  try {
    parse_polynomial(text, vars);
  } catch (const EngineError& e) {
    return e.code();
  }
  return Errc::InputError;  // sentinel: nothing thrown
}

}  // namespace

TEST_CASE("parse: three-term quadratic with fractional coefficient") {
  Poly p = parse_polynomial("x^2 - 3/2*x*y + 1", XY);
  REQUIRE(p.terms().size() == 3);
  CHECK(p.terms()[0].first.e == std::vector<Exp>{2, 0});
  CHECK(p.terms()[0].second == Rational(1));
  CHECK(p.terms()[1].first.e == std::vector<Exp>{1, 1});
  CHECK(p.terms()[1].second == Rational(-3, 2));
  CHECK(p.terms()[2].first.e == std::vector<Exp>{0, 0});
  CHECK(p.terms()[2].second == Rational(1));
}

TEST_CASE("parse: zero literal gives the zero polynomial") {
  CHECK(parse_polynomial("0", X).is_zero());
  CHECK(parse_polynomial("0*x + 0", X).is_zero());
}

TEST_CASE("parse: undeclared identifier is rejected by name") {
  CHECK(thrown_code("x + z", XY) == Errc::UnknownVariable);
  try {
    parse_polynomial("x + z", XY);
    FAIL("expected UnknownVariable");
  } catch (const EngineError& e) {
    CHECK(std::string(e.what()).find("'z'") != std::string::npos);
  }
}

TEST_CASE("parse: whitespace is insignificant") {
  CHECK(parse_polynomial("  x ^ 2+ y ", XY) == parse_polynomial("x^2+y", XY));
  CHECK(parse_polynomial("1 / 2 * x", X) == parse_polynomial("1/2*x", X));
}

TEST_CASE("parse: parentheses group subexpressions") {
  CHECK(parse_polynomial("(x+y)*(x-y)", XY) == parse_polynomial("x^2 - y^2", XY));
  CHECK(parse_polynomial("2*(x + 3)", X) == parse_polynomial("2*x + 6", X));
}

TEST_CASE("parse: leading sign applies to the first term") {
  CHECK(parse_polynomial("-x", X) == -parse_polynomial("x", X));
  CHECK(parse_polynomial("-x^2 + 1", X) == parse_polynomial("1 - x^2", X));
  CHECK(parse_polynomial("(-x)", X) == -parse_polynomial("x", X));
  CHECK(parse_polynomial("+x", X) == parse_polynomial("x", X));
}

TEST_CASE("parse: like terms are combined and cancellation drops terms") {
  CHECK(parse_polynomial("x + x", X) == parse_polynomial("2*x", X));
  CHECK(parse_polynomial("x - x", X).is_zero());
  CHECK(parse_polynomial("1/2*x + 1/3*x", X) == parse_polynomial("5/6*x", X));
}

TEST_CASE("parse: exponent edge cases") {
  CHECK(parse_polynomial("x^1", X) == parse_polynomial("x", X));
  CHECK(parse_polynomial("x^0", X).is_one());
  CHECK(parse_polynomial("x^3*x^4", X) == parse_polynomial("x^7", X));
}

TEST_CASE("parse: malformed input is a syntax error, not a crash") {
  CHECK(thrown_code("", X) == Errc::SyntaxError);
  CHECK(thrown_code("x +", X) == Errc::SyntaxError);
  CHECK(thrown_code("(x", X) == Errc::SyntaxError);
  CHECK(thrown_code("x ^", X) == Errc::SyntaxError);
  CHECK(thrown_code("x y", XY) == Errc::SyntaxError);
  CHECK(thrown_code("^2", X) == Errc::SyntaxError);
  CHECK(thrown_code("1/0", X) == Errc::SyntaxError);
  CHECK(thrown_code("x * * y", XY) == Errc::SyntaxError);
}

TEST_CASE("parse: syntax error reports the offending position") {
  try {
    parse_polynomial("x + $", X);
    FAIL("expected SyntaxError");
  } catch (const EngineError& e) {
    CHECK(e.code() == Errc::SyntaxError);
    CHECK(std::string(e.what()).find("position 4") != std::string::npos);
  }
}

TEST_CASE("parse: rendering round-trip") {
  for (const char* text : {"x^2 - 3/2*x*y + 1", "-x", "1 - x^2", "0", "7", "x*y",
                           "2/3*x^2*y^3 - y + 5"}) {
    Poly p = parse_polynomial(text, XY);
    Poly again = parse_polynomial(poly_to_string(p, XY), XY);
    CHECK(p == again);
  }
}
