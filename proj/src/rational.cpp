#include "catfin/rational.hpp"

#include <cctype>

#include "catfin/error.hpp"

namespace catfin {

Rational parse_rational(const std::string& text) {
  std::size_t i = 0;
  auto bad = [&](const char* why) -> void {
    fail(Errc::SyntaxError, std::string("bad rational '") + text + "': " + why);
  };
  std::string num, den;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) num.push_back(text[i++]);
  std::size_t digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    num.push_back(text[i++]);
    ++digits;
  }
  if (digits == 0) bad("expected digits");
  if (i < text.size() && text[i] == '/') {
    ++i;
    if (i >= text.size()) bad("missing denominator");
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      den.push_back(text[i++]);
    if (den.empty()) bad("missing denominator");
  }
  if (i != text.size()) bad("trailing characters");
  Integer n(num, 10);
  Integer d = den.empty() ? Integer(1) : Integer(den, 10);
  if (d == 0) bad("zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string integer_to_string(const Integer& z) { return z.get_str(); }

std::uint64_t mod_ui(const Integer& z, std::uint64_t m) {
  Integer r;
  Integer mm(static_cast<unsigned long>(m));
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), mm.get_mpz_t());
  return r.get_ui();
}

std::uint64_t invert_mod(const Integer& z, std::uint64_t m) {
  Integer inv, mm(static_cast<unsigned long>(m));
  if (mpz_invert(inv.get_mpz_t(), z.get_mpz_t(), mm.get_mpz_t()) == 0)
    fail(Errc::NonInvertibleDenominator,
         integer_to_string(z) + " is not invertible modulo " + std::to_string(m));
  return inv.get_ui();
}

}  // namespace catfin
