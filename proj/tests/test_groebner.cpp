#include <algorithm>
#include <string>
#include <vector>

#include "catfin/error.hpp"
#include "catfin/groebner.hpp"
#include "catfin/parse.hpp"
#include "catfin/poly.hpp"
#include "doctest.h"

using namespace catfin;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

Poly P(const std::string& text, const std::vector<std::string>& vars,
       MonomialOrder ord = MonomialOrder::grevlex()) {
  return parse_polynomial(text, vars, ord);
}

// Twisted cubic curve (t, t^2, t^3) in ambient (x, y, z).
Ideal twisted_cubic() {
  return Ideal(3, {P("y - x^2", XYZ), P("z - x^3", XYZ)});
}

}  // namespace

TEST_CASE("buchberger: zero ideal has the empty basis") {
  GroebnerBasis b = buchberger({Poly::zero(1)}, MonomialOrder::grevlex());
  CHECK(b.elems.empty());
  CHECK(b.denominatorLcm == Integer(1));
  CHECK(buchberger({}, MonomialOrder::grevlex()).elems.empty());
}

TEST_CASE("buchberger: single reduced generator is its own basis") {
  // declaration order (y, x) makes y the most significant variable
  std::vector<std::string> yx{"y", "x"};
  GroebnerBasis b = buchberger({P("y - x^2", yx, MonomialOrder::lex())}, MonomialOrder::lex());
  REQUIRE(b.elems.size() == 1);
  CHECK(b.elems[0] == P("y - x^2", yx, MonomialOrder::lex()));
  CHECK(b.elems[0].leading().first.e == std::vector<Exp>{1, 0});
  CHECK(b.elems[0].leading().second == Rational(1));
}

TEST_CASE("buchberger: twisted cubic under an elimination-friendly lex order") {
  // declaration order (z, y, x): z > y > x
  std::vector<std::string> zyx{"z", "y", "x"};
  std::vector<Poly> gens{P("y - x^2", zyx, MonomialOrder::lex()),
                         P("z - x^3", zyx, MonomialOrder::lex())};
  GroebnerBasis b = buchberger(gens, MonomialOrder::lex());
  // hand pass: the single S-polynomial reduces to zero, so the input
  // (already interreduced and monic) is the reduced basis
  REQUIRE(b.elems.size() == 2);
  CHECK(b.elems[0] == P("y - x^2", zyx, MonomialOrder::lex()));
  CHECK(b.elems[1] == P("z - x^3", zyx, MonomialOrder::lex()));
}

TEST_CASE("buchberger: twisted cubic under default grevlex") {
  GroebnerBasis b = twisted_cubic().groebner(MonomialOrder::grevlex());
  // hand Buchberger pass:
  //   interreduce x^3 - z by x^2 - y  ->  xy - z
  //   S(x^2 - y, xy - z) -> y^2 - xz (new element)
  //   S(xy - z, y^2 - xz) -> reduces to 0; S(x^2 - y, y^2 - xz) coprime
  // ascending by leading term: y^2 < xy < x^2
  REQUIRE(b.elems.size() == 3);
  CHECK(b.elems[0] == P("y^2 - x*z", XYZ));
  CHECK(b.elems[1] == P("x*y - z", XYZ));
  CHECK(b.elems[2] == P("x^2 - y", XYZ));
  CHECK(b.denominatorLcm == Integer(1));
}

TEST_CASE("buchberger: unit ideal collapses to the basis {1}") {
  GroebnerBasis b = buchberger({P("x", XY), P("1 - x", XY)}, MonomialOrder::grevlex());
  REQUIRE(b.elems.size() == 1);
  CHECK(b.elems[0].is_one());
  CHECK(b.is_trivial_unit());
}

TEST_CASE("buchberger: monic normalization records the denominator lcm") {
  GroebnerBasis b =
      buchberger({P("1/6*x^2 - 1/4*y", XY)}, MonomialOrder::grevlex());
  REQUIRE(b.elems.size() == 1);
  CHECK(b.elems[0] == P("x^2 - 3/2*y", XY));
  CHECK(b.denominatorLcm == Integer(2));
}

TEST_CASE("s_polynomial cancels leading terms") {
  Poly f = P("x^2 - y", XYZ);
  Poly g = P("x*y - z", XYZ);
  CHECK(s_polynomial(f, g) == P("x*z - y^2", XYZ));
}

TEST_CASE("normal_form: frozen single-generator reductions") {
  std::vector<std::string> yx{"y", "x"};
  std::vector<Poly> basis{P("y - x^2", yx, MonomialOrder::lex())};
  CHECK(normal_form(P("x^2", yx, MonomialOrder::lex()), basis) ==
        P("x^2", yx, MonomialOrder::lex()));
  CHECK(normal_form(P("y", yx, MonomialOrder::lex()), basis) ==
        P("x^2", yx, MonomialOrder::lex()));
  CHECK(normal_form(Poly::zero(2, MonomialOrder::lex()), basis).is_zero());
}

TEST_CASE("normal_form: unique modulo a full basis, divisor order notwithstanding") {
  std::vector<Poly> fwd{P("y^2 - x*z", XYZ), P("x*y - z", XYZ), P("x^2 - y", XYZ)};
  std::vector<Poly> rev{fwd[2], fwd[1], fwd[0]};
  Poly p = P("x^2*y", XYZ);
  CHECK(normal_form(p, fwd) == P("x*z", XYZ));
  CHECK(normal_form(p, rev) == P("x*z", XYZ));
}

TEST_CASE("normal_form properties: idempotence and ideal membership of the difference") {
  Ideal I = twisted_cubic();
  const auto& basis = I.groebner(MonomialOrder::grevlex()).elems;
  for (const char* text : {"x^5", "x^2*y - z^2", "x*y*z + y^3", "1/2*y^2 + x", "z^4",
                           "x^3 - 3*x*y + 2*z - 7"}) {
    Poly p = P(text, XYZ);
    Poly nf = normal_form(p, basis);
    CHECK(normal_form(nf, basis) == nf);
    CHECK(I.contains(p - nf));
    // no term of the normal form is divisible by a basis leading term
    for (const auto& [m, c] : nf.terms())
      for (const auto& g : basis) CHECK(!g.leading().first.divides(m));
  }
}

TEST_CASE("ideal membership: frozen cases") {
  Ideal I(2, {P("y - x^2", XY)});
  CHECK(I.contains(P("y - x^2", XY)));
  CHECK(!I.contains(P("x", XY)));
  Ideal J(2, {P("x", XY), P("1 - x", XY)});
  CHECK(J.contains(P("1", XY)));
  CHECK(!J.is_proper());
  CHECK(I.is_proper());
}

TEST_CASE("buchberger: permuted generator lists give the identical reduced basis") {
  std::vector<Poly> gens{P("y - x^2", XYZ), P("z - x^3", XYZ), P("x*z - y^2", XYZ)};
  GroebnerBasis ref = buchberger(gens, MonomialOrder::grevlex());
  std::vector<std::size_t> idx{0, 1, 2};
  std::sort(idx.begin(), idx.end());
  do {
    std::vector<Poly> perm;
    for (std::size_t i : idx) perm.push_back(gens[i]);
    GroebnerBasis b = buchberger(perm, MonomialOrder::grevlex());
    REQUIRE(b.elems.size() == ref.elems.size());
    for (std::size_t i = 0; i < ref.elems.size(); ++i) CHECK(b.elems[i] == ref.elems[i]);
  } while (std::next_permutation(idx.begin(), idx.end()));
}

TEST_CASE("elimination: projecting the twisted cubic onto (y, z)") {
  Ideal I = twisted_cubic();
  Ideal E = elimination_ideal(I, {1, 0, 0});
  REQUIRE(E.nvars() == 2);
  std::vector<std::string> yz{"y", "z"};
  CHECK(E.equals(Ideal(2, {P("z^2 - y^3", yz)})));
  // generators avoid the eliminated variable by construction and, mapped
  // back into the ambient ring, lie in the original ideal
  for (const Poly& g : E.gens()) {
    Poly back = g.remap_variables({1, 2}, 3, MonomialOrder::grevlex());
    CHECK(I.contains(back));
  }
}

TEST_CASE("elimination: generator already free of the eliminated variable") {
  Ideal I(2, {P("y", XY)});
  Ideal E = elimination_ideal(I, {1, 0});
  REQUIRE(E.nvars() == 1);
  CHECK(E.equals(Ideal(1, {P("y", {"y"})})));
}

TEST_CASE("elimination: eliminating everything can leave the zero ideal") {
  Ideal I(1, {P("x - 1", {"x"})});
  Ideal E = elimination_ideal(I, {1});
  CHECK(E.nvars() == 0);
  CHECK(E.is_zero_ideal());
}

TEST_CASE("dimension: frozen values") {
  CHECK(Ideal(2, {}).dimension() == 2);
  CHECK(Ideal(2, {P("y - x^2", XY)}).dimension() == 1);
  CHECK(Ideal(2, {P("x", XY), P("y", XY)}).dimension() == 0);
  CHECK(twisted_cubic().dimension() == 1);
  CHECK(Ideal(2, {P("y^2 - x^3", XY)}).dimension() == 1);
  CHECK_THROWS_AS(Ideal(2, {P("1", XY)}).dimension(), EngineError);
}

TEST_CASE("dimension: matches an independent subset search on small ideals") {
  auto brute = [](const Ideal& I) {
    const auto& basis = I.groebner(MonomialOrder::grevlex()).elems;
    std::size_t n = I.nvars();
    int best = -1;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      bool independent = true;
      for (const Poly& g : basis) {
        bool supportInside = true;
        for (std::size_t v = 0; v < n; ++v)
          if (g.leading().first.e[v] > 0 && !(mask & (1u << v))) supportInside = false;
        if (supportInside) independent = false;
      }
      if (independent) best = std::max(best, static_cast<int>(__builtin_popcount(mask)));
    }
    return best;
  };
  std::vector<Ideal> corpus;
  corpus.push_back(Ideal(2, {}));
  corpus.push_back(Ideal(2, {P("y - x^2", XY)}));
  corpus.push_back(Ideal(2, {P("x", XY), P("y", XY)}));
  corpus.push_back(twisted_cubic());
  corpus.push_back(Ideal(3, {P("x*y", XYZ)}));
  corpus.push_back(Ideal(3, {P("x*y", XYZ), P("x*z", XYZ)}));
  corpus.push_back(Ideal(3, {P("x", XYZ)}));
  corpus.push_back(Ideal(1, {P("x^2", {"x"})}));
  for (const Ideal& I : corpus) CHECK(I.dimension() == brute(I));
}

TEST_CASE("ideal: equality is mutual membership, not structural") {
  Ideal a(2, {P("y - x^2", XY)});
  Ideal b(2, {P("2*y - 2*x^2", XY), P("x*y - x^3", XY)});
  CHECK(a.equals(b));
  CHECK(b.equals(a));
  CHECK(!a.equals(Ideal(2, {P("y", XY)})));
  CHECK(Ideal(2, {}).is_zero_ideal());
  CHECK(Ideal(2, {Poly::zero(2)}).is_zero_ideal());
}
