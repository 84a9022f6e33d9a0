// catfin: exact multivariate polynomials over the rationals.
//
// Variables are identified by position; names live in the layers above.
// A polynomial stores its terms sorted in strictly descending monomial
// order under the order object it carries, so the leading term is terms()
// .front() and structural equality of equal-order polynomials is term-wise
// equality.  Coefficient arithmetic is exact (GMP rationals) throughout.
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "catfin/error.hpp"
#include "catfin/rational.hpp"

namespace catfin {

using Exp = std::uint32_t;

struct Monomial {
  std::vector<Exp> e;  // exponent per variable

  static Monomial one(std::size_t nvars) { return Monomial{std::vector<Exp>(nvars, 0)}; }
  std::size_t nvars() const { return e.size(); }
  Exp degree() const;
  bool is_one() const;
  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;      // this | o
  Monomial quotient(const Monomial& d) const; // this / d (pre: d | this)
  bool coprime(const Monomial& o) const;
  static Monomial lcm(const Monomial& a, const Monomial& b);

  // Structural comparison only (container use); NOT a monomial order.
  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator<(const Monomial& o) const { return e < o.e; }
};

// A total degree-compatible-or-lex term order.  Variable significance is
// declaration order: variable 0 outranks variable 1, and so on.
//   grevlex : graded reverse lexicographic (the default everywhere)
//   lex     : pure lexicographic
//   block   : eliminated variables dominate; grevlex inside each block.
//             Any monomial touching an eliminated variable outranks every
//             monomial that avoids them, so basis elements free of the
//             eliminated block generate the intersection ideal.
class MonomialOrder {
 public:
  enum class Kind { Grevlex, Lex, Block };

  static MonomialOrder grevlex() { return MonomialOrder(Kind::Grevlex, {}); }
  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
  static MonomialOrder block(std::vector<char> eliminatedMask) {
    return MonomialOrder(Kind::Block, std::move(eliminatedMask));
  }

  Kind kind() const { return kind_; }
  const std::vector<char>& eliminated_mask() const { return elim_; }

  // three-way: negative a<b, zero equal, positive a>b
  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  // Stable identifier for caches ("grevlex", "lex", "block:0110").
  std::string key() const;
  bool operator==(const MonomialOrder& o) const {
    return kind_ == o.kind_ && elim_ == o.elim_;
  }

 private:
  MonomialOrder(Kind k, std::vector<char> elim) : kind_(k), elim_(std::move(elim)) {}
  Kind kind_;
  std::vector<char> elim_;
};

class Poly {
 public:
  using Term = std::pair<Monomial, Rational>;

  Poly() : nvars_(0), order_(MonomialOrder::grevlex()) {}
  static Poly zero(std::size_t nvars, MonomialOrder ord = MonomialOrder::grevlex());
  static Poly constant(const Rational& c, std::size_t nvars,
                       MonomialOrder ord = MonomialOrder::grevlex());
  static Poly variable(std::size_t i, std::size_t nvars,
                       MonomialOrder ord = MonomialOrder::grevlex());
  static Poly term(const Rational& c, Monomial m, std::size_t nvars,
                   MonomialOrder ord = MonomialOrder::grevlex());
  // Collects arbitrary (monomial, coefficient) pairs into canonical form.
  static Poly from_terms(std::vector<Term> raw, std::size_t nvars, MonomialOrder ord);

  std::size_t nvars() const { return nvars_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  Exp degree() const;  // total degree; 0 for the zero polynomial

  const Term& leading() const;  // pre: not zero

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Rational& c) const;
  // this - c * m * g, the basic reduction step.
  Poly fma_subtract(const Rational& c, const Monomial& m, const Poly& g) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Same term set under a different active order.
  Poly reordered(const MonomialOrder& ord) const;
  // Same terms with exponent rows mapped into a new variable space;
  // varMap[i] is the new index of old variable i.
  Poly remap_variables(const std::vector<std::size_t>& varMap, std::size_t newNvars,
                       const MonomialOrder& ord) const;

  Poly derivative(std::size_t var) const;

  // lcm of all coefficient denominators (1 for the zero polynomial).
  Integer denominator_lcm() const;
  // content-1 integer scaling with positive leading coefficient
  // (pre: not zero); the unique primitive integer associate.
  Poly primitive_integer_scaled() const;

 private:
  Poly(std::size_t nvars, MonomialOrder ord) : nvars_(nvars), order_(std::move(ord)) {}
  void sort_and_squash(std::vector<Term> raw);

  std::size_t nvars_;
  MonomialOrder order_;
  std::vector<Term> terms_;  // descending under order_, no zero coefficients
};

// Ring interfaces for generic evaluation.  An Ops type supplies the target
// ring's arithmetic; evaluate() never needs more than this.
struct RationalOps {
  using value_type = Rational;
  Rational zero() const { return Rational(0); }
  Rational embed(const Rational& q) const { return q; }
  Rational add(const Rational& a, const Rational& b) const { return a + b; }
  Rational mul(const Rational& a, const Rational& b) const { return a * b; }
};

struct IntegerOps {
  using value_type = Integer;
  Integer zero() const { return Integer(0); }
  // pre: q has denominator 1 (used on integer-scaled polynomials only)
  Integer embed(const Rational& q) const;
  Integer add(const Integer& a, const Integer& b) const { return a + b; }
  Integer mul(const Integer& a, const Integer& b) const { return a * b; }
};

// Substitution target: polynomials themselves form the ring, which makes
// evaluate() double as composition f(g1, ..., gn).
struct PolyOps {
  using value_type = Poly;
  std::size_t nvars;
  MonomialOrder ord;
  Poly zero() const { return Poly::zero(nvars, ord); }
  Poly embed(const Rational& q) const { return Poly::constant(q, nvars, ord); }
  Poly add(const Poly& a, const Poly& b) const { return a + b; }
  Poly mul(const Poly& a, const Poly& b) const { return a * b; }
};

// Evaluates p at `point` inside the ring described by `ops`.  Powers of the
// point coordinates are cached per variable, so each distinct exponent costs
// one ring multiplication.
template <class Ops>
typename Ops::value_type evaluate(const Poly& p,
                                  std::span<const typename Ops::value_type> point,
                                  const Ops& ops) {
  using R = typename Ops::value_type;
  if (point.size() != p.nvars())
    fail(Errc::InputError, "evaluate: point arity does not match variable count");
  // powers[i][k] = point[i]^(k+1)
  std::vector<std::vector<R>> powers(p.nvars());
  auto power = [&](std::size_t i, Exp k) -> const R& {
    auto& col = powers[i];
    if (col.empty()) col.push_back(point[i]);
    while (col.size() < k) col.push_back(ops.mul(col.back(), point[i]));
    return col[k - 1];
  };
  R acc = ops.zero();
  for (const auto& [mono, coeff] : p.terms()) {
    R termVal = ops.embed(coeff);
    for (std::size_t i = 0; i < mono.e.size(); ++i)
      if (mono.e[i] > 0) termVal = ops.mul(termVal, power(i, mono.e[i]));
    acc = ops.add(acc, termVal);
  }
  return acc;
}

// Composition helper: f with each variable replaced by images[i] (all images
// share nvars/order).  images.size() must equal f.nvars().
Poly substitute(const Poly& f, std::span<const Poly> images);

// Rendering used for documents, dedup keys and tests: terms in descending
// active order, e.g. "x^2 - 3/2*x*y + 1".  Round-trips through the parser.
std::string poly_to_string(const Poly& p, const std::vector<std::string>& varNames);

}  // namespace catfin
