// catfin: Groebner bases over the rationals.
//
// Classic Buchberger completion with the standard pair filters (coprime
// leading terms; redundant-lcm chains) and sugar-degree pair selection,
// followed by full interreduction.  The reduced monic basis is unique for a
// given ideal and order, so it doubles as a canonical form: bases computed
// from permuted generator lists compare equal element-for-element.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "catfin/poly.hpp"

namespace catfin {

struct GroebnerBasis {
  MonomialOrder order = MonomialOrder::grevlex();
  // Reduced and monic, sorted ascending by leading monomial.
  std::vector<Poly> elems;
  // lcm of every coefficient denominator across elems (1 if empty).
  Integer denominatorLcm = 1;

  bool is_trivial_unit() const {  // basis of the unit ideal
    return elems.size() == 1 && elems[0].is_one();
  }
};

// Remainder of f on division by divisors (not required monic); deterministic:
// always reduces the current leading term by the first applicable divisor.
// The result has no term divisible by any divisor's leading monomial.
Poly normal_form(const Poly& f, const std::vector<Poly>& divisors);

// S(f, g) = lcm/lt(f)*f - lcm/lt(g)*g, the cancellation probe.
Poly s_polynomial(const Poly& f, const Poly& g);

GroebnerBasis buchberger(std::vector<Poly> gens, const MonomialOrder& order);

// A polynomial ideal with lazily cached reduced bases per order.
class Ideal {
 public:
  Ideal() : nvars_(0) {}
  Ideal(std::size_t nvars, std::vector<Poly> gens);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Poly>& gens() const { return gens_; }

  const GroebnerBasis& groebner(const MonomialOrder& order) const;

  // Membership via zero normal form against the grevlex basis.
  bool contains(const Poly& p) const;
  bool is_zero_ideal() const;
  bool is_proper() const;  // 1 not in the ideal

  // Krull dimension of the quotient ring: the largest number of variables
  // spanning no leading monomial of the reduced grevlex basis.
  // Pre: proper (throws ImproperIdeal otherwise).
  int dimension() const;

  bool equals(const Ideal& other) const;  // mutual membership of generators

 private:
  std::size_t nvars_;
  std::vector<Poly> gens_;
  mutable std::map<std::string, std::shared_ptr<const GroebnerBasis>> cache_;
};

// Generators of I intersected with the subring of the non-eliminated
// variables, computed from a block-order basis (eliminated block dominant).
// The result lives in the remaining variables, in their original relative
// order; `eliminate` flags the variables to remove.
Ideal elimination_ideal(const Ideal& ideal, const std::vector<char>& eliminate);

}  // namespace catfin
