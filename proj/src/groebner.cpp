#include "catfin/groebner.hpp"

#include <algorithm>
#include <cassert>

#include "catfin/error.hpp"

namespace catfin {

Poly normal_form(const Poly& f, const std::vector<Poly>& divisors) {
  Poly h = f;
  Poly one = Poly::constant(1, f.nvars(), f.order());
  std::vector<Poly::Term> remainder;
  while (!h.is_zero()) {
    const auto [lm, lc] = h.leading();
    bool reduced = false;
    for (const Poly& g : divisors) {
      if (g.is_zero()) continue;
      const auto& [glm, glc] = g.leading();
      if (!glm.divides(lm)) continue;
      h = h.fma_subtract(lc / glc, lm.quotient(glm), g);
      reduced = true;
      break;
    }
    if (!reduced) {
      // Leading term irreducible: move it to the remainder.  Successive
      // moved terms strictly decrease, so `remainder` stays sorted.
      remainder.emplace_back(lm, lc);
      h = h.fma_subtract(lc, lm, one);
    }
  }
  return Poly::from_terms(std::move(remainder), f.nvars(), f.order());
}

Poly s_polynomial(const Poly& f, const Poly& g) {
  assert(!f.is_zero() && !g.is_zero());
  const auto& [flm, flc] = f.leading();
  const auto& [glm, glc] = g.leading();
  Monomial l = Monomial::lcm(flm, glm);
  Poly zero = Poly::zero(f.nvars(), f.order());
  // lcm/lt(f) * f/lc(f) - lcm/lt(g) * g/lc(g): leading terms cancel exactly.
  return zero.fma_subtract(-1 / flc, l.quotient(flm), f)
      .fma_subtract(1 / glc, l.quotient(glm), g);
}

namespace {

struct Pair {
  std::size_t i, j;  // i < j, indices into the working basis
  Monomial lcm;
  Exp sugar;
  Exp lcmDegree;
};

// Selection key: smallest sugar, then smallest lcm degree, then indices.
// Total and input-deterministic.
bool pair_before(const Pair& a, const Pair& b) {
  if (a.sugar != b.sugar) return a.sugar < b.sugar;
  if (a.lcmDegree != b.lcmDegree) return a.lcmDegree < b.lcmDegree;
  if (a.j != b.j) return a.j < b.j;
  return a.i < b.i;
}

// Fully reduces h against basis, tracking the sugar degree of the result
// (max over the contributing reduction steps).
std::pair<Poly, Exp> reduce_with_sugar(Poly h, Exp sugar, const std::vector<Poly>& basis,
                                       const std::vector<Exp>& sugars) {
  Poly one = Poly::constant(1, h.nvars(), h.order());
  std::vector<Poly::Term> remainder;
  std::size_t nvars = h.nvars();
  MonomialOrder ord = h.order();
  while (!h.is_zero()) {
    const auto [lm, lc] = h.leading();
    bool reduced = false;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Poly& g = basis[k];
      const auto& [glm, glc] = g.leading();
      if (!glm.divides(lm)) continue;
      Monomial q = lm.quotient(glm);
      sugar = std::max(sugar, static_cast<Exp>(sugars[k] + q.degree()));
      h = h.fma_subtract(lc / glc, q, g);
      reduced = true;
      break;
    }
    if (!reduced) {
      remainder.emplace_back(lm, lc);
      h = h.fma_subtract(lc, lm, one);
    }
  }
  return {Poly::from_terms(std::move(remainder), nvars, ord), sugar};
}

// Registers basis element t (already appended) in the pair set, applying the
// classic filters:
//  * fresh pairs whose lcm is properly divided by another fresh pair's lcm
//    are dropped; on equal lcms the earliest partner survives,
//  * fresh pairs with coprime leading monomials are dropped (their
//    S-polynomials reduce to zero unaided),
//  * old pairs whose lcm the new leading monomial properly absorbs are
//    dropped (their cancellation factors through the new element).
void update_pairs(std::vector<Pair>& pairs, const std::vector<Poly>& basis,
                  const std::vector<Exp>& sugars, std::size_t t) {
  const Monomial& ltNew = basis[t].leading().first;

  std::vector<Pair> fresh;
  fresh.reserve(t);
  for (std::size_t i = 0; i < t; ++i) {
    const Monomial& lti = basis[i].leading().first;
    Monomial l = Monomial::lcm(lti, ltNew);
    Exp lDeg = l.degree();
    Exp sug = std::max<Exp>(sugars[i] + l.quotient(lti).degree(),
                            sugars[t] + l.quotient(ltNew).degree());
    fresh.push_back(Pair{i, t, std::move(l), sug, lDeg});
  }

  std::vector<char> keep(fresh.size(), 1);
  for (std::size_t a = 0; a < fresh.size(); ++a) {
    for (std::size_t b = 0; b < fresh.size() && keep[a]; ++b) {
      if (a == b) continue;
      if (fresh[b].lcm == fresh[a].lcm) {
        if (b < a) keep[a] = 0;
      } else if (fresh[b].lcm.divides(fresh[a].lcm)) {
        keep[a] = 0;
      }
    }
    if (keep[a] && basis[fresh[a].i].leading().first.coprime(ltNew)) keep[a] = 0;
  }

  std::vector<Pair> survivors;
  survivors.reserve(pairs.size() + fresh.size());
  for (Pair& p : pairs) {
    const Monomial& lti = basis[p.i].leading().first;
    const Monomial& ltj = basis[p.j].leading().first;
    bool absorbed = ltNew.divides(p.lcm) && !(Monomial::lcm(lti, ltNew) == p.lcm) &&
                    !(Monomial::lcm(ltj, ltNew) == p.lcm);
    if (!absorbed) survivors.push_back(std::move(p));
  }
  for (std::size_t a = 0; a < fresh.size(); ++a)
    if (keep[a]) survivors.push_back(std::move(fresh[a]));
  pairs = std::move(survivors);
}

// Minimalize + fully reduce + make monic + sort ascending by leading
// monomial: the unique reduced basis for this ideal and order.
std::vector<Poly> interreduce(std::vector<Poly> basis, const MonomialOrder& order) {
  std::vector<char> kept(basis.size(), 1);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size() && kept[i]; ++j) {
      if (i == j || !kept[j]) continue;
      const Monomial& li = basis[i].leading().first;
      const Monomial& lj = basis[j].leading().first;
      if (li == lj) {
        if (j < i) kept[i] = 0;
      } else if (lj.divides(li)) {
        kept[i] = 0;
      }
    }
  }
  std::vector<Poly> reduced;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (kept[i]) reduced.push_back(std::move(basis[i]));

  for (std::size_t i = 0; i < reduced.size(); ++i) {
    std::vector<Poly> others;
    others.reserve(reduced.size() - 1);
    for (std::size_t j = 0; j < reduced.size(); ++j)
      if (j != i) others.push_back(reduced[j]);
    Poly r = normal_form(reduced[i], others);
    // Minimal leading monomials are never reducible, so r kept its lead.
    assert(!r.is_zero());
    reduced[i] = r.scaled(1 / r.leading().second);
  }
  std::sort(reduced.begin(), reduced.end(), [&order](const Poly& a, const Poly& b) {
    return order.compare(a.leading().first, b.leading().first) < 0;
  });
  return reduced;
}

}  // namespace

GroebnerBasis buchberger(std::vector<Poly> gens, const MonomialOrder& order) {
  GroebnerBasis out;
  out.order = order;

  std::vector<Poly> basis;
  std::vector<Exp> sugars;
  std::vector<Pair> pairs;
  auto add_element = [&](Poly p, Exp sugar) {
    basis.push_back(std::move(p));
    sugars.push_back(sugar);
    update_pairs(pairs, basis, sugars, basis.size() - 1);
  };

  for (Poly& g : gens) {
    if (g.is_zero()) continue;
    Poly gg = (g.order() == order) ? std::move(g) : g.reordered(order);
    Exp deg = gg.degree();
    add_element(std::move(gg), deg);
  }

  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), pair_before);
    Pair p = std::move(*it);
    pairs.erase(it);
    Poly s = s_polynomial(basis[p.i], basis[p.j]);
    if (s.is_zero()) continue;
    auto [r, sug] = reduce_with_sugar(std::move(s), p.sugar, basis, sugars);
    if (!r.is_zero()) add_element(std::move(r), sug);
  }

  if (!basis.empty()) out.elems = interreduce(std::move(basis), order);
  for (const Poly& e : out.elems)
    out.denominatorLcm = lcm(out.denominatorLcm, e.denominator_lcm());
  return out;
}

Ideal::Ideal(std::size_t nvars, std::vector<Poly> gens) : nvars_(nvars) {
  for (Poly& g : gens) {
    if (g.is_zero()) continue;
    assert(g.nvars() == nvars);
    gens_.push_back(std::move(g));
  }
}

const GroebnerBasis& Ideal::groebner(const MonomialOrder& order) const {
  auto it = cache_.find(order.key());
  if (it == cache_.end()) {
    auto gb = std::make_shared<GroebnerBasis>(buchberger(gens_, order));
    it = cache_.emplace(order.key(), std::move(gb)).first;
  }
  return *it->second;
}

bool Ideal::contains(const Poly& p) const {
  const GroebnerBasis& gb = groebner(MonomialOrder::grevlex());
  Poly q = (p.order() == gb.order) ? p : p.reordered(gb.order);
  return normal_form(q, gb.elems).is_zero();
}

bool Ideal::is_zero_ideal() const { return groebner(MonomialOrder::grevlex()).elems.empty(); }

bool Ideal::is_proper() const {
  return !groebner(MonomialOrder::grevlex()).is_trivial_unit();
}

int Ideal::dimension() const {
  if (!is_proper()) fail(Errc::ImproperIdeal, "dimension of the unit ideal");
  if (nvars_ > 24)
    fail(Errc::InternalCapExceeded, "dimension: too many variables for subset search");
  const GroebnerBasis& gb = groebner(MonomialOrder::grevlex());
  std::vector<std::uint32_t> supports;
  supports.reserve(gb.elems.size());
  for (const Poly& g : gb.elems) {
    std::uint32_t mask = 0;
    const Monomial& lm = g.leading().first;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (lm.e[i] > 0) mask |= (1u << i);
    supports.push_back(mask);
  }
  int best = 0;
  for (std::uint32_t u = 0; u < (1u << nvars_); ++u) {
    bool independent = true;
    for (std::uint32_t s : supports)
      if ((s & ~u) == 0) {  // this leading monomial uses only variables of u
        independent = false;
        break;
      }
    if (independent) best = std::max(best, __builtin_popcount(u));
  }
  return best;
}

bool Ideal::equals(const Ideal& other) const {
  if (nvars_ != other.nvars_) return false;
  for (const Poly& g : gens_)
    if (!other.contains(g)) return false;
  for (const Poly& g : other.gens_)
    if (!contains(g)) return false;
  return true;
}

Ideal elimination_ideal(const Ideal& ideal, const std::vector<char>& eliminate) {
  assert(eliminate.size() == ideal.nvars());
  const GroebnerBasis& gb = ideal.groebner(MonomialOrder::block(eliminate));

  std::vector<std::size_t> varMap(ideal.nvars(), 0);
  std::size_t remaining = 0;
  for (std::size_t i = 0; i < ideal.nvars(); ++i)
    if (!eliminate[i]) varMap[i] = remaining++;

  std::vector<Poly> kept;
  for (const Poly& g : gb.elems) {
    const Monomial& lm = g.leading().first;
    bool touches = false;
    for (std::size_t i = 0; i < ideal.nvars(); ++i)
      if (eliminate[i] && lm.e[i] > 0) {
        touches = true;
        break;
      }
    // Under the block order a leading monomial free of the eliminated
    // variables forces the whole element to be free of them.
    if (touches) continue;
    kept.push_back(g.remap_variables(varMap, remaining, MonomialOrder::grevlex()));
  }
  return Ideal(remaining, std::move(kept));
}

}  // namespace catfin
