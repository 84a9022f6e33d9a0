// catfin: local probes at small primes.
//
// A probe packages: a prime p not dividing the spread-out denominator D, a
// point on the mod-p fiber of the variety's integral model at which the
// Jacobian has full expected rank, the finite coefficient ring
// T = Z/p^2 (+) (F_p)^e with square-zero tau-part (the quotient of the model's
// local ring at that point by the square of its maximal ideal), and the full
// finite set of T-valued points of the model.  Endomorphisms act on that
// point set; comparing and iterating those actions at two probes with
// distinct primes powers the finite-order test and the collision rule of the
// decision procedure.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "catfin/options.hpp"
#include "catfin/poly.hpp"
#include "catfin/rational.hpp"
#include "catfin/variety.hpp"

namespace catfin {

// Element of T = Z/p^2 (+) (F_p)^e: value u + b1*t1 + ... + be*te where the
// ti multiply to zero pairwise and p*ti = 0.
struct TruncElem {
  std::uint32_t u = 0;             // in [0, p^2)
  std::vector<std::uint32_t> b;    // length e, entries in [0, p)
  bool operator==(const TruncElem& o) const = default;
};

class TruncRing {
 public:
  TruncRing(std::uint32_t p, std::size_t e);

  std::uint32_t p() const { return p_; }
  std::size_t e() const { return e_; }
  std::uint64_t size() const { return size_; }

  TruncElem zero() const;
  TruncElem one() const;
  TruncElem add(const TruncElem& a, const TruncElem& b) const;
  TruncElem mul(const TruncElem& a, const TruncElem& b) const;
  TruncElem neg(const TruncElem& a) const;
  bool is_zero(const TruncElem& a) const;

  TruncElem embed_integer(const Integer& n) const;
  // Throws NonInvertibleDenominator when p divides the denominator.
  TruncElem embed(const Rational& q) const;

  // Mixed-radix bijection [0, size()) <-> elements; index 0 is zero and the
  // enumeration is deterministic.
  TruncElem element_at(std::uint64_t index) const;
  std::uint64_t index_of(const TruncElem& a) const;

  std::string to_string(const TruncElem& a) const;  // e.g. "3+2*t1"

 private:
  std::uint32_t p_;
  std::uint32_t psq_;
  std::size_t e_;
  std::uint64_t size_;
};

// Evaluation interface over a TruncRing for the generic evaluate().
struct TruncOps {
  const TruncRing* ring;
  using value_type = TruncElem;
  TruncElem zero() const { return ring->zero(); }
  TruncElem embed(const Rational& q) const { return ring->embed(q); }
  TruncElem add(const TruncElem& a, const TruncElem& b) const { return ring->add(a, b); }
  TruncElem mul(const TruncElem& a, const TruncElem& b) const { return ring->mul(a, b); }
};

// Spread-out bookkeeping for one decision scope: D is the lcm of every
// reduced-basis denominator of every vertex ideal and every coefficient
// denominator of every generating morphism; the per-vertex scaled generators
// are the primitive integer scalings of the reduced grevlex basis elements.
// Every canonical morphism arising in the scope by composition and normal
// form then has coefficients in Z[1/D], and the tuples annihilating the
// scaled generators over T are exactly the T-points of the model.
struct IntegralModel {
  Integer D = 1;
  std::map<const Variety*, std::vector<Poly>> scaledGens;

  const std::vector<Poly>& gens_for(const Variety& v) const;
};

IntegralModel spread_out(const std::vector<VarietyPtr>& vertices,
                         const std::vector<const Morphism*>& arrows);

struct LocalProbe {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> point;  // smooth F_p-point on the fiber
  TruncRing ring;
  // All T-valued points of the model, in enumeration order, with an index
  // for constant-time-ish lookup of images.
  std::vector<std::vector<TruncElem>> points;
  std::map<std::vector<std::uint64_t>, std::uint32_t> index;

  std::vector<std::uint64_t> encode(const std::vector<TruncElem>& tuple) const;
};

struct ProbePair {
  LocalProbe first;   // smaller prime
  LocalProbe second;  // larger prime
};

// Builds the probe at a given prime by exhaustive search for the first point
// of the mod-p fiber (first coordinate varying fastest) whose Jacobian block
// has rank n - dim V and whose full relation matrix has the same rank (which
// certifies the truncated-ring shape and that the class of p is nonzero in
// the cotangent space).  Throws NoProbeFound if no point qualifies,
// PointSetCapExceeded if enumeration outgrows the configured caps.
LocalProbe build_probe(const VarietyPtr& v, const IntegralModel& model, std::uint32_t p,
                       const Options& opt);

// The two smallest admissible primes p < p' <= opt.primeBound with p, p' not
// dividing D and a qualifying smooth point each; NoProbeFound otherwise.
ProbePair find_probe_pair(const VarietyPtr& v, const IntegralModel& model, const Options& opt);

// table[i] = index of f(points[i]); requires src(f) = dst(f) = the probe's
// variety.  A lookup miss (image of a model point not in the enumerated set)
// violates an internal invariant and aborts with ProbeInconsistency.
std::vector<std::uint32_t> action_on_points(const Morphism& f, const LocalProbe& probe);

bool table_is_identity(const std::vector<std::uint32_t>& table);
bool table_is_bijective(const std::vector<std::uint32_t>& table);
// lcm of the cycle lengths; table must be bijective.
Integer table_order(const std::vector<std::uint32_t>& table);

struct OrderCertificate {
  enum class Kind { PowerNotIdentity, NonBijectiveAction };
  Kind kind = Kind::PowerNotIdentity;
  // PowerNotIdentity: canonical f^exponent differs from the identity.
  Integer exponent = 0;
  std::vector<Poly> powerCoords;
  // NonBijectiveAction: two distinct points with the same image under f.
  std::uint32_t prime = 0;
  std::vector<TruncElem> collideA, collideB;
};

struct FiniteOrderOutcome {
  bool finite = false;
  Integer order = 0;          // exact order of f when finite
  OrderCertificate cert;      // justification when infinite
};

// f^n by binary powering on canonical forms; aborts with InternalCapExceeded
// when an intermediate coordinate exceeds opt.maxPolyTerms terms.
Morphism morphism_power(const Morphism& f, const Integer& n, const Options& opt);

// The finite-order test for a dominant endomorphism (NotDominant otherwise):
// non-bijective action at either probe certifies infinite order outright;
// otherwise N = lcm of the two permutation orders and f is torsion iff
// canonical f^N is the identity, in which case N is the exact order (checked
// by prime-divisor descent).
FiniteOrderOutcome finite_order_test(const Morphism& f, const ProbePair& probes,
                                     const Options& opt);

// Same test starting from already-computed action tables (tables[k] must be
// action_on_points(f, probes.{first,second})); lets callers that need the
// tables for other bookkeeping avoid recomputing them.
FiniteOrderOutcome finite_order_from_tables(const Morphism& f, const ProbePair& probes,
                                            const std::vector<std::uint32_t>& table1,
                                            const std::vector<std::uint32_t>& table2,
                                            const Options& opt);

}  // namespace catfin
