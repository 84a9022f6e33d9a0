// catfin: orbit dynamics for finitely generated monoid actions.
//
// A MonoidAction is a tuple of endomorphisms of one variety together with an
// exact rational base point on it.  The toolkit enumerates the orbit by
// breadth-first search with exact arithmetic (no floating point anywhere),
// checks whether the monoid permutes a complete orbit, classifies single-map
// orbits as periodic / preperiodic / unresolved within a budget, and runs an
// empirical probe over all short words measuring cyclic sub-orbit sizes.
#pragma once

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

#include "catfin/options.hpp"
#include "catfin/rational.hpp"
#include "catfin/variety.hpp"

namespace catfin {

using Point = std::vector<Rational>;

// Evaluates the morphism's coordinate tuple at an exact rational point of its
// source (arity checked; membership is the caller's concern).
Point apply_at_point(const Morphism& f, const Point& p);

// Canonical encoding of a point for hashing/deduplication: normalized
// fractions joined by commas, e.g. "-1/2,3".
std::string point_key(const Point& p);

struct MonoidAction {
  // Validates that every generator is an endomorphism of v (shared vertex
  // object on both ends), that the base point has ambient arity, and that
  // every defining ideal generator vanishes at it (PointNotOnVariety).
  MonoidAction(VarietyPtr v, std::vector<Morphism> generators, Point basePoint);

  VarietyPtr variety;
  std::vector<Morphism> generators;
  Point basePoint;
};

struct OrbitReport {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // Discovery order; points[0] is the base point, which is always present.
  std::vector<Point> points;
  // transitions[g][i] = index of generators[g] applied to points[i], or npos
  // when that image fell outside the stored set (only possible when the
  // budget was exhausted).
  std::vector<std::vector<std::size_t>> transitions;
  bool complete = false;
  std::uint64_t budgetUsed = 0;  // number of points stored
};

// BFS from the base point applying every generator; complete iff the orbit
// stabilized within `budget` points.  Never throws: running out of budget is
// reported, not raised.
OrbitReport orbit_bfs(const MonoidAction& action, std::uint64_t budget);

struct PeriodicityResult {
  enum class Kind { Periodic, Preperiodic, Unresolved };
  Kind kind = Kind::Unresolved;
  std::uint64_t tail = 0;    // nonzero only for Preperiodic
  std::uint64_t period = 0;  // cycle length for Periodic / Preperiodic
};

// Iterates f exactly from x with cycle detection: Periodic(p) when the first
// revisited point is x itself, Preperiodic(tail, period) when the orbit
// enters a cycle after a nonempty tail, Unresolved when `budget` distinct
// points were seen without a repeat.
PeriodicityResult cyclic_periodicity(const Morphism& f, const Point& x, std::uint64_t budget);

// True iff every generator's transition map is a bijection of the orbit
// (then every monoid element permutes it).  Requires report.complete;
// throws IncompleteOrbit otherwise.
bool m_periodicity(const OrbitReport& report);

// Empirical probe of the pairwise periodicity criteria: enumerate all
// distinct monoid elements arising as words of length <= wordRadius, and for
// every ordered pair (f, g) measure |<f> . g(x)| by exact iteration, with
// `budget` capping the number of distinct points per measurement; pairs
// whose cyclic orbit exceeds the budget are reported as unboundedness
// witnesses.  Two-generated sub-orbits <f, g> . x are measured the same way
// through orbit_bfs.  This is a consistency harness, not a decision
// procedure: `consistent` records that no witness coexists with a complete
// full orbit.
struct PairProbeReport {
  struct UnboundedWitness {
    std::vector<std::size_t> wordF, wordG;  // words over generator indices
    std::string keyF, keyG;                 // canonical coordinate keys
  };

  std::uint64_t maxCyclicOrbit = 0;  // over pairs that stayed within budget
  std::uint64_t maxPairOrbit = 0;    // over complete two-generated orbits
  std::vector<UnboundedWitness> witnesses;
  bool fullOrbitComplete = false;
  bool consistent = true;
};

PairProbeReport pair_criterion_probe(const MonoidAction& action, std::uint32_t wordRadius,
                                     std::uint64_t budget);

}  // namespace catfin
