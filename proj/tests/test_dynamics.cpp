#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "catfin/dynamics.hpp"
#include "catfin/error.hpp"
#include "catfin/parse.hpp"
#include "catfin/variety.hpp"
#include "doctest.h"

using namespace catfin;

namespace {

const std::vector<std::string> X{"x"};

VarietyPtr line() { return std::make_shared<Variety>("A1", X, Ideal(1, {})); }

Morphism endo(const VarietyPtr& v, const std::string& coord) {
  return Morphism(v, v, {parse_polynomial(coord, X)});
}

Point pt(int n) { return {Rational(n)}; }

Errc thrown_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const EngineError& e) {
    return e.code();
  }
  return Errc::InputError;  // sentinel: nothing thrown
}

std::set<std::string> keys_of(const OrbitReport& r) {
  std::set<std::string> out;
  for (const Point& p : r.points) out.insert(point_key(p));
  return out;
}

}  // namespace

TEST_CASE("point evaluation and keys are exact") {
  VarietyPtr a = line();
  Morphism f = endo(a, "x^2 - 1/2");
  Point img = apply_at_point(f, {Rational(1, 2)});
  REQUIRE(img.size() == 1);
  CHECK(img[0] == Rational(-1, 4));
  CHECK(point_key(img) == "-1/4");
  CHECK(point_key({Rational(3), Rational(-1, 2)}) == "3,-1/2");
}

TEST_CASE("monoid actions validate their data") {
  VarietyPtr a = line();
  CHECK_NOTHROW(MonoidAction(a, {endo(a, "-x")}, pt(1)));
  CHECK(thrown_code([&] { MonoidAction(a, {endo(a, "-x")}, {}); }) == Errc::InputError);
  VarietyPtr b = line();
  CHECK(thrown_code([&] { MonoidAction(a, {endo(b, "-x")}, pt(0)); }) == Errc::InputError);

  std::vector<Poly> gens{parse_polynomial("x^2 - 1", X)};
  VarietyPtr pts = std::make_shared<Variety>("P", X, Ideal(1, gens));
  CHECK_NOTHROW(MonoidAction(pts, {}, pt(1)));
  CHECK(thrown_code([&] { MonoidAction(pts, {}, pt(2)); }) == Errc::PointNotOnVariety);
}

TEST_CASE("negation at 1 has the two-point orbit {1, -1}") {
  VarietyPtr a = line();
  MonoidAction action(a, {endo(a, "-x")}, pt(1));
  OrbitReport r = orbit_bfs(action, 100);
  CHECK(r.complete);
  CHECK(r.budgetUsed == 2);
  CHECK(keys_of(r) == std::set<std::string>{"1", "-1"});
  REQUIRE(r.transitions.size() == 1);
  CHECK(r.transitions[0] == std::vector<std::size_t>{1, 0});
  CHECK(m_periodicity(r));
}

TEST_CASE("two involutions from 0 exhaust any finite budget") {
  VarietyPtr a = line();
  MonoidAction action(a, {endo(a, "-x"), endo(a, "1 - x")}, pt(0));
  OrbitReport r = orbit_bfs(action, 100);
  CHECK_FALSE(r.complete);
  CHECK(r.budgetUsed == 100);
  CHECK(thrown_code([&] { m_periodicity(r); }) == Errc::IncompleteOrbit);
}

TEST_CASE("the identity fixes its base point") {
  VarietyPtr a = line();
  MonoidAction action(a, {Morphism::identity(a)}, pt(0));
  OrbitReport r = orbit_bfs(action, 10);
  CHECK(r.complete);
  CHECK(r.points.size() == 1);
  CHECK(m_periodicity(r));
}

TEST_CASE("squaring from -1 gives a complete orbit the monoid does not permute") {
  VarietyPtr a = line();
  MonoidAction action(a, {endo(a, "x^2")}, pt(-1));
  OrbitReport r = orbit_bfs(action, 100);
  CHECK(r.complete);
  CHECK(keys_of(r) == std::set<std::string>{"-1", "1"});
  CHECK_FALSE(m_periodicity(r));
}

TEST_CASE("cyclic periodicity classifies fixed points, tails, and escapes") {
  VarietyPtr a = line();
  Morphism sq = endo(a, "x^2");

  PeriodicityResult fixed = cyclic_periodicity(sq, pt(1), 100);
  CHECK(fixed.kind == PeriodicityResult::Kind::Periodic);
  CHECK(fixed.period == 1);

  PeriodicityResult tailed = cyclic_periodicity(sq, pt(-1), 100);
  CHECK(tailed.kind == PeriodicityResult::Kind::Preperiodic);
  CHECK(tailed.tail == 1);
  CHECK(tailed.period == 1);

  PeriodicityResult escape = cyclic_periodicity(endo(a, "x + 1"), pt(0), 50);
  CHECK(escape.kind == PeriodicityResult::Kind::Unresolved);

  PeriodicityResult swap = cyclic_periodicity(endo(a, "-x"), pt(5), 100);
  CHECK(swap.kind == PeriodicityResult::Kind::Periodic);
  CHECK(swap.period == 2);

  // An orbit that closes on exactly `budget` points is still resolved.
  PeriodicityResult tight = cyclic_periodicity(endo(a, "-x"), pt(5), 2);
  CHECK(tight.kind == PeriodicityResult::Kind::Periodic);
  CHECK(tight.period == 2);
}

TEST_CASE("orbit completeness is budget-monotone") {
  VarietyPtr a = line();
  MonoidAction action(a, {endo(a, "-x"), endo(a, "x^2")}, pt(-1));
  OrbitReport small = orbit_bfs(action, 2);
  REQUIRE(small.complete);
  OrbitReport large = orbit_bfs(action, 1000);
  CHECK(large.complete);
  CHECK(keys_of(small) == keys_of(large));
  CHECK(small.points.size() == 2);  // {-1, 1}
}

TEST_CASE("transitions compose functorially on complete orbits") {
  VarietyPtr a = line();
  Morphism f = endo(a, "-x");
  Morphism g = endo(a, "x^2");
  MonoidAction action(a, {f, g}, pt(-1));
  OrbitReport r = orbit_bfs(action, 1000);
  REQUIRE(r.complete);
  MonoidAction wide(a, {f, g, compose(f, g)}, pt(-1));
  OrbitReport rw = orbit_bfs(wide, 1000);
  REQUIRE(rw.complete);
  REQUIRE(keys_of(r) == keys_of(rw));
  for (std::size_t i = 0; i < rw.points.size(); ++i)
    CHECK(rw.transitions[2][i] == rw.transitions[0][rw.transitions[1][i]]);
}

TEST_CASE("the pair probe finds the unbounded composite of two involutions") {
  VarietyPtr a = line();
  MonoidAction action(a, {endo(a, "-x"), endo(a, "1 - x")}, pt(0));
  PairProbeReport r = pair_criterion_probe(action, 3, 100);
  CHECK_FALSE(r.fullOrbitComplete);
  REQUIRE_FALSE(r.witnesses.empty());
  bool sawTranslation = false;
  for (const auto& w : r.witnesses)
    if (w.keyF == "x + 1") sawTranslation = true;
  CHECK(sawTranslation);
  CHECK(r.consistent);
}

TEST_CASE("the pair probe reports bounded cyclic orbits for a single involution") {
  VarietyPtr a = line();
  MonoidAction action(a, {endo(a, "-x")}, pt(5));
  PairProbeReport r = pair_criterion_probe(action, 4, 100);
  CHECK(r.fullOrbitComplete);
  CHECK(r.witnesses.empty());
  CHECK(r.maxCyclicOrbit == 2);
  CHECK(r.maxPairOrbit == 2);
  CHECK(r.consistent);
}

TEST_CASE("the pair probe on an empty generator list sees only the base point") {
  VarietyPtr a = line();
  MonoidAction action(a, {}, pt(7));
  PairProbeReport r = pair_criterion_probe(action, 4, 100);
  CHECK(r.fullOrbitComplete);
  CHECK(r.maxCyclicOrbit == 1);
  CHECK(r.maxPairOrbit == 1);
  CHECK(r.witnesses.empty());
}

TEST_CASE("complete permuted orbits have periodic generators") {
  VarietyPtr a = line();
  std::vector<MonoidAction> corpus;
  corpus.emplace_back(a, std::vector<Morphism>{endo(a, "-x")}, pt(1));
  corpus.emplace_back(a, std::vector<Morphism>{endo(a, "1 - x"), endo(a, "-x + 1")}, pt(2));
  corpus.emplace_back(a, std::vector<Morphism>{Morphism::identity(a)}, pt(0));
  for (const MonoidAction& action : corpus) {
    OrbitReport r = orbit_bfs(action, 1000);
    REQUIRE(r.complete);
    if (!m_periodicity(r)) continue;
    for (const Morphism& f : action.generators) {
      PeriodicityResult p = cyclic_periodicity(f, action.basePoint, 1000);
      CHECK(p.kind == PeriodicityResult::Kind::Periodic);
    }
  }
}

TEST_CASE("a base point whose orbit leaves no room is reported incomplete") {
  VarietyPtr a = line();
  MonoidAction action(a, {endo(a, "x + 1")}, pt(0));
  OrbitReport r = orbit_bfs(action, 1);
  CHECK_FALSE(r.complete);
  CHECK(r.points.size() == 1);
  CHECK(r.transitions[0][0] == OrbitReport::npos);
}
