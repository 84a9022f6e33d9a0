#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "catfin/decide.hpp"
#include "catfin/error.hpp"
#include "catfin/parse.hpp"
#include "catfin/system.hpp"
#include "catfin/variety.hpp"
#include "doctest.h"

using namespace catfin;

namespace {

const std::vector<std::string> X{"x"};
const std::vector<std::string> XY{"x", "y"};

VarietyPtr line(const std::string& name) {
  return std::make_shared<Variety>(name, X, Ideal(1, {}));
}

VarietyPtr plane(const std::string& name) {
  return std::make_shared<Variety>(name, XY, Ideal(2, {}));
}

Arrow endo(const std::string& name, const VarietyPtr& v, const std::string& coord) {
  return Arrow(name, 0, 0, Morphism(v, v, {parse_polynomial(coord, X)}));
}

System line_system(const std::vector<std::string>& coords) {
  VarietyPtr a = line("A1");
  std::vector<Arrow> arrows;
  for (std::size_t i = 0; i < coords.size(); ++i)
    arrows.push_back(endo("e" + std::to_string(i), a, coords[i]));
  return System({a}, std::move(arrows));
}

Errc thrown_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const EngineError& e) {
    return e.code();
  }
  return Errc::InputError;  // sentinel: nothing thrown
}

const WitnessInfiniteOrder& as_infinite_order(const Verdict& v) {
  REQUIRE_FALSE(v.finite);
  REQUIRE(v.witness != nullptr);
  return std::get<WitnessInfiniteOrder>(v.witness->w);
}

const WitnessSubsystem& as_subsystem(const Verdict& v) {
  REQUIRE_FALSE(v.finite);
  REQUIRE(v.witness != nullptr);
  return std::get<WitnessSubsystem>(v.witness->w);
}

std::string key_of(const Morphism& m) { return m.coord_key(); }

}  // namespace

TEST_CASE("single involution generates a two-element monoid") {
  System s = line_system({"-x"});
  Verdict v = decide_system(s, Options{});
  REQUIRE(v.finite);
  CHECK(v.order == 2);
  REQUIRE(v.table.has_value());
  CHECK(v.table->complete());
  CHECK(v.table->entry(0).morph.is_identity());
  CHECK(key_of(v.table->entry(1).morph) == "-x");
  CHECK(v.table->entry(1).word == std::vector<std::size_t>{0});
}

TEST_CASE("constant-to-zero plus negation closes at three morphisms") {
  System s = line_system({"0", "-x"});
  std::vector<std::string> diag;
  Verdict v = decide_system(s, Options{}, {}, &diag);
  REQUIRE(v.finite);
  CHECK(v.order == 3);
  CHECK(v.table->complete());
  // The restriction pass lands on a point vertex and must report it finite.
  bool sawRestriction = false;
  for (const std::string& d : diag)
    if (d.find("restriction to") != std::string::npos) sawRestriction = true;
  CHECK(sawRestriction);
}

TEST_CASE("two involutions with distinct centers generate an infinite monoid") {
  System s = line_system({"-x", "1 - x"});
  Verdict v = decide_system(s, Options{});
  const WitnessInfiniteOrder& w = as_infinite_order(v);
  CHECK(w.vertex == 0);
  CHECK(w.word == std::vector<std::size_t>{1, 0});
  CHECK(key_of(w.morph) == "x + 1");
  CHECK(w.cert.kind == OrderCertificate::Kind::PowerNotIdentity);
  CHECK(w.cert.exponent == 36);
  REQUIRE(w.cert.powerCoords.size() == 1);
  CHECK(poly_to_string(w.cert.powerCoords[0], X) == "x + 36");
  CHECK(validate_witness(*v.witness, s, Options{}));
}

TEST_CASE("a translation has infinite order with a power certificate") {
  System s = line_system({"x + 1"});
  Verdict v = decide_system(s, Options{});
  const WitnessInfiniteOrder& w = as_infinite_order(v);
  CHECK(w.word == std::vector<std::size_t>{0});
  CHECK(w.cert.kind == OrderCertificate::Kind::PowerNotIdentity);
  CHECK(w.cert.exponent == 36);
  CHECK(poly_to_string(w.cert.powerCoords[0], X) == "x + 36");
  CHECK(validate_witness(*v.witness, s, Options{}));
}

TEST_CASE("squaring collapses residues and is caught as a non-bijective action") {
  System s = line_system({"x^2"});
  Verdict v = decide_system(s, Options{});
  const WitnessInfiniteOrder& w = as_infinite_order(v);
  CHECK(w.word == std::vector<std::size_t>{0});
  CHECK(w.cert.kind == OrderCertificate::Kind::NonBijectiveAction);
  CHECK(w.cert.prime == 2);
  CHECK_FALSE(w.cert.collideA == w.cert.collideB);
  CHECK(validate_witness(*v.witness, s, Options{}));
}

TEST_CASE("kernel collision: two distinct involutions with the same probe action") {
  // -x and 36-x agree on every point mod 4 and mod 9, yet differ as
  // morphisms; the collision composite is the translation x + 36.
  System s = line_system({"-x", "-x + 36"});
  Verdict v = decide_system(s, Options{});
  REQUIRE_FALSE(v.finite);
  const WitnessKernelCollision& w = std::get<WitnessKernelCollision>(v.witness->w);
  CHECK(w.vertex == 0);
  CHECK(w.wordF == std::vector<std::size_t>{1});
  CHECK(w.wordG == std::vector<std::size_t>{0});
  CHECK(key_of(w.f) == "-x + 36");
  CHECK(key_of(w.g) == "-x");
  CHECK(w.orderG == 2);
  CHECK(key_of(w.h) == "x + 36");
  CHECK(validate_witness(*v.witness, s, Options{}));
}

TEST_CASE("dropping a non-dominant arrow can expose an infinite remainder") {
  System s = line_system({"0", "x + 1"});
  Verdict v = decide_system(s, Options{});
  const WitnessSubsystem& w = as_subsystem(v);
  CHECK(w.step.kind == SubsystemStep::Kind::DroppedArrow);
  CHECK(w.step.arrow == 0);  // canonical order sorts "0" before "x + 1"
  CHECK(w.step.keptArrows == std::vector<std::size_t>{1});
  REQUIRE(w.inner != nullptr);
  const WitnessInfiniteOrder& inner = std::get<WitnessInfiniteOrder>(w.inner->w);
  CHECK(inner.cert.exponent == 36);
  CHECK(validate_witness(*v.witness, s, Options{}));
}

TEST_CASE("a single bridge between two lines closes at three morphisms") {
  VarietyPtr a = line("A"), b = line("B");
  System s({a, b}, {Arrow("f", 0, 1, Morphism(a, b, {parse_polynomial("x^2", X)}))});
  Verdict v = decide_system(s, Options{});
  REQUIRE(v.finite);
  CHECK(v.order == 3);
}

TEST_CASE("a non-dominant bridge still closes finitely") {
  VarietyPtr a = line("A"), b = line("B");
  System s({a, b}, {Arrow("f", 0, 1, Morphism(a, b, {parse_polynomial("0", X)}))});
  Verdict v = decide_system(s, Options{});
  REQUIRE(v.finite);
  CHECK(v.order == 3);
}

TEST_CASE("isolated vertices decide to the identity category") {
  System s({line("A"), line("B"), line("C")}, {});
  Verdict v = decide_system(s, Options{});
  REQUIRE(v.finite);
  CHECK(v.order == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(v.table->entry(i).morph.is_identity());
}

TEST_CASE("the back-and-forth groupoid closes at eight morphisms") {
  VarietyPtr a = line("A"), b = line("B");
  std::vector<Arrow> arrows;
  arrows.emplace_back("f", 0, 1, Morphism(a, b, {parse_polynomial("-x", X)}));
  arrows.emplace_back("g", 1, 0, Morphism(b, a, {parse_polynomial("x", X)}));
  System s({a, b}, std::move(arrows));
  Verdict v = decide_system(s, Options{});
  REQUIRE(v.finite);
  CHECK(v.order == 8);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(v.table->hom_set(i, j).size() == 2);
}

TEST_CASE("plane rotation is finite, plane shear is infinite") {
  VarietyPtr p = plane("A2");
  auto planar = [&](const std::string& cx, const std::string& cy) {
    return System({p}, {Arrow("f", 0, 0,
                              Morphism(p, p,
                                       {parse_polynomial(cx, XY), parse_polynomial(cy, XY)}))});
  };
  Verdict rot = decide_system(planar("-y", "x"), Options{});
  REQUIRE(rot.finite);
  CHECK(rot.order == 4);

  System shearSys = planar("x + y", "y");
  Verdict shear = decide_system(shearSys, Options{});
  const WitnessInfiniteOrder& w = as_infinite_order(shear);
  CHECK(w.cert.exponent == 36);
  REQUIRE(w.cert.powerCoords.size() == 2);
  CHECK(poly_to_string(w.cert.powerCoords[0], XY) == "x + 36*y");
  CHECK(validate_witness(*shear.witness, shearSys, Options{}));
}

TEST_CASE("cuspidal curve: sign flip is finite, scaling is infinite") {
  std::vector<Poly> gens{parse_polynomial("y^2 - x^3", XY)};
  auto cusp = [&] { return std::make_shared<Variety>("C", XY, Ideal(2, gens)); };
  VarietyPtr c = cusp();
  auto sys = [&](const std::string& cx, const std::string& cy) {
    return System({c}, {Arrow("f", 0, 0,
                              Morphism(c, c,
                                       {parse_polynomial(cx, XY), parse_polynomial(cy, XY)}))});
  };
  Verdict neg = decide_system(sys("x", "-y"), Options{});
  REQUIRE(neg.finite);
  CHECK(neg.order == 2);

  System scaleSys = sys("4*x", "8*y");
  Verdict scale = decide_system(scaleSys, Options{});
  REQUIRE_FALSE(scale.finite);
  CHECK(validate_witness(*scale.witness, scaleSys, Options{}));
}

TEST_CASE("verdicts are invariant under generator permutation") {
  Verdict v1 = decide_system(line_system({"-x", "1 - x"}), Options{});
  Verdict v2 = decide_system(line_system({"1 - x", "-x"}), Options{});
  const WitnessInfiniteOrder& w1 = as_infinite_order(v1);
  const WitnessInfiniteOrder& w2 = as_infinite_order(v2);
  CHECK(w1.word == w2.word);
  CHECK(key_of(w1.morph) == key_of(w2.morph));
  CHECK(w1.cert.exponent == w2.cert.exponent);

  Verdict f1 = decide_system(line_system({"0", "-x"}), Options{});
  Verdict f2 = decide_system(line_system({"-x", "0"}), Options{});
  REQUIRE(f1.finite);
  REQUIRE(f2.finite);
  CHECK(f1.order == f2.order);
  for (std::size_t i = 0; i < f1.order; ++i) {
    CHECK(key_of(f1.table->entry(i).morph) == key_of(f2.table->entry(i).morph));
    CHECK(f1.table->entry(i).word == f2.table->entry(i).word);
  }
}

TEST_CASE("removing generators never turns a finite system infinite") {
  const std::vector<std::vector<std::string>> finiteSystems{
      {"0", "-x"}, {"-x"}, {"0"}, {"x"}, {"1 - x"}};
  for (const auto& coords : finiteSystems) {
    Verdict whole = decide_system(line_system(coords), Options{});
    REQUIRE(whole.finite);
    for (std::size_t drop = 0; drop < coords.size(); ++drop) {
      std::vector<std::string> rest;
      for (std::size_t i = 0; i < coords.size(); ++i)
        if (i != drop) rest.push_back(coords[i]);
      Verdict sub = decide_system(line_system(rest), Options{});
      CHECK(sub.finite);
      CHECK(sub.order <= whole.order);
    }
  }
}

TEST_CASE("tampered witnesses are rejected") {
  System s = line_system({"x + 1"});
  Verdict v = decide_system(s, Options{});
  REQUIRE_FALSE(v.finite);

  InfinitenessWitness wrongExponent = *v.witness;
  std::get<WitnessInfiniteOrder>(wrongExponent.w).cert.exponent = 1;
  CHECK(thrown_code([&] { validate_witness(wrongExponent, s, Options{}); }) ==
        Errc::InvalidWitness);

  InfinitenessWitness wrongWord = *v.witness;
  std::get<WitnessInfiniteOrder>(wrongWord.w).word = {0, 0};
  CHECK(thrown_code([&] { validate_witness(wrongWord, s, Options{}); }) ==
        Errc::InvalidWitness);

  InfinitenessWitness wrongVertex = *v.witness;
  std::get<WitnessInfiniteOrder>(wrongVertex.w).vertex = 5;
  CHECK(thrown_code([&] { validate_witness(wrongVertex, s, Options{}); }) ==
        Errc::InvalidWitness);

  InfinitenessWitness wrongPower = *v.witness;
  std::get<WitnessInfiniteOrder>(wrongPower.w).cert.powerCoords = {
      parse_polynomial("x + 35", X)};
  CHECK(thrown_code([&] { validate_witness(wrongPower, s, Options{}); }) ==
        Errc::InvalidWitness);

  // A witness claiming infinitude of a finite system must not validate.
  System finiteSys = line_system({"-x"});
  CHECK(thrown_code([&] { validate_witness(*v.witness, finiteSys, Options{}); }) ==
        Errc::InvalidWitness);
}

TEST_CASE("tampered collision witnesses are rejected") {
  System s = line_system({"-x", "-x + 36"});
  Verdict v = decide_system(s, Options{});
  REQUIRE_FALSE(v.finite);

  InfinitenessWitness swapped = *v.witness;
  {
    auto& w = std::get<WitnessKernelCollision>(swapped.w);
    std::swap(w.wordF, w.wordG);  // words no longer match the stored morphisms
  }
  CHECK(thrown_code([&] { validate_witness(swapped, s, Options{}); }) ==
        Errc::InvalidWitness);

  InfinitenessWitness wrongOrder = *v.witness;
  std::get<WitnessKernelCollision>(wrongOrder.w).orderG = 3;
  CHECK(thrown_code([&] { validate_witness(wrongOrder, s, Options{}); }) ==
        Errc::InvalidWitness);
}

TEST_CASE("dominant-component decision enforces its preconditions") {
  CHECK(thrown_code([&] {
          decide_dominant_component(line_system({"0"}), Options{});
        }) == Errc::InputError);
  System twoParts({line("A"), line("B")}, {});
  CHECK(thrown_code([&] { decide_dominant_component(twoParts, Options{}); }) ==
        Errc::InputError);
}

TEST_CASE("a tiny closure budget aborts instead of answering") {
  Options opt;
  opt.closureCap = 1;
  CHECK(thrown_code([&] { decide_system(line_system({"x + 1"}), opt); }) ==
        Errc::BudgetExceeded);
}

TEST_CASE("diagnostics describe the model and the probes") {
  std::vector<std::string> diag;
  Verdict v = decide_system(line_system({"-x", "1 - x"}), Options{}, {}, &diag);
  CHECK_FALSE(v.finite);
  bool sawModel = false, sawProbes = false;
  for (const std::string& d : diag) {
    if (d.rfind("model: D = ", 0) == 0) sawModel = true;
    if (d.find("probes[") != std::string::npos) sawProbes = true;
  }
  CHECK(sawModel);
  CHECK(sawProbes);
}
