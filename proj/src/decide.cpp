#include "catfin/decide.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

#include "catfin/error.hpp"
#include "catfin/rational.hpp"

namespace catfin {

namespace {

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

using PairKey = std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>;

constexpr std::uint64_t kNoLimit = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kNoLimit / b) return kNoLimit;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kNoLimit - b ? kNoLimit : a + b;
}

void note(std::vector<std::string>* diag, const std::string& line) {
  if (diag) diag->push_back(line);
}

std::string arrow_name(const System& s, std::size_t idx) {
  const std::string& n = s.arrows()[idx].name;
  return n.empty() ? "a" + std::to_string(idx) : n;
}

std::string restriction_vertex_name(const System& s, std::size_t fIdx) {
  return "im(" + arrow_name(s, fIdx) + ")";
}

Verdict wrap_infinite(SubsystemStep step, WitnessPtr inner) {
  Verdict v;
  v.finite = false;
  v.witness = std::make_shared<InfinitenessWitness>(
      InfinitenessWitness{WitnessSubsystem{std::move(step), std::move(inner)}});
  return v;
}

// Child system from a subset of vertices and arrows (endpoints remapped).
// `strict` rejects malformed data with InvalidWitness instead of InputError,
// for use during witness validation.
System build_subquiver(const System& s, const std::vector<std::size_t>& vertexClass,
                       const std::vector<std::size_t>& keptArrows, bool strict) {
  const Errc bad = strict ? Errc::InvalidWitness : Errc::InputError;
  std::vector<std::size_t> remap(s.vertices().size(), s.vertices().size());
  std::vector<VarietyPtr> verts;
  for (std::size_t v : vertexClass) {
    if (v >= s.vertices().size() || remap[v] != s.vertices().size())
      fail(bad, "subsystem step names an invalid vertex set");
    remap[v] = verts.size();
    verts.push_back(s.vertex(v));
  }
  std::vector<Arrow> arrows;
  for (std::size_t i : keptArrows) {
    if (i >= s.arrows().size()) fail(bad, "subsystem step names a missing arrow");
    const Arrow& a = s.arrows()[i];
    if (remap[a.src] == s.vertices().size() || remap[a.dst] == s.vertices().size())
      fail(bad, "subsystem step keeps an arrow leaving the vertex set");
    arrows.emplace_back(a.name, remap[a.src], remap[a.dst], a.morph);
  }
  return System(std::move(verts), std::move(arrows));
}

// Recomposes a generator word; the empty word is the identity at fallback.
ClosureEntry recompose_word(const System& s, const std::vector<std::size_t>& word,
                            std::size_t fallback) {
  if (word.empty()) {
    if (fallback >= s.vertices().size())
      fail(Errc::InvalidWitness, "witness names a vertex outside the system");
    return {Morphism::identity(s.vertex(fallback)), fallback, fallback, {}};
  }
  if (word.back() >= s.arrows().size())
    fail(Errc::InvalidWitness, "witness word names a missing arrow");
  const Arrow& last = s.arrows()[word.back()];
  Morphism acc = last.morph;
  std::size_t src = last.src;
  std::size_t dst = last.dst;
  for (std::size_t k = word.size() - 1; k-- > 0;) {
    if (word[k] >= s.arrows().size())
      fail(Errc::InvalidWitness, "witness word names a missing arrow");
    const Arrow& a = s.arrows()[word[k]];
    if (a.src != dst) fail(Errc::InvalidWitness, "witness word does not compose");
    acc = compose(a.morph, acc);
    dst = a.dst;
  }
  return {std::move(acc), src, dst, word};
}

IntegralModel model_of(const System& s) {
  std::vector<const Morphism*> arrowPtrs;
  arrowPtrs.reserve(s.arrows().size());
  for (const Arrow& a : s.arrows()) arrowPtrs.push_back(&a.morph);
  return spread_out(s.vertices(), arrowPtrs);
}

// Builds the restricted system through the non-dominant arrow fIdx: vertex
// Z = image closure of f, one endo (f o g)|Z per recorded hom g: B -> A.
// The arrows are put into canonical order together with their parent words.
System build_restricted(const System& s, std::size_t fIdx, VarietyPtr z,
                        std::vector<std::vector<std::size_t>>& homWords, bool strict) {
  const Arrow& f = s.arrows()[fIdx];
  struct Item {
    Arrow arrow;
    std::vector<std::size_t> word;
    std::string key;
  };
  std::vector<Item> items;
  for (const std::vector<std::size_t>& word : homWords) {
    ClosureEntry g = recompose_word(s, word, f.dst);
    if (g.src != f.dst || g.dst != f.src) {
      if (strict)
        fail(Errc::InvalidWitness,
             "a recorded hom word is not a morphism from the target back to the source");
      fail(Errc::InputError, "internal: recorded hom word has wrong endpoints");
    }
    Morphism restricted = [&] {
      try {
        return restrict_to(compose(f.morph, g.morph), z, z);
      } catch (const EngineError& e) {
        if (strict && (e.code() == Errc::NotWellDefined || e.code() == Errc::SourceTargetMismatch))
          fail(Errc::InvalidWitness, "a recorded hom does not restrict to the image");
        throw;
      }
    }();
    std::string name =
        "(" + arrow_name(s, fIdx) + "∘" + word_string(s, g) + ")|" + z->name();
    std::string key = restricted.coord_key();
    items.push_back({Arrow(std::move(name), 0, 0, std::move(restricted)), word, std::move(key)});
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) { return a.key < b.key; });
  std::vector<Arrow> arrows;
  homWords.clear();
  for (Item& it : items) {
    arrows.push_back(std::move(it.arrow));
    homWords.push_back(std::move(it.word));
  }
  return System({std::move(z)}, std::move(arrows));
}

// ---------------------------------------------------------------------------
// Decision (arrows assumed to be in canonical order)

Verdict decide_dominant_impl(const System& s, const Options& opt, const Trace& trace,
                             std::vector<std::string>* diag) {
  if (path_components(s).classes.size() != 1)
    fail(Errc::InputError, "dominant-component decision requires a path-connected system");
  for (const Arrow& a : s.arrows())
    if (!is_dominant(a.morph))
      fail(Errc::InputError, "dominant-component decision requires dominant arrows");

  IntegralModel model = model_of(s);
  note(diag, "model: D = " + integer_to_string(model.D));

  const std::size_t nVerts = s.vertices().size();
  // Probes are built lazily, only when a vertex sees its first non-identity
  // endomorphism; identity endomorphisms use a reserved empty action key.
  std::vector<std::optional<ProbePair>> probes(nVerts);
  auto probes_for = [&](std::size_t v) -> const ProbePair& {
    if (!probes[v]) {
      probes[v] = find_probe_pair(s.vertex(v), model, opt);
      note(diag, "probes[" + s.vertex(v)->name() + "]: p = " +
                     std::to_string(probes[v]->first.p) + ", " +
                     std::to_string(probes[v]->second.p));
      if (trace.steps())
        trace.step("probes at '" + s.vertex(v)->name() + "': p = " +
                   std::to_string(probes[v]->first.p) + ", " +
                   std::to_string(probes[v]->second.p));
    }
    return *probes[v];
  };

  // action-pair key -> (entry index, exact order), per vertex
  std::vector<std::map<PairKey, std::pair<std::size_t, Integer>>> slots(nVerts);
  std::optional<InfinitenessWitness> found;

  ClosureHooks hooks;
  hooks.onDiscovery = [&](const HomTable& table, std::size_t idx) -> bool {
    const ClosureEntry& e = table.entry(idx);
    if (e.src != e.dst) return true;
    const std::size_t v = e.src;
    PairKey key;
    Integer order(1);
    if (!e.morph.is_identity()) {
      const ProbePair& pp = probes_for(v);
      std::vector<std::uint32_t> t1 = action_on_points(e.morph, pp.first);
      std::vector<std::uint32_t> t2 = action_on_points(e.morph, pp.second);
      FiniteOrderOutcome r = finite_order_from_tables(e.morph, pp, t1, t2, opt);
      if (!r.finite) {
        if (trace.steps())
          trace.step("infinite order: " + word_string(s, e) + " at '" +
                     s.vertex(v)->name() + "'");
        found = InfinitenessWitness{WitnessInfiniteOrder{v, e.word, e.morph, r.cert}};
        return false;
      }
      order = r.order;
      key = PairKey{std::move(t1), std::move(t2)};
    }
    auto [it, added] = slots[v].emplace(std::move(key), std::make_pair(idx, order));
    if (added) return true;
    const std::size_t gIdx = it->second.first;
    const Integer& gOrder = it->second.second;
    const Morphism& g = table.entry(gIdx).morph;
    Morphism h = compose(e.morph, morphism_power(g, Integer(gOrder - 1), opt));
    if (h.is_identity())
      fail(Errc::ProbeInconsistency,
           "distinct canonical endomorphisms yielded an identity collision composite");
    if (trace.steps())
      trace.step("action-pair collision: " + word_string(s, e) + " vs " +
                 word_string(s, table.entry(gIdx)));
    found = InfinitenessWitness{WitnessKernelCollision{v, e.word, table.entry(gIdx).word,
                                                       e.morph, g, gOrder, h}};
    return false;
  };

  ClosureResult r = bfs_closure(s, opt.closureCap, hooks, trace);
  Verdict verdict;
  if (r.hookStopped) {
    verdict.finite = false;
    verdict.witness = std::make_shared<InfinitenessWitness>(std::move(*found));
    return verdict;
  }
  verdict.finite = true;
  verdict.order = r.table.size();
  verdict.table = std::move(r.table);
  return verdict;
}

Verdict decide_system_impl(const System& s, const Options& opt, const Trace& trace,
                           std::vector<std::string>* diag) {
  PathComponentReport pc = path_components(s);

  if (pc.classes.size() > 1) {
    std::uint64_t orderSum = 0;
    for (std::size_t c = 0; c < pc.classes.size(); ++c) {
      SubsystemStep step;
      step.kind = SubsystemStep::Kind::Component;
      step.vertexClass = pc.classes[c];
      for (std::size_t i : pc.coreArrows)
        if (pc.classOf[s.arrows()[i].src] == c) step.keptArrows.push_back(i);
      System child = build_subquiver(s, step.vertexClass, step.keptArrows, false);
      if (trace.steps())
        trace.step("component " + std::to_string(c) + ": " +
                   std::to_string(child.vertices().size()) + " vertex(es), " +
                   std::to_string(child.arrows().size()) + " core arrow(s)");
      Verdict v = decide_system_impl(child, opt, trace, diag);
      if (!v.finite) {
        note(diag, "component " + std::to_string(c) + ": infinite");
        return wrap_infinite(std::move(step), v.witness);
      }
      note(diag,
           "component " + std::to_string(c) + ": finite, order " + std::to_string(v.order));
      orderSum = sat_add(orderSum, v.order);
    }
    // Assemble with the bridge arrows: a composite crosses at most
    // (#classes - 1) bridges, giving the safety cap below; endomorphisms
    // never cross a bridge, so all of them were vetted inside components.
    const std::uint64_t bridges = pc.bridgeArrows.size();
    std::uint64_t cap = 0;
    std::uint64_t term = orderSum;
    for (std::size_t k = 0; k < pc.classes.size(); ++k) {
      cap = sat_add(cap, term);
      term = sat_mul(term, sat_mul(orderSum, bridges));
    }
    note(diag, "assembly closure cap: " + std::to_string(cap));
    try {
      ClosureResult r = bfs_closure(s, cap, {}, trace);
      Verdict verdict;
      verdict.finite = true;
      verdict.order = r.table.size();
      verdict.table = std::move(r.table);
      return verdict;
    } catch (const EngineError& e) {
      if (e.code() == Errc::BudgetExceeded)
        fail(Errc::InternalCapExceeded,
             "assembly closure exceeded its derived bound: " + std::string(e.what()));
      throw;
    }
  }

  // Single path class: find the first non-dominant arrow, if any.
  std::size_t fIdx = s.arrows().size();
  for (std::size_t i = 0; i < s.arrows().size(); ++i)
    if (!is_dominant(s.arrows()[i].morph)) {
      fIdx = i;
      break;
    }
  if (fIdx == s.arrows().size()) return decide_dominant_impl(s, opt, trace, diag);

  const Arrow& f = s.arrows()[fIdx];
  note(diag, "arrow '" + arrow_name(s, fIdx) + "' is not dominant");

  SubsystemStep dropStep;
  dropStep.kind = SubsystemStep::Kind::DroppedArrow;
  dropStep.arrow = fIdx;
  for (std::size_t v = 0; v < s.vertices().size(); ++v) dropStep.vertexClass.push_back(v);
  for (std::size_t i = 0; i < s.arrows().size(); ++i)
    if (i != fIdx) dropStep.keptArrows.push_back(i);
  System sPrime = build_subquiver(s, dropStep.vertexClass, dropStep.keptArrows, false);
  Verdict vPrime = decide_system_impl(sPrime, opt, trace, diag);
  if (!vPrime.finite) return wrap_infinite(std::move(dropStep), vPrime.witness);

  // Image restriction: Z = closure of the image of f.
  VarietyPtr z = image_closure(f.morph, restriction_vertex_name(s, fIdx));
  if (z->dimension() >= s.vertex(f.dst)->dimension())
    fail(Errc::InternalCapExceeded,
         "image restriction did not reduce dimension; dominance analysis is inconsistent");

  SubsystemStep restStep;
  restStep.kind = SubsystemStep::Kind::Restricted;
  restStep.arrow = fIdx;
  for (std::size_t entryIdx : vPrime.table->hom_set(f.dst, f.src)) {
    const ClosureEntry& g = vPrime.table->entry(entryIdx);
    std::vector<std::size_t> parentWord;
    parentWord.reserve(g.word.size());
    for (std::size_t j : g.word) parentWord.push_back(dropStep.keptArrows[j]);
    restStep.homWords.push_back(std::move(parentWord));
  }
  System sRest = build_restricted(s, fIdx, z, restStep.homWords, false);
  note(diag, "restriction to " + z->name() + ": " + std::to_string(sRest.arrows().size()) +
                 " arrow(s)");
  Verdict vRest = decide_system_impl(sRest, opt, trace, diag);
  if (!vRest.finite) return wrap_infinite(std::move(restStep), vRest.witness);

  // Both reductions finite: the full closure stabilizes within the
  // reconstruction bound |S'| + sum over (V, W) of
  // |Hom_{S'}(V, A)| * (|S''| + 1) * |Hom_{S'}(B, W)|.
  std::uint64_t cap = vPrime.order;
  for (std::size_t v = 0; v < s.vertices().size(); ++v) {
    const std::uint64_t intoA = vPrime.table->hom_set(v, f.src).size();
    if (intoA == 0) continue;
    for (std::size_t w = 0; w < s.vertices().size(); ++w) {
      const std::uint64_t outOfB = vPrime.table->hom_set(f.dst, w).size();
      cap = sat_add(cap, sat_mul(intoA, sat_mul(vRest.order + 1, outOfB)));
    }
  }
  note(diag, "final closure cap: " + std::to_string(cap));
  try {
    ClosureResult r = bfs_closure(s, cap, {}, trace);
    Verdict verdict;
    verdict.finite = true;
    verdict.order = r.table.size();
    verdict.table = std::move(r.table);
    return verdict;
  } catch (const EngineError& e) {
    if (e.code() == Errc::BudgetExceeded)
      fail(Errc::InternalCapExceeded,
           "full closure exceeded the reconstruction bound: " + std::string(e.what()));
    throw;
  }
}

// ---------------------------------------------------------------------------
// Witness validation (system assumed to be in canonical order)

void validate_impl(const InfinitenessWitness& w, const System& s, const Options& opt);

void check(bool ok, const std::string& what) {
  if (!ok) fail(Errc::InvalidWitness, what);
}

void validate_infinite_order(const WitnessInfiniteOrder& w, const System& s,
                             const Options& opt) {
  check(w.vertex < s.vertices().size(), "witness vertex is out of range");
  ClosureEntry e = recompose_word(s, w.word, w.vertex);
  check(e.src == w.vertex && e.dst == w.vertex,
        "witness word is not an endomorphism at the claimed vertex");
  check(e.morph.coord_key() == w.morph.coord_key(),
        "witness word does not recompose to the stored morphism");

  IntegralModel model = model_of(s);
  ProbePair probes = find_probe_pair(s.vertex(w.vertex), model, opt);

  if (w.cert.kind == OrderCertificate::Kind::NonBijectiveAction) {
    const LocalProbe* probe = nullptr;
    if (probes.first.p == w.cert.prime) probe = &probes.first;
    if (probes.second.p == w.cert.prime) probe = &probes.second;
    check(probe != nullptr, "certificate prime is not one of the probe primes");
    std::vector<std::uint32_t> table = action_on_points(e.morph, *probe);
    check(!table_is_bijective(table), "the action table is bijective");
    auto ia = probe->index.find(probe->encode(w.cert.collideA));
    auto ib = probe->index.find(probe->encode(w.cert.collideB));
    check(ia != probe->index.end() && ib != probe->index.end(),
          "claimed colliding points are not model points");
    check(ia->second != ib->second, "claimed colliding points coincide");
    check(table[ia->second] == table[ib->second],
          "claimed colliding points have distinct images");
    return;
  }

  std::vector<std::uint32_t> t1 = action_on_points(e.morph, probes.first);
  std::vector<std::uint32_t> t2 = action_on_points(e.morph, probes.second);
  check(table_is_bijective(t1) && table_is_bijective(t2),
        "a power certificate requires bijective action tables");
  Integer n = lcm(table_order(t1), table_order(t2));
  check(n == w.cert.exponent, "stored exponent differs from the recomputed one");
  Morphism power = morphism_power(e.morph, n, opt);
  check(!power.is_identity(), "the certified power is the identity");
  check(power.coords() == w.cert.powerCoords,
        "stored power coordinates differ from the recomputation");
}

void validate_kernel_collision(const WitnessKernelCollision& w, const System& s,
                               const Options& opt) {
  check(w.vertex < s.vertices().size(), "witness vertex is out of range");
  ClosureEntry ef = recompose_word(s, w.wordF, w.vertex);
  ClosureEntry eg = recompose_word(s, w.wordG, w.vertex);
  check(ef.src == w.vertex && ef.dst == w.vertex && eg.src == w.vertex && eg.dst == w.vertex,
        "collision words are not endomorphisms at the claimed vertex");
  check(ef.morph.coord_key() == w.f.coord_key() && eg.morph.coord_key() == w.g.coord_key(),
        "collision words do not recompose to the stored morphisms");
  check(w.f.coord_key() != w.g.coord_key(), "colliding endomorphisms are canonically equal");

  IntegralModel model = model_of(s);
  ProbePair probes = find_probe_pair(s.vertex(w.vertex), model, opt);
  check(action_on_points(ef.morph, probes.first) == action_on_points(eg.morph, probes.first) &&
            action_on_points(ef.morph, probes.second) ==
                action_on_points(eg.morph, probes.second),
        "the action pairs differ");

  check(sgn(w.orderG) > 0, "the stored order of g is not positive");
  check(morphism_power(eg.morph, w.orderG, opt).is_identity(),
        "the stored order is not an order of g");
  Morphism h = compose(ef.morph, morphism_power(eg.morph, Integer(w.orderG - 1), opt));
  check(h.coord_key() == w.h.coord_key(), "the derived composite differs from the stored one");
  check(!h.is_identity(), "the derived composite is the identity");
  check(table_is_identity(action_on_points(h, probes.first)) &&
            table_is_identity(action_on_points(h, probes.second)),
        "the derived composite does not act trivially at both probes");
}

void validate_subsystem(const WitnessSubsystem& w, const System& s, const Options& opt) {
  check(w.inner != nullptr, "missing inner witness");
  validate_impl(*w.inner, witness_child_system(s, w.step), opt);
}

void validate_impl(const InfinitenessWitness& w, const System& s, const Options& opt) {
  std::visit(Overload{[&](const WitnessInfiniteOrder& x) { validate_infinite_order(x, s, opt); },
                      [&](const WitnessKernelCollision& x) {
                        validate_kernel_collision(x, s, opt);
                      },
                      [&](const WitnessSubsystem& x) { validate_subsystem(x, s, opt); }},
             w.w);
}

}  // namespace

Verdict decide_dominant_component(const System& s, const Options& opt, const Trace& trace,
                                  std::vector<std::string>* diag) {
  return decide_dominant_impl(canonical_system(s), opt, trace, diag);
}

Verdict decide_system(const System& s, const Options& opt, const Trace& trace,
                      std::vector<std::string>* diag) {
  return decide_system_impl(canonical_system(s), opt, trace, diag);
}

bool validate_witness(const InfinitenessWitness& w, const System& s, const Options& opt) {
  validate_impl(w, canonical_system(s), opt);
  return true;
}

System canonical_system(const System& s) {
  std::vector<std::size_t> idx(s.arrows().size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::string> keys;
  keys.reserve(s.arrows().size());
  for (const Arrow& a : s.arrows()) keys.push_back(a.morph.coord_key());
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const Arrow& x = s.arrows()[a];
    const Arrow& y = s.arrows()[b];
    if (x.src != y.src) return x.src < y.src;
    if (x.dst != y.dst) return x.dst < y.dst;
    return keys[a] < keys[b];
  });
  std::vector<Arrow> arrows;
  arrows.reserve(idx.size());
  for (std::size_t i : idx) arrows.push_back(s.arrows()[i]);
  return System(s.vertices(), std::move(arrows));
}

System witness_child_system(const System& s, const SubsystemStep& step) {
  if (step.kind != SubsystemStep::Kind::Restricted)
    return build_subquiver(s, step.vertexClass, step.keptArrows, true);
  if (step.arrow >= s.arrows().size())
    fail(Errc::InvalidWitness, "restriction step names a missing arrow");
  VarietyPtr z = image_closure(s.arrows()[step.arrow].morph,
                               restriction_vertex_name(s, step.arrow));
  std::vector<std::vector<std::size_t>> homWords = step.homWords;
  return build_restricted(s, step.arrow, std::move(z), homWords, true);
}

}  // namespace catfin
