#include "catfin/dynamics.hpp"

#include <map>
#include <queue>
#include <set>
#include <span>
#include <utility>

#include "catfin/error.hpp"
#include "catfin/poly.hpp"

namespace catfin {

Point apply_at_point(const Morphism& f, const Point& p) {
  if (p.size() != f.src()->ambient_dim())
    fail(Errc::InputError, "point arity does not match the source ambient dimension");
  Point out;
  out.reserve(f.coords().size());
  for (const Poly& c : f.coords())
    out.push_back(evaluate(c, std::span<const Rational>(p), RationalOps{}));
  return out;
}

std::string point_key(const Point& p) {
  std::string key;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) key += ',';
    key += rational_to_string(p[i]);
  }
  return key;
}

MonoidAction::MonoidAction(VarietyPtr v, std::vector<Morphism> gens, Point base)
    : variety(std::move(v)), generators(std::move(gens)), basePoint(std::move(base)) {
  if (!variety) fail(Errc::InputError, "monoid action requires a variety");
  for (const Morphism& g : generators)
    if (g.src() != variety || g.dst() != variety)
      fail(Errc::InputError, "monoid action generators must be endomorphisms of the variety");
  if (basePoint.size() != variety->ambient_dim())
    fail(Errc::InputError, "base point arity does not match the ambient dimension");
  for (const Poly& g : variety->ideal().gens())
    if (evaluate(g, std::span<const Rational>(basePoint), RationalOps{}) != 0)
      fail(Errc::PointNotOnVariety,
           "base point does not satisfy the defining ideal of '" + variety->name() + "'");
}

OrbitReport orbit_bfs(const MonoidAction& action, std::uint64_t budget) {
  OrbitReport report;
  report.transitions.assign(action.generators.size(), {});

  std::map<std::string, std::size_t> index;
  bool overflow = false;
  // Returns the index of the point, or npos when storing it would exceed the
  // budget (x itself is always stored).
  auto lookup = [&](Point p) -> std::size_t {
    std::string key = point_key(p);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (!report.points.empty() && report.points.size() >= budget) {
      overflow = true;
      return OrbitReport::npos;
    }
    std::size_t idx = report.points.size();
    report.points.push_back(std::move(p));
    for (auto& t : report.transitions) t.push_back(OrbitReport::npos);
    index.emplace(std::move(key), idx);
    return idx;
  };

  std::queue<std::size_t> fifo;
  fifo.push(lookup(action.basePoint));
  while (!fifo.empty()) {
    std::size_t i = fifo.front();
    fifo.pop();
    for (std::size_t g = 0; g < action.generators.size(); ++g) {
      if (report.transitions[g][i] != OrbitReport::npos) continue;
      std::size_t before = report.points.size();
      std::size_t j = lookup(apply_at_point(action.generators[g], report.points[i]));
      report.transitions[g][i] = j;
      if (j != OrbitReport::npos && report.points.size() > before) fifo.push(j);
    }
  }
  report.complete = !overflow;
  report.budgetUsed = report.points.size();
  return report;
}

PeriodicityResult cyclic_periodicity(const Morphism& f, const Point& x, std::uint64_t budget) {
  // `budget` caps the number of distinct points stored; an orbit whose cycle
  // closes on exactly budget points is still resolved, since the repeat is
  // checked before the cap.
  std::map<std::string, std::uint64_t> seen;
  Point y = x;
  for (std::uint64_t step = 0;; ++step) {
    std::string key = point_key(y);
    auto it = seen.find(key);
    if (it != seen.end()) {
      PeriodicityResult r;
      r.tail = it->second;
      r.period = step - it->second;
      r.kind = r.tail == 0 ? PeriodicityResult::Kind::Periodic
                           : PeriodicityResult::Kind::Preperiodic;
      return r;
    }
    if (seen.size() >= budget) return {};
    seen.emplace(std::move(key), step);
    y = apply_at_point(f, y);
  }
}

bool m_periodicity(const OrbitReport& report) {
  if (!report.complete)
    fail(Errc::IncompleteOrbit, "the periodicity check requires a complete orbit");
  const std::size_t n = report.points.size();
  for (const std::vector<std::size_t>& t : report.transitions) {
    std::vector<bool> hit(n, false);
    for (std::size_t img : t) {
      if (img == OrbitReport::npos || hit[img]) return false;
      hit[img] = true;
    }
  }
  return true;
}

namespace {

struct Element {
  Morphism morph;
  std::vector<std::size_t> word;
};

// All distinct monoid elements expressible as words of length <= radius, in
// breadth-first word order starting from the identity (empty word).
std::vector<Element> short_elements(const MonoidAction& action, std::uint32_t radius) {
  std::vector<Element> elems{{Morphism::identity(action.variety), {}}};
  std::map<std::string, std::size_t> seen{{elems[0].morph.coord_key(), 0}};
  std::size_t levelBegin = 0;
  for (std::uint32_t len = 1; len <= radius; ++len) {
    std::size_t levelEnd = elems.size();
    for (std::size_t e = levelBegin; e < levelEnd; ++e)
      for (std::size_t g = 0; g < action.generators.size(); ++g) {
        Morphism m = compose(elems[e].morph, action.generators[g]);
        std::string key = m.coord_key();
        if (seen.count(key)) continue;
        std::vector<std::size_t> word = elems[e].word;
        word.push_back(g);
        seen.emplace(std::move(key), elems.size());
        elems.push_back({std::move(m), std::move(word)});
      }
    levelBegin = levelEnd;
  }
  return elems;
}

// |<f> . y| by exact iteration; overflow past the budget is signalled by
// returning budget + 1.  An orbit of exactly `budget` points is still
// measured, since the repeat is checked before the cap.
std::uint64_t cyclic_orbit_size(const Morphism& f, const Point& y, std::uint64_t budget) {
  std::set<std::string> seen;
  Point z = y;
  for (;;) {
    std::string key = point_key(z);
    if (seen.count(key)) return seen.size();
    if (seen.size() >= budget) return budget + 1;
    seen.insert(std::move(key));
    z = apply_at_point(f, z);
  }
}

}  // namespace

PairProbeReport pair_criterion_probe(const MonoidAction& action, std::uint32_t wordRadius,
                                     std::uint64_t budget) {
  PairProbeReport report;
  report.fullOrbitComplete = orbit_bfs(action, budget).complete;

  std::vector<Element> elems = short_elements(action, wordRadius);
  for (const Element& f : elems) {
    for (const Element& g : elems) {
      Point y = apply_at_point(g.morph, action.basePoint);
      std::uint64_t size = cyclic_orbit_size(f.morph, y, budget);
      if (size > budget) {
        report.witnesses.push_back(
            {f.word, g.word, f.morph.coord_key(), g.morph.coord_key()});
      } else if (size > report.maxCyclicOrbit) {
        report.maxCyclicOrbit = size;
      }
    }
  }

  // Two-generated sub-orbits <f, g> . x, measured through orbit_bfs.
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = a; b < elems.size(); ++b) {
      MonoidAction sub(action.variety, {elems[a].morph, elems[b].morph}, action.basePoint);
      OrbitReport r = orbit_bfs(sub, budget);
      if (r.complete && r.points.size() > report.maxPairOrbit)
        report.maxPairOrbit = r.points.size();
    }

  report.consistent = !(report.fullOrbitComplete && !report.witnesses.empty());
  return report;
}

}  // namespace catfin
