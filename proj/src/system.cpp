#include "catfin/system.hpp"

#include <deque>
#include <sstream>

#include "catfin/error.hpp"

namespace catfin {

System::System(std::vector<VarietyPtr> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    const Arrow& a = arrows_[i];
    if (a.src >= vertices_.size() || a.dst >= vertices_.size())
      fail(Errc::InputError, "arrow " + std::to_string(i) + " has an out-of-range endpoint");
    if (a.morph.src().get() != vertices_[a.src].get() ||
        a.morph.dst().get() != vertices_[a.dst].get())
      fail(Errc::InputError,
           "arrow " + std::to_string(i) + " disagrees with its declared endpoints");
  }
}

std::size_t System::vertex_index(const Variety& v) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].get() == &v) return i;
  fail(Errc::InputError, "variety '" + v.name() + "' is not a vertex of the system");
}

PathComponentReport path_components(const System& s) {
  const std::size_t n = s.vertices().size();
  // reach[v] = set of vertices with a directed path from v (length >= 0)
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  std::vector<std::vector<std::size_t>> out(n);
  for (const Arrow& a : s.arrows()) out[a.src].push_back(a.dst);
  for (std::size_t v = 0; v < n; ++v) {
    std::deque<std::size_t> fifo{v};
    reach[v][v] = 1;
    while (!fifo.empty()) {
      std::size_t w = fifo.front();
      fifo.pop_front();
      for (std::size_t t : out[w])
        if (!reach[v][t]) {
          reach[v][t] = 1;
          fifo.push_back(t);
        }
    }
  }

  PathComponentReport r;
  r.classOf.assign(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    if (r.classOf[v] != n) continue;
    std::vector<std::size_t> cls;
    for (std::size_t w = v; w < n; ++w)
      if (reach[v][w] && reach[w][v]) {
        r.classOf[w] = r.classes.size();
        cls.push_back(w);
      }
    r.classes.push_back(std::move(cls));
  }
  for (std::size_t i = 0; i < s.arrows().size(); ++i) {
    const Arrow& a = s.arrows()[i];
    (r.classOf[a.src] == r.classOf[a.dst] ? r.coreArrows : r.bridgeArrows).push_back(i);
  }
  return r;
}

const std::vector<std::size_t>& HomTable::hom_set(std::size_t src, std::size_t dst) const {
  static const std::vector<std::size_t> kEmpty;
  auto it = homSets_.find({src, dst});
  return it == homSets_.end() ? kEmpty : it->second;
}

std::optional<std::size_t> HomTable::find(std::size_t src, std::size_t dst,
                                          const std::string& coordKey) const {
  auto it = index_.find({src, dst});
  if (it == index_.end()) return std::nullopt;
  auto jt = it->second.find(coordKey);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

std::pair<std::size_t, bool> HomTable::insert(ClosureEntry entry) {
  auto& keyMap = index_[{entry.src, entry.dst}];
  auto [it, added] = keyMap.emplace(entry.morph.coord_key(), entries_.size());
  if (!added) return {it->second, false};
  homSets_[{entry.src, entry.dst}].push_back(entries_.size());
  entries_.push_back(std::move(entry));
  return {entries_.size() - 1, true};
}

std::string word_string(const System& s, const ClosureEntry& entry) {
  if (entry.word.empty()) return "id_" + s.vertex(entry.src)->name();
  std::string out;
  for (std::size_t k = 0; k < entry.word.size(); ++k) {
    if (k) out += "∘";  // function-composition sign
    const Arrow& a = s.arrows()[entry.word[k]];
    out += a.name.empty() ? "a" + std::to_string(entry.word[k]) : a.name;
  }
  return out;
}

namespace {

std::vector<std::size_t> concat_words(const std::vector<std::size_t>& left,
                                      const std::vector<std::size_t>& right) {
  std::vector<std::size_t> w = left;
  w.insert(w.end(), right.begin(), right.end());
  return w;
}

}  // namespace

ClosureResult bfs_closure(const System& s, std::uint64_t cap, const ClosureHooks& hooks,
                          const Trace& trace) {
  ClosureResult result;
  HomTable& table = result.table;
  std::deque<std::size_t> fifo;

  // Records an entry; returns false when a hook ordered an early stop.
  auto record = [&](ClosureEntry entry) -> bool {
    auto [idx, added] = table.insert(std::move(entry));
    if (!added) return true;
    if (table.size() > cap) {
      std::ostringstream os;
      os << "closure budget exhausted: more than " << cap << " morphisms; last word "
         << word_string(s, table.entry(idx));
      fail(Errc::BudgetExceeded, os.str());
    }
    if (trace.full()) trace.detail("closure: + " + word_string(s, table.entry(idx)));
    fifo.push_back(idx);
    if (hooks.onDiscovery && !hooks.onDiscovery(table, idx)) {
      result.hookStopped = true;
      return false;
    }
    return true;
  };

  if (trace.steps())
    trace.step("closure: seeding " + std::to_string(s.vertices().size()) + " identities, " +
               std::to_string(s.arrows().size()) + " generators");
  for (std::size_t v = 0; v < s.vertices().size(); ++v) {
    if (!record({Morphism::identity(s.vertex(v)), v, v, {}})) {
      result.budgetUsed = table.size();
      return result;
    }
  }
  for (std::size_t i = 0; i < s.arrows().size(); ++i) {
    const Arrow& a = s.arrows()[i];
    if (!record({a.morph, a.src, a.dst, {i}})) {
      result.budgetUsed = table.size();
      return result;
    }
  }

  while (!fifo.empty()) {
    const std::size_t mIdx = fifo.front();
    fifo.pop_front();
    const std::size_t snapshot = table.size();
    for (std::size_t eIdx = 0; eIdx < snapshot; ++eIdx) {
      // e o m (m applied first), then m o e.
      if (table.entry(eIdx).src == table.entry(mIdx).dst) {
        const ClosureEntry& e = table.entry(eIdx);
        const ClosureEntry& m = table.entry(mIdx);
        ClosureEntry c{compose(e.morph, m.morph), m.src, e.dst, concat_words(e.word, m.word)};
        if (!record(std::move(c))) {
          result.budgetUsed = table.size();
          return result;
        }
      }
      if (table.entry(mIdx).src == table.entry(eIdx).dst) {
        const ClosureEntry& e = table.entry(eIdx);
        const ClosureEntry& m = table.entry(mIdx);
        ClosureEntry c{compose(m.morph, e.morph), e.src, m.dst, concat_words(m.word, e.word)};
        if (!record(std::move(c))) {
          result.budgetUsed = table.size();
          return result;
        }
      }
    }
  }
  table.mark_complete();
  result.budgetUsed = table.size();
  if (trace.steps())
    trace.step("closure: stabilized at " + std::to_string(table.size()) + " morphisms");
  return result;
}

}  // namespace catfin
