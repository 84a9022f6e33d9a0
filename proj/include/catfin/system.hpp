// catfin: finite systems (quivers of varieties and morphisms), path-component
// analysis, and breadth-first closure of the generated morphism class.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catfin/options.hpp"
#include "catfin/variety.hpp"

namespace catfin {

// One generating arrow of a system.  The morphism's source/target varieties
// must be (pointer-identical to) the system vertices named by src/dst.
struct Arrow {
  std::string name;
  std::size_t src = 0;
  std::size_t dst = 0;
  Morphism morph;

  Arrow(std::string name_, std::size_t src_, std::size_t dst_, Morphism m)
      : name(std::move(name_)), src(src_), dst(dst_), morph(std::move(m)) {}
};

// A finite quiver of varieties and morphisms: the generating data of a
// subcategory.  Construction validates that every arrow's endpoints are
// in range and consistent with its morphism.
class System {
 public:
  System(std::vector<VarietyPtr> vertices, std::vector<Arrow> arrows);

  const std::vector<VarietyPtr>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const VarietyPtr& vertex(std::size_t i) const { return vertices_[i]; }
  std::size_t vertex_index(const Variety& v) const;  // InputError if absent

 private:
  std::vector<VarietyPtr> vertices_;
  std::vector<Arrow> arrows_;
};

// Partition of the vertices into path-equivalence classes (mutual
// reachability), with every arrow classified as core (inside a class) or
// bridge (between classes).
struct PathComponentReport {
  std::vector<std::vector<std::size_t>> classes;  // ascending vertex indices
  std::vector<std::size_t> classOf;               // vertex index -> class index
  std::vector<std::size_t> coreArrows;            // arrow indices, ascending
  std::vector<std::size_t> bridgeArrows;          // arrow indices, ascending
};

// Classes are numbered by first appearance when scanning vertices in order,
// so the report is invariant under arrow-list permutation.
PathComponentReport path_components(const System& s);

// One morphism discovered by the closure, with its word in the generators:
// word = {i1, ..., ik} denotes arrows[i1] o ... o arrows[ik] (the rightmost
// arrow applied first); the empty word is the identity at src == dst.
struct ClosureEntry {
  Morphism morph;
  std::size_t src = 0;
  std::size_t dst = 0;
  std::vector<std::size_t> word;
};

// The morphism class discovered so far, deduplicated by canonical coordinate
// forms.  When complete() it is literally closed under composition and
// contains every vertex identity.
class HomTable {
 public:
  std::size_t size() const { return entries_.size(); }
  const ClosureEntry& entry(std::size_t i) const { return entries_[i]; }
  // Entry indices with the given endpoints, in discovery order.
  const std::vector<std::size_t>& hom_set(std::size_t src, std::size_t dst) const;
  std::optional<std::size_t> find(std::size_t src, std::size_t dst,
                                  const std::string& coordKey) const;
  bool complete() const { return complete_; }

  // Returns the new entry's index, or the existing one's if the canonical
  // form is already present (added == false).
  std::pair<std::size_t, bool> insert(ClosureEntry entry);
  void mark_complete() { complete_ = true; }

 private:
  std::vector<ClosureEntry> entries_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> homSets_;
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::string, std::size_t>> index_;
  bool complete_ = false;
};

// Renders an entry's word with arrow names, e.g. "g∘f"; identities render as
// "id_<vertex name>".
std::string word_string(const System& s, const ClosureEntry& entry);

struct ClosureHooks {
  // Invoked once per newly recorded entry (seeds included), after it has been
  // added to the table.  Returning false stops the closure immediately; the
  // result is then incomplete with hookStopped set.
  std::function<bool(const HomTable&, std::size_t)> onDiscovery;
};

struct ClosureResult {
  HomTable table;
  bool hookStopped = false;
  std::uint64_t budgetUsed = 0;  // number of entries recorded
};

// Worklist closure of the generated morphism class: seeds the vertex
// identities (vertex order) and the generators (arrow order), then composes
// compatible pairs FIFO, deduplicating by canonical form.  For each popped
// entry m and each previously recorded entry e (discovery order), e∘m is
// tried before m∘e.  Throws BudgetExceeded when more than cap entries are
// needed and no hook stopped the run.
ClosureResult bfs_closure(const System& s, std::uint64_t cap,
                          const ClosureHooks& hooks = {}, const Trace& trace = {});

}  // namespace catfin
