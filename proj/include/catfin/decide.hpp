// catfin: the finiteness decision procedure for the category generated by a
// system, with independently checkable infiniteness witnesses.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "catfin/options.hpp"
#include "catfin/probe.hpp"
#include "catfin/system.hpp"

namespace catfin {

struct InfinitenessWitness;
using WitnessPtr = std::shared_ptr<const InfinitenessWitness>;

// An endomorphism whose certified power differs from the identity (or whose
// probe action is non-bijective): either way it generates an infinite cyclic
// monoid inside the category.
struct WitnessInfiniteOrder {
  std::size_t vertex = 0;              // vertex index in the witnessed system
  std::vector<std::size_t> word;       // generator word of the endomorphism
  Morphism morph;                      // its canonical form
  OrderCertificate cert;
};

// Two distinct canonical endomorphisms with identical action pairs; the
// derived h = f o g^(orderG - 1) is a nonidentity endomorphism acting
// trivially at both probes, hence of infinite order.
struct WitnessKernelCollision {
  std::size_t vertex = 0;
  std::vector<std::size_t> wordF, wordG;
  Morphism f, g;
  Integer orderG;                      // exact finite order of g
  Morphism h;
};

// One step of the structural recursion, carrying enough data to rebuild the
// subsystem from the parent during validation.
struct SubsystemStep {
  enum class Kind {
    Component,     // keep vertexClass and keptArrows (a path class, core arrows)
    DroppedArrow,  // keep all vertices; keptArrows = all arrows except `arrow`
    Restricted,    // image restriction through the non-dominant arrows[arrow]:
                   // one vertex Z = image_closure(f); child arrows are
                   // (f o g)|Z for the recorded parent-word homs g: B -> A
  };
  Kind kind = Kind::Component;
  std::vector<std::size_t> vertexClass;           // parent vertex indices kept
  std::vector<std::size_t> keptArrows;            // parent arrow indices, in child order
  std::size_t arrow = 0;                          // the removed / restricting arrow
  std::vector<std::vector<std::size_t>> homWords; // Restricted: parent words for the g's
};

struct WitnessSubsystem {
  SubsystemStep step;
  WitnessPtr inner;
};

struct InfinitenessWitness {
  std::variant<WitnessInfiniteOrder, WitnessKernelCollision, WitnessSubsystem> w;
};

struct Verdict {
  bool finite = false;
  std::uint64_t order = 0;          // |morphism class| including identities
  std::optional<HomTable> table;    // complete closure (finite verdicts)
  WitnessPtr witness;               // non-null on infinite verdicts
};

// Decides a path-connected system whose arrows are all dominant, by closure
// with two hooks: every new endomorphism runs the finite-order test, and a
// per-vertex map from action pairs to endomorphisms detects collisions.
// Either hook firing gives an Infinite verdict; otherwise the closure
// stabilizes and the verdict is Finite with the exact order.  InputError if
// the preconditions fail; NoProbeFound / BudgetExceeded are aborts.
Verdict decide_dominant_component(const System& s, const Options& opt,
                                  const Trace& trace = {},
                                  std::vector<std::string>* diagnostics = nullptr);

// Full decision procedure: splits into path components, recurses per
// component; within a component either decides directly (all arrows dominant)
// or removes the first non-dominant arrow f, decides the rest, then decides
// the restriction of everything through the image of f, and finally closes
// the full system under a cap derived from the sub-verdict orders.
Verdict decide_system(const System& s, const Options& opt, const Trace& trace = {},
                      std::vector<std::string>* diagnostics = nullptr);

// Recomputes every claim inside the witness from scratch against s: words are
// recomposed, action tables and certificates recomputed, subsystems rebuilt.
// Returns true on success; throws InvalidWitness naming the first failed
// check otherwise.
bool validate_witness(const InfinitenessWitness& w, const System& s, const Options& opt);

// The canonical generator ordering used internally by every public entry
// point (stable sort by source, target, coordinate key): all generator
// indices appearing in witnesses and hom tables refer to it.  Idempotent.
System canonical_system(const System& s);

// Rebuilds the child system described by one witness step from its (already
// canonical) parent, exactly as the decision recursion built it; malformed
// step data raises InvalidWitness.
System witness_child_system(const System& s, const SubsystemStep& step);

}  // namespace catfin
