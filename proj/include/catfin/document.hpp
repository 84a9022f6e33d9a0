// catfin: the on-disk document formats.
//
// A system document is a single JSON file describing vertices (name,
// variables, ideal generators as polynomial strings), arrows (name, src/dst
// vertex names, coordinate strings), an options block, and an optional orbit
// block (base vertex and exact rational point) for the orbit subcommand.
// Verdict and orbit-report documents are JSON with a fixed field order, so
// equal runs produce byte-identical files; diagnostics never include timings.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "catfin/decide.hpp"
#include "catfin/dynamics.hpp"
#include "catfin/options.hpp"
#include "catfin/system.hpp"

namespace catfin {

struct VertexSpec {
  std::string name;
  std::vector<std::string> vars;
  std::vector<std::string> ideal;  // polynomial strings in `vars`
};

struct ArrowSpec {
  std::string name;
  std::string src, dst;             // vertex names
  std::vector<std::string> coords;  // dst-ambient many strings in src vars
};

struct OrbitSpec {
  std::string vertex;              // base vertex name
  std::vector<std::string> point;  // exact rationals, e.g. "-3/2"
  bool pairProbe = true;           // run the pairwise criterion probe
};

struct SystemDocument {
  std::vector<VertexSpec> vertices;
  std::vector<ArrowSpec> arrows;
  Options options;  // defaults filled in for absent fields
  std::optional<OrbitSpec> orbit;
};

// Strict parse: unknown keys, wrong types, duplicate names, and dangling
// vertex references are input errors; malformed JSON is a SyntaxError.
SystemDocument parse_system_document(const std::string& text);

// Deterministic serialization (fixed key order, options fully materialized);
// parse(serialize(parse(t))) is structurally identical to parse(t).
std::string serialize_system_document(const SystemDocument& doc);

// Exact rational from a decimal string like "7", "-3/4"; SyntaxError on
// malformed input or zero denominator.
Rational parse_rational_string(const std::string& text);

// Instantiates the varieties and morphisms (polynomial parsing, ideal
// properness, morphism well-definedness all enforced here).
System build_system(const SystemDocument& doc);

// Serialized verdict for a decision run.  `s` must be the canonical system
// the verdict refers to (canonical_system of the built system); diagnostics
// lines are included verbatim.
std::string serialize_verdict_document(const Verdict& v, const System& s,
                                       const std::vector<std::string>& diagnostics);

// Serialized "aborted" verdict for an engine abort.
std::string serialize_abort_document(const std::string& errorCode, const std::string& message,
                                     const std::vector<std::string>& diagnostics);

struct ParsedVerdict {
  std::string verdict;  // "finite" | "infinite" | "aborted"
  std::uint64_t order = 0;
  std::size_t homTableSize = 0;
  std::optional<InfinitenessWitness> witness;  // rebuilt against the canonical system
  std::string errorCode;  // aborted only
};

// Parses a verdict document back, rebuilding the witness (if any) against
// the same canonical system so it can be re-validated with validate_witness.
ParsedVerdict parse_verdict_document(const std::string& text, const System& s);

// Serialized report for an orbit run.  `generatorNames` parallels
// action.generators; `cyclic` parallels them with per-generator results;
// `mPeriodic` is meaningful only when the orbit is complete.
std::string serialize_orbit_document(const MonoidAction& action,
                                     const std::vector<std::string>& generatorNames,
                                     const OrbitReport& report, bool mPeriodic,
                                     const std::vector<PeriodicityResult>& cyclic,
                                     const std::optional<PairProbeReport>& probe,
                                     const std::vector<std::string>& diagnostics);

}  // namespace catfin
