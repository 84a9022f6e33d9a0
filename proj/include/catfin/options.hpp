// catfin: runtime options and the trace sink threaded through the engine.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace catfin {

enum class TraceLevel { None, Steps, Full };

struct Options {
  // Largest prime consulted when searching for probe primes.
  std::uint32_t primeBound = 97;
  // Hard cap on the number of truncated-ring points kept per probe.
  std::uint64_t pointSetCap = 50000;
  // Cap on the number of distinct points explored by orbit searches.
  std::uint64_t orbitBudget = 10000;
  // Maximum word length enumerated by the pairwise orbit probe.
  std::uint32_t wordRadius = 4;
  TraceLevel trace = TraceLevel::None;

  // Safety caps.  Hitting one is an abort (never a verdict): either the
  // configuration is too small for the input or an internal invariant broke.
  std::uint64_t closureCap = 100000;     // morphisms per closure run
  std::uint64_t maxExponent = 1000000;   // largest certified power exponent
  std::uint64_t maxPolyTerms = 100000;   // term budget for composed coordinates
  std::uint64_t rawTupleCap = 30000000;  // candidate truncated tuples scanned
};

// Writes progress lines to a stream (normally stderr); never part of the
// output document, so it is allowed to be nondeterministic (timings).
class Trace {
 public:
  Trace() = default;
  Trace(TraceLevel level, std::ostream* out) : level_(level), out_(out) {}
  bool steps() const { return out_ && level_ >= TraceLevel::Steps; }
  bool full() const { return out_ && level_ >= TraceLevel::Full; }
  void step(const std::string& line) const;
  void detail(const std::string& line) const;

 private:
  TraceLevel level_ = TraceLevel::None;
  std::ostream* out_ = nullptr;
};

}  // namespace catfin
