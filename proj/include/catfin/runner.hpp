// catfin: end-to-end pipelines behind the CLI subcommands.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "catfin/options.hpp"

namespace catfin {

// Exit statuses of the command-line tool, a total function of the outcome.
inline constexpr int kExitFinite = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInfinite = 10;
inline constexpr int kExitAborted = 20;

// Command-line values that take precedence over the document's options
// block when explicitly given.
struct CliOverrides {
  std::optional<std::uint32_t> primeBound;
  std::optional<std::uint64_t> pointSetCap;
  std::optional<std::uint64_t> orbitBudget;
  std::optional<std::uint32_t> wordRadius;
  std::optional<TraceLevel> trace;
};

struct RunResult {
  int exitCode = kExitInputError;
  std::string document;  // serialized output; empty on input errors
  std::string message;   // one-line error description for input errors
};

// Decide pipeline: parse document, build and canonicalize the system, decide,
// serialize the verdict.  Engine aborts become "aborted" documents (exit 20);
// input-shaped failures produce no document, only a message (exit 1).
RunResult run_decide(const std::string& documentText, const CliOverrides& overrides,
                     std::ostream& traceOut);

// Orbit pipeline: requires the document's orbit block; the acting generators
// are the endo arrows at the named vertex, in canonical order (coordinate
// key, ties by document order) so the report does not depend on arrow-list
// order.  Reports always exit 0 unless the input is bad (1) or the engine
// aborts (20).
RunResult run_orbit(const std::string& documentText, const CliOverrides& overrides,
                    std::ostream& traceOut);

// Writes `content` to `path` through a temp file plus rename, so readers
// never observe a half-written document; InputError on I/O failure.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace catfin
