// catfin: error codes and the exception type shared by all layers.
#pragma once

#include <stdexcept>
#include <string>

namespace catfin {

// Every failure the engine can signal.  The CLI maps these to exit codes:
// input-shaped problems exit 1, resource/configuration aborts exit 20.
enum class Errc {
  // input-shaped (exit 1)
  SyntaxError,
  UnknownVariable,
  ImproperIdeal,
  SourceTargetMismatch,
  NotWellDefined,
  NotDominant,
  PointNotOnVariety,
  InvalidWitness,
  InputError,
  // aborts: resource limits / missing configuration (exit 20)
  NoProbeFound,
  NonInvertibleDenominator,
  BudgetExceeded,
  PointSetCapExceeded,
  ProbeInconsistency,
  InternalCapExceeded,
  IncompleteOrbit,
};

const char* errc_name(Errc c);

// True for errors that indicate malformed input rather than an abort.
bool errc_is_input_error(Errc c);

class EngineError : public std::runtime_error {
 public:
  EngineError(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw EngineError(code, message);
}

}  // namespace catfin
