#include "catfin/error.hpp"

namespace catfin {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::SyntaxError: return "syntax-error";
    case Errc::UnknownVariable: return "unknown-variable";
    case Errc::ImproperIdeal: return "improper-ideal";
    case Errc::SourceTargetMismatch: return "source-target-mismatch";
    case Errc::NotWellDefined: return "not-well-defined";
    case Errc::NotDominant: return "not-dominant";
    case Errc::PointNotOnVariety: return "point-not-on-variety";
    case Errc::InvalidWitness: return "invalid-witness";
    case Errc::InputError: return "input-error";
    case Errc::NoProbeFound: return "no-probe-found";
    case Errc::NonInvertibleDenominator: return "non-invertible-denominator";
    case Errc::BudgetExceeded: return "budget-exceeded";
    case Errc::PointSetCapExceeded: return "pointset-cap-exceeded";
    case Errc::ProbeInconsistency: return "probe-inconsistency";
    case Errc::InternalCapExceeded: return "internal-cap-exceeded";
    case Errc::IncompleteOrbit: return "incomplete-orbit";
  }
  return "unknown";
}

bool errc_is_input_error(Errc c) {
  switch (c) {
    case Errc::SyntaxError:
    case Errc::UnknownVariable:
    case Errc::ImproperIdeal:
    case Errc::SourceTargetMismatch:
    case Errc::NotWellDefined:
    case Errc::NotDominant:
    case Errc::PointNotOnVariety:
    case Errc::InvalidWitness:
    case Errc::InputError:
      return true;
    default:
      return false;
  }
}

}  // namespace catfin
