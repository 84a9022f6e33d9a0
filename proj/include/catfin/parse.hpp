// catfin: text -> polynomial parsing.
//
// Grammar (whitespace insignificant):
//   expr     := sign? term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := rational | identifier ('^' natural)? | '(' expr ')'
//   rational := natural ('/' positive-natural)?
// Identifiers are [A-Za-z_][A-Za-z0-9_]*, matched against the declared
// variable list.  The optional leading sign is a convenience superset so
// that "-x" and "(-x)" parse; every string the base grammar accepts parses
// identically.
#pragma once

#include <string>
#include <vector>

#include "catfin/poly.hpp"

namespace catfin {

// Throws EngineError{SyntaxError} with the byte position of the offending
// token, or EngineError{UnknownVariable} naming the identifier.
Poly parse_polynomial(const std::string& text, const std::vector<std::string>& vars,
                      MonomialOrder ord = MonomialOrder::grevlex());

}  // namespace catfin
