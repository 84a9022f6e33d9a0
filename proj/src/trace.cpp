#include "catfin/options.hpp"

#include <ostream>

namespace catfin {

void Trace::step(const std::string& line) const {
  if (steps()) *out_ << "[trace] " << line << '\n';
}

void Trace::detail(const std::string& line) const {
  if (full()) *out_ << "[trace] " << line << '\n';
}

}  // namespace catfin
