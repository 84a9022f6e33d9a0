// catfin: command-line entry point.
//
//   catfin decide <system.json> [flags]   exit 0 finite / 10 infinite /
//                                         20 aborted / 1 input error
//   catfin orbit  <system.json> [flags]   orbit report; exit 0 / 20 / 1
//
// The output document goes to stdout, or atomically to --out; trace output
// goes to stderr.
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "catfin/error.hpp"
#include "catfin/options.hpp"
#include "catfin/runner.hpp"

namespace {

struct FlagSet {
  std::string input;
  std::string out;
  std::uint32_t primeBound = 0;
  std::uint64_t pointSetCap = 0;
  std::uint64_t orbitBudget = 0;
  std::uint32_t wordRadius = 0;
  std::string traceLevel;

  CLI::Option* primeBoundOpt = nullptr;
  CLI::Option* pointSetCapOpt = nullptr;
  CLI::Option* orbitBudgetOpt = nullptr;
  CLI::Option* wordRadiusOpt = nullptr;
  CLI::Option* traceOpt = nullptr;
  CLI::Option* outOpt = nullptr;
};

void add_common_flags(CLI::App* cmd, FlagSet& f) {
  cmd->add_option("input", f.input, "system document (JSON)")->required();
  f.primeBoundOpt =
      cmd->add_option("--prime-bound", f.primeBound, "largest probe prime (default 97)");
  f.pointSetCapOpt = cmd->add_option("--pointset-cap", f.pointSetCap,
                                     "max truncated-ring points per probe (default 50000)");
  f.orbitBudgetOpt = cmd->add_option("--orbit-budget", f.orbitBudget,
                                     "max distinct points per orbit search (default 10000)");
  f.wordRadiusOpt = cmd->add_option("--word-radius", f.wordRadius,
                                    "max word length for the pairwise probe (default 4)");
  f.traceOpt = cmd->add_option("--trace", f.traceLevel, "trace verbosity on stderr")
                   ->check(CLI::IsMember({"none", "steps", "full"}));
  f.outOpt = cmd->add_option("--out", f.out, "write the output document to this path atomically");
}

catfin::CliOverrides overrides_from(const FlagSet& f) {
  catfin::CliOverrides ov;
  if (f.primeBoundOpt->count()) ov.primeBound = f.primeBound;
  if (f.pointSetCapOpt->count()) ov.pointSetCap = f.pointSetCap;
  if (f.orbitBudgetOpt->count()) ov.orbitBudget = f.orbitBudget;
  if (f.wordRadiusOpt->count()) ov.wordRadius = f.wordRadius;
  if (f.traceOpt->count()) {
    if (f.traceLevel == "steps")
      ov.trace = catfin::TraceLevel::Steps;
    else if (f.traceLevel == "full")
      ov.trace = catfin::TraceLevel::Full;
    else
      ov.trace = catfin::TraceLevel::None;
  }
  return ov;
}

int dispatch(bool orbitMode, const FlagSet& f) {
  std::ifstream in(f.input, std::ios::binary);
  if (!in) {
    std::cerr << "input-error: cannot read '" << f.input << "'\n";
    return catfin::kExitInputError;
  }
  std::ostringstream text;
  text << in.rdbuf();

  catfin::CliOverrides ov = overrides_from(f);
  catfin::RunResult r = orbitMode ? catfin::run_orbit(text.str(), ov, std::cerr)
                                  : catfin::run_decide(text.str(), ov, std::cerr);
  if (!r.message.empty()) std::cerr << r.message << "\n";
  if (!r.document.empty()) {
    if (f.outOpt->count()) {
      try {
        catfin::write_file_atomic(f.out, r.document);
      } catch (const catfin::EngineError& e) {
        std::cerr << catfin::errc_name(e.code()) << ": " << e.what() << "\n";
        return catfin::kExitInputError;
      }
    } else {
      std::cout << r.document;
    }
  }
  return r.exitCode;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finiteness decider and orbit toolkit for systems of polynomial morphisms"};
  app.require_subcommand(1, 1);

  FlagSet decideFlags, orbitFlags;
  CLI::App* decideCmd =
      app.add_subcommand("decide", "decide finiteness of the generated category");
  add_common_flags(decideCmd, decideFlags);
  CLI::App* orbitCmd =
      app.add_subcommand("orbit", "orbit enumeration and periodicity checks");
  add_common_flags(orbitCmd, orbitFlags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (decideCmd->parsed()) return dispatch(false, decideFlags);
    return dispatch(true, orbitFlags);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return catfin::kExitAborted;
  }
}
