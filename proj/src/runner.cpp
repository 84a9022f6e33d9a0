#include "catfin/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <utility>
#include <vector>

#include "catfin/decide.hpp"
#include "catfin/document.hpp"
#include "catfin/dynamics.hpp"
#include "catfin/error.hpp"
#include "catfin/system.hpp"

namespace catfin {

namespace {

Options merged_options(const Options& base, const CliOverrides& ov) {
  Options opt = base;
  if (ov.primeBound) opt.primeBound = *ov.primeBound;
  if (ov.pointSetCap) opt.pointSetCap = *ov.pointSetCap;
  if (ov.orbitBudget) opt.orbitBudget = *ov.orbitBudget;
  if (ov.wordRadius) opt.wordRadius = *ov.wordRadius;
  if (ov.trace) opt.trace = *ov.trace;
  return opt;
}

RunResult input_failure(const EngineError& e) {
  RunResult res;
  res.exitCode = kExitInputError;
  res.message = std::string(errc_name(e.code())) + ": " + e.what();
  return res;
}

}  // namespace

RunResult run_decide(const std::string& documentText, const CliOverrides& overrides,
                     std::ostream& traceOut) {
  std::vector<std::string> diag;
  try {
    SystemDocument doc = parse_system_document(documentText);
    const Options opt = merged_options(doc.options, overrides);
    const Trace trace(opt.trace, &traceOut);
    System canon = canonical_system(build_system(doc));
    RunResult res;
    try {
      Verdict v = decide_system(canon, opt, trace, &diag);
      res.document = serialize_verdict_document(v, canon, diag);
      res.exitCode = v.finite ? kExitFinite : kExitInfinite;
    } catch (const EngineError& e) {
      if (errc_is_input_error(e.code())) throw;
      res.document = serialize_abort_document(errc_name(e.code()), e.what(), diag);
      res.exitCode = kExitAborted;
    }
    return res;
  } catch (const EngineError& e) {
    return input_failure(e);
  }
}

RunResult run_orbit(const std::string& documentText, const CliOverrides& overrides,
                    std::ostream& traceOut) {
  std::vector<std::string> diag;
  try {
    SystemDocument doc = parse_system_document(documentText);
    if (!doc.orbit)
      fail(Errc::InputError, "the orbit subcommand requires an 'orbit' block in the document");
    const Options opt = merged_options(doc.options, overrides);
    const Trace trace(opt.trace, &traceOut);
    System built = build_system(doc);

    std::size_t vidx = built.vertices().size();
    for (std::size_t i = 0; i < doc.vertices.size(); ++i)
      if (doc.vertices[i].name == doc.orbit->vertex) vidx = i;
    if (vidx == built.vertices().size())
      fail(Errc::InputError, "orbit vertex '" + doc.orbit->vertex + "' is not a vertex");
    const VarietyPtr& v = built.vertex(vidx);

    // Generator order follows the same canonical ordering as the decider
    // (coordinate key, ties by document order), so reports do not depend on
    // how the input listed its arrows.
    std::vector<std::pair<std::string, const Arrow*>> endos;
    for (const Arrow& a : built.arrows())
      if (a.src == vidx && a.dst == vidx) endos.emplace_back(a.morph.coord_key(), &a);
    std::stable_sort(endos.begin(), endos.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Morphism> gens;
    std::vector<std::string> names;
    for (const auto& [key, arrow] : endos) {
      gens.push_back(arrow->morph);
      names.push_back(arrow->name);
    }

    Point base;
    base.reserve(doc.orbit->point.size());
    for (const std::string& c : doc.orbit->point) base.push_back(parse_rational_string(c));

    RunResult res;
    try {
      MonoidAction action(v, std::move(gens), std::move(base));
      if (trace.steps())
        trace.step("orbit: " + std::to_string(action.generators.size()) + " generator(s) at '" +
                   v->name() + "'");
      OrbitReport report = orbit_bfs(action, opt.orbitBudget);
      diag.push_back("orbit: " + std::to_string(report.points.size()) + " point(s), " +
                     (report.complete ? "complete" : "budget exhausted"));
      const bool mper = report.complete && m_periodicity(report);
      std::vector<PeriodicityResult> cyclic;
      cyclic.reserve(action.generators.size());
      for (const Morphism& g : action.generators)
        cyclic.push_back(cyclic_periodicity(g, action.basePoint, opt.orbitBudget));
      std::optional<PairProbeReport> probe;
      if (doc.orbit->pairProbe) {
        probe = pair_criterion_probe(action, opt.wordRadius, opt.orbitBudget);
        diag.push_back("pair probe: " + std::to_string(probe->witnesses.size()) +
                       " unbounded witness(es)");
      }
      res.document = serialize_orbit_document(action, names, report, mper, cyclic, probe, diag);
      res.exitCode = kExitFinite;
    } catch (const EngineError& e) {
      if (errc_is_input_error(e.code())) throw;
      res.document = serialize_abort_document(errc_name(e.code()), e.what(), diag);
      res.exitCode = kExitAborted;
    }
    return res;
  } catch (const EngineError& e) {
    return input_failure(e);
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::InputError, "cannot open '" + tmp + "' for writing");
    out << content;
    out.flush();
    if (!out) fail(Errc::InputError, "failed while writing '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    fail(Errc::InputError, "cannot move temporary file onto '" + path + "'");
  }
}

}  // namespace catfin
