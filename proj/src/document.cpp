#include "catfin/document.hpp"

#include <algorithm>
#include <initializer_list>
#include <map>
#include <set>
#include <utility>

#include "catfin/error.hpp"
#include "catfin/parse.hpp"
#include "json.hpp"

namespace catfin {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(Errc::InputError, "document: " + where + ": " + what);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::SyntaxError, std::string("document is not valid JSON: ") + e.what());
  }
}

const json& member(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing key '") + key + "'");
  return *it;
}

void expect_object(const json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
}

void expect_known_keys(const json& j, std::initializer_list<const char*> keys,
                       const std::string& where) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : keys)
      if (item.key() == k) known = true;
    if (!known) bad(where, "unknown key '" + item.key() + "'");
  }
}

std::string get_string(const json& j, const char* key, const std::string& where) {
  const json& v = member(j, key, where);
  if (!v.is_string()) bad(where, std::string("key '") + key + "' must be a string");
  return v.get<std::string>();
}

std::uint64_t as_uint(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    const std::int64_t n = v.get<std::int64_t>();
    if (n >= 0) return static_cast<std::uint64_t>(n);
  }
  bad(where, "expected a non-negative integer");
}

std::vector<std::string> as_string_array(const json& v, const std::string& where) {
  if (!v.is_array()) bad(where, "expected an array of strings");
  std::vector<std::string> out;
  for (const json& e : v) {
    if (!e.is_string()) bad(where, "expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<std::size_t> as_index_array(const json& v, const std::string& where) {
  if (!v.is_array()) bad(where, "expected an array of indices");
  std::vector<std::size_t> out;
  for (const json& e : v) out.push_back(static_cast<std::size_t>(as_uint(e, where)));
  return out;
}

Integer parse_integer_string(const std::string& s, const std::string& where) {
  Integer z;
  if (s.empty() || mpz_set_str(z.get_mpz_t(), s.c_str(), 10) != 0)
    bad(where, "malformed integer '" + s + "'");
  return z;
}

const char* trace_level_name(TraceLevel t) {
  switch (t) {
    case TraceLevel::None: return "none";
    case TraceLevel::Steps: return "steps";
    case TraceLevel::Full: return "full";
  }
  return "none";
}

TraceLevel trace_level_from(const std::string& s, const std::string& where) {
  if (s == "none") return TraceLevel::None;
  if (s == "steps") return TraceLevel::Steps;
  if (s == "full") return TraceLevel::Full;
  bad(where, "traceLevel must be one of none, steps, full");
}

Options parse_options(const json& j, const std::string& where) {
  Options opt;
  expect_object(j, where);
  expect_known_keys(j,
                    {"primeBound", "pointSetCap", "orbitBudget", "wordRadius", "traceLevel",
                     "safetyCaps"},
                    where);
  if (j.contains("primeBound"))
    opt.primeBound = static_cast<std::uint32_t>(as_uint(j["primeBound"], where + ".primeBound"));
  if (j.contains("pointSetCap")) opt.pointSetCap = as_uint(j["pointSetCap"], where + ".pointSetCap");
  if (j.contains("orbitBudget")) opt.orbitBudget = as_uint(j["orbitBudget"], where + ".orbitBudget");
  if (j.contains("wordRadius"))
    opt.wordRadius = static_cast<std::uint32_t>(as_uint(j["wordRadius"], where + ".wordRadius"));
  if (j.contains("traceLevel"))
    opt.trace = trace_level_from(get_string(j, "traceLevel", where), where + ".traceLevel");
  if (j.contains("safetyCaps")) {
    const json& caps = j["safetyCaps"];
    const std::string cw = where + ".safetyCaps";
    expect_object(caps, cw);
    expect_known_keys(caps, {"closureCap", "maxExponent", "maxPolyTerms", "rawTupleCap"}, cw);
    if (caps.contains("closureCap")) opt.closureCap = as_uint(caps["closureCap"], cw);
    if (caps.contains("maxExponent")) opt.maxExponent = as_uint(caps["maxExponent"], cw);
    if (caps.contains("maxPolyTerms")) opt.maxPolyTerms = as_uint(caps["maxPolyTerms"], cw);
    if (caps.contains("rawTupleCap")) opt.rawTupleCap = as_uint(caps["rawTupleCap"], cw);
  }
  return opt;
}

json options_json(const Options& opt) {
  json j;
  j["primeBound"] = opt.primeBound;
  j["pointSetCap"] = opt.pointSetCap;
  j["orbitBudget"] = opt.orbitBudget;
  j["wordRadius"] = opt.wordRadius;
  j["traceLevel"] = trace_level_name(opt.trace);
  json caps;
  caps["closureCap"] = opt.closureCap;
  caps["maxExponent"] = opt.maxExponent;
  caps["maxPolyTerms"] = opt.maxPolyTerms;
  caps["rawTupleCap"] = opt.rawTupleCap;
  j["safetyCaps"] = std::move(caps);
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json diagnostics_json(const std::vector<std::string>& notes) {
  json d;
  d["notes"] = notes;
  return d;
}

// ---------------------------------------------------------------------------
// Witness serialization / reconstruction

json coords_json(const Morphism& m) {
  json arr = json::array();
  for (const Poly& p : m.coords()) arr.push_back(poly_to_string(p, m.src()->vars()));
  return arr;
}

std::string rendered_word(const System& s, std::size_t vertex,
                          const std::vector<std::size_t>& word, const Morphism& m) {
  ClosureEntry e{m, vertex, vertex, word};
  return word_string(s, e);
}

json trunc_points_json(const std::vector<TruncElem>& pts) {
  json arr = json::array();
  for (const TruncElem& t : pts) {
    json e;
    e["u"] = t.u;
    e["b"] = t.b;
    arr.push_back(std::move(e));
  }
  return arr;
}

std::vector<TruncElem> parse_trunc_points(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of truncated-ring elements");
  std::vector<TruncElem> out;
  for (const json& e : j) {
    expect_object(e, where);
    expect_known_keys(e, {"u", "b"}, where);
    TruncElem t;
    t.u = static_cast<std::uint32_t>(as_uint(member(e, "u", where), where));
    for (std::size_t b : as_index_array(member(e, "b", where), where))
      t.b.push_back(static_cast<std::uint32_t>(b));
    out.push_back(std::move(t));
  }
  return out;
}

json certificate_json(const OrderCertificate& cert, const Morphism& at) {
  json c;
  if (cert.kind == OrderCertificate::Kind::PowerNotIdentity) {
    c["kind"] = "power-not-identity";
    c["exponent"] = integer_to_string(cert.exponent);
    json power = json::array();
    for (const Poly& p : cert.powerCoords) power.push_back(poly_to_string(p, at.src()->vars()));
    c["power"] = std::move(power);
  } else {
    c["kind"] = "non-bijective-action";
    c["prime"] = cert.prime;
    c["collideA"] = trunc_points_json(cert.collideA);
    c["collideB"] = trunc_points_json(cert.collideB);
  }
  return c;
}

json step_json(const System& s, const SubsystemStep& step) {
  json j;
  switch (step.kind) {
    case SubsystemStep::Kind::Component: {
      j["kind"] = "component";
      j["vertexClass"] = step.vertexClass;
      json names = json::array();
      for (std::size_t v : step.vertexClass) names.push_back(s.vertex(v)->name());
      j["vertexNames"] = std::move(names);
      j["keptArrows"] = step.keptArrows;
      break;
    }
    case SubsystemStep::Kind::DroppedArrow:
      j["kind"] = "dropped-arrow";
      j["vertexClass"] = step.vertexClass;
      j["keptArrows"] = step.keptArrows;
      j["arrow"] = step.arrow;
      j["arrowName"] = s.arrows()[step.arrow].name;
      break;
    case SubsystemStep::Kind::Restricted:
      j["kind"] = "restricted";
      j["arrow"] = step.arrow;
      j["arrowName"] = s.arrows()[step.arrow].name;
      j["homWords"] = step.homWords;
      break;
  }
  return j;
}

json witness_json(const System& s, const InfinitenessWitness& w);

json witness_json_infinite_order(const System& s, const WitnessInfiniteOrder& w) {
  json j;
  j["kind"] = "infinite-order";
  j["vertex"] = w.vertex;
  j["vertexName"] = s.vertex(w.vertex)->name();
  j["word"] = w.word;
  j["wordName"] = rendered_word(s, w.vertex, w.word, w.morph);
  j["morphism"] = coords_json(w.morph);
  j["certificate"] = certificate_json(w.cert, w.morph);
  return j;
}

json witness_json_collision(const System& s, const WitnessKernelCollision& w) {
  json j;
  j["kind"] = "kernel-collision";
  j["vertex"] = w.vertex;
  j["vertexName"] = s.vertex(w.vertex)->name();
  j["wordF"] = w.wordF;
  j["wordFName"] = rendered_word(s, w.vertex, w.wordF, w.f);
  j["wordG"] = w.wordG;
  j["wordGName"] = rendered_word(s, w.vertex, w.wordG, w.g);
  j["f"] = coords_json(w.f);
  j["g"] = coords_json(w.g);
  j["orderG"] = integer_to_string(w.orderG);
  j["h"] = coords_json(w.h);
  return j;
}

json witness_json(const System& s, const InfinitenessWitness& w) {
  if (const auto* io = std::get_if<WitnessInfiniteOrder>(&w.w))
    return witness_json_infinite_order(s, *io);
  if (const auto* kc = std::get_if<WitnessKernelCollision>(&w.w))
    return witness_json_collision(s, *kc);
  const auto& sub = std::get<WitnessSubsystem>(w.w);
  json j;
  j["kind"] = "subsystem";
  j["step"] = step_json(s, sub.step);
  j["inner"] = witness_json(witness_child_system(s, sub.step), *sub.inner);
  return j;
}

Morphism parse_endo_coords(const json& arr, const System& s, std::size_t vertex,
                           const std::string& where) {
  if (vertex >= s.vertices().size()) bad(where, "vertex index out of range");
  const VarietyPtr& v = s.vertex(vertex);
  std::vector<std::string> strs = as_string_array(arr, where);
  std::vector<Poly> coords;
  coords.reserve(strs.size());
  for (const std::string& c : strs) coords.push_back(parse_polynomial(c, v->vars()));
  return Morphism(v, v, std::move(coords));
}

OrderCertificate parse_certificate(const json& j, const System& s, std::size_t vertex,
                                   const std::string& where) {
  expect_object(j, where);
  OrderCertificate cert;
  std::string kind = get_string(j, "kind", where);
  if (kind == "power-not-identity") {
    expect_known_keys(j, {"kind", "exponent", "power"}, where);
    cert.kind = OrderCertificate::Kind::PowerNotIdentity;
    cert.exponent = parse_integer_string(get_string(j, "exponent", where), where);
    const VarietyPtr& v = s.vertex(vertex);
    for (const std::string& c : as_string_array(member(j, "power", where), where))
      cert.powerCoords.push_back(parse_polynomial(c, v->vars()));
  } else if (kind == "non-bijective-action") {
    expect_known_keys(j, {"kind", "prime", "collideA", "collideB"}, where);
    cert.kind = OrderCertificate::Kind::NonBijectiveAction;
    cert.prime = static_cast<std::uint32_t>(as_uint(member(j, "prime", where), where));
    cert.collideA = parse_trunc_points(member(j, "collideA", where), where);
    cert.collideB = parse_trunc_points(member(j, "collideB", where), where);
  } else {
    bad(where, "unknown certificate kind '" + kind + "'");
  }
  return cert;
}

SubsystemStep parse_step(const json& j, const std::string& where) {
  expect_object(j, where);
  SubsystemStep step;
  std::string kind = get_string(j, "kind", where);
  if (kind == "component") {
    expect_known_keys(j, {"kind", "vertexClass", "vertexNames", "keptArrows"}, where);
    step.kind = SubsystemStep::Kind::Component;
    step.vertexClass = as_index_array(member(j, "vertexClass", where), where);
    step.keptArrows = as_index_array(member(j, "keptArrows", where), where);
  } else if (kind == "dropped-arrow") {
    expect_known_keys(j, {"kind", "vertexClass", "keptArrows", "arrow", "arrowName"}, where);
    step.kind = SubsystemStep::Kind::DroppedArrow;
    step.vertexClass = as_index_array(member(j, "vertexClass", where), where);
    step.keptArrows = as_index_array(member(j, "keptArrows", where), where);
    step.arrow = static_cast<std::size_t>(as_uint(member(j, "arrow", where), where));
  } else if (kind == "restricted") {
    expect_known_keys(j, {"kind", "arrow", "arrowName", "homWords"}, where);
    step.kind = SubsystemStep::Kind::Restricted;
    step.arrow = static_cast<std::size_t>(as_uint(member(j, "arrow", where), where));
    const json& hw = member(j, "homWords", where);
    if (!hw.is_array()) bad(where, "homWords must be an array of words");
    for (const json& word : hw) step.homWords.push_back(as_index_array(word, where));
  } else {
    bad(where, "unknown step kind '" + kind + "'");
  }
  return step;
}

InfinitenessWitness parse_witness(const json& j, const System& s, const std::string& where) {
  expect_object(j, where);
  std::string kind = get_string(j, "kind", where);
  if (kind == "infinite-order") {
    expect_known_keys(j, {"kind", "vertex", "vertexName", "word", "wordName", "morphism",
                          "certificate"},
                      where);
    std::size_t vertex = static_cast<std::size_t>(as_uint(member(j, "vertex", where), where));
    Morphism m = parse_endo_coords(member(j, "morphism", where), s, vertex, where);
    WitnessInfiniteOrder w{vertex, as_index_array(member(j, "word", where), where), std::move(m),
                           parse_certificate(member(j, "certificate", where), s, vertex, where)};
    return InfinitenessWitness{std::move(w)};
  }
  if (kind == "kernel-collision") {
    expect_known_keys(j, {"kind", "vertex", "vertexName", "wordF", "wordFName", "wordG",
                          "wordGName", "f", "g", "orderG", "h"},
                      where);
    std::size_t vertex = static_cast<std::size_t>(as_uint(member(j, "vertex", where), where));
    WitnessKernelCollision w{vertex,
                             as_index_array(member(j, "wordF", where), where),
                             as_index_array(member(j, "wordG", where), where),
                             parse_endo_coords(member(j, "f", where), s, vertex, where),
                             parse_endo_coords(member(j, "g", where), s, vertex, where),
                             parse_integer_string(get_string(j, "orderG", where), where),
                             parse_endo_coords(member(j, "h", where), s, vertex, where)};
    return InfinitenessWitness{std::move(w)};
  }
  if (kind == "subsystem") {
    expect_known_keys(j, {"kind", "step", "inner"}, where);
    SubsystemStep step = parse_step(member(j, "step", where), where + ".step");
    System child = witness_child_system(s, step);
    InfinitenessWitness inner = parse_witness(member(j, "inner", where), child, where + ".inner");
    WitnessSubsystem w{std::move(step),
                       std::make_shared<InfinitenessWitness>(std::move(inner))};
    return InfinitenessWitness{std::move(w)};
  }
  bad(where, "unknown witness kind '" + kind + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// System documents

SystemDocument parse_system_document(const std::string& text) {
  json j = parse_json(text);
  expect_object(j, "top level");
  expect_known_keys(j, {"vertices", "arrows", "options", "orbit"}, "top level");

  SystemDocument doc;
  const json& verts = member(j, "vertices", "top level");
  if (!verts.is_array()) bad("vertices", "expected an array");
  std::set<std::string> vertexNames;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const std::string where = "vertices[" + std::to_string(i) + "]";
    const json& v = verts[i];
    expect_object(v, where);
    expect_known_keys(v, {"name", "vars", "ideal"}, where);
    VertexSpec spec;
    spec.name = get_string(v, "name", where);
    if (spec.name.empty()) bad(where, "vertex name must be nonempty");
    if (!vertexNames.insert(spec.name).second) bad(where, "duplicate vertex name '" + spec.name + "'");
    spec.vars = as_string_array(member(v, "vars", where), where + ".vars");
    std::set<std::string> seenVars;
    for (const std::string& var : spec.vars)
      if (var.empty() || !seenVars.insert(var).second)
        bad(where + ".vars", "variable names must be nonempty and distinct");
    if (v.contains("ideal")) spec.ideal = as_string_array(v["ideal"], where + ".ideal");
    doc.vertices.push_back(std::move(spec));
  }

  if (j.contains("arrows")) {
    const json& arrows = j["arrows"];
    if (!arrows.is_array()) bad("arrows", "expected an array");
    std::set<std::string> arrowNames;
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      const std::string where = "arrows[" + std::to_string(i) + "]";
      const json& a = arrows[i];
      expect_object(a, where);
      expect_known_keys(a, {"name", "src", "dst", "coords"}, where);
      ArrowSpec spec;
      spec.name = get_string(a, "name", where);
      if (spec.name.empty()) bad(where, "arrow name must be nonempty");
      if (!arrowNames.insert(spec.name).second) bad(where, "duplicate arrow name '" + spec.name + "'");
      spec.src = get_string(a, "src", where);
      spec.dst = get_string(a, "dst", where);
      if (!vertexNames.count(spec.src)) bad(where, "unknown src vertex '" + spec.src + "'");
      if (!vertexNames.count(spec.dst)) bad(where, "unknown dst vertex '" + spec.dst + "'");
      spec.coords = as_string_array(member(a, "coords", where), where + ".coords");
      doc.arrows.push_back(std::move(spec));
    }
  }

  if (j.contains("options")) doc.options = parse_options(j["options"], "options");

  if (j.contains("orbit")) {
    const json& o = j["orbit"];
    expect_object(o, "orbit");
    expect_known_keys(o, {"vertex", "point", "pairProbe"}, "orbit");
    OrbitSpec spec;
    spec.vertex = get_string(o, "vertex", "orbit");
    if (!vertexNames.count(spec.vertex)) bad("orbit", "unknown vertex '" + spec.vertex + "'");
    spec.point = as_string_array(member(o, "point", "orbit"), "orbit.point");
    for (const std::string& c : spec.point) parse_rational_string(c);
    if (o.contains("pairProbe")) {
      if (!o["pairProbe"].is_boolean()) bad("orbit.pairProbe", "expected a boolean");
      spec.pairProbe = o["pairProbe"].get<bool>();
    }
    doc.orbit = std::move(spec);
  }
  return doc;
}

std::string serialize_system_document(const SystemDocument& doc) {
  json j;
  json verts = json::array();
  for (const VertexSpec& v : doc.vertices) {
    json e;
    e["name"] = v.name;
    e["vars"] = v.vars;
    e["ideal"] = v.ideal;
    verts.push_back(std::move(e));
  }
  j["vertices"] = std::move(verts);
  json arrows = json::array();
  for (const ArrowSpec& a : doc.arrows) {
    json e;
    e["name"] = a.name;
    e["src"] = a.src;
    e["dst"] = a.dst;
    e["coords"] = a.coords;
    arrows.push_back(std::move(e));
  }
  j["arrows"] = std::move(arrows);
  j["options"] = options_json(doc.options);
  if (doc.orbit) {
    json o;
    o["vertex"] = doc.orbit->vertex;
    o["point"] = doc.orbit->point;
    o["pairProbe"] = doc.orbit->pairProbe;
    j["orbit"] = std::move(o);
  }
  return dump(j);
}

Rational parse_rational_string(const std::string& text) {
  std::string t = text;
  t.erase(0, t.find_first_not_of(" \t"));
  if (const auto last = t.find_last_not_of(" \t"); last != std::string::npos)
    t.erase(last + 1);
  Rational q;
  if (t.empty() || mpq_set_str(q.get_mpq_t(), t.c_str(), 10) != 0)
    fail(Errc::SyntaxError, "malformed rational '" + text + "'");
  if (q.get_den() == 0) fail(Errc::SyntaxError, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

System build_system(const SystemDocument& doc) {
  std::vector<VarietyPtr> verts;
  std::map<std::string, std::size_t> index;
  for (const VertexSpec& vs : doc.vertices) {
    std::vector<Poly> gens;
    gens.reserve(vs.ideal.size());
    for (const std::string& g : vs.ideal) gens.push_back(parse_polynomial(g, vs.vars));
    verts.push_back(std::make_shared<Variety>(vs.name, vs.vars, Ideal(vs.vars.size(), std::move(gens))));
    index.emplace(vs.name, verts.size() - 1);
  }
  std::vector<Arrow> arrows;
  for (const ArrowSpec& as : doc.arrows) {
    auto si = index.find(as.src);
    auto di = index.find(as.dst);
    if (si == index.end() || di == index.end())
      fail(Errc::InputError, "arrow '" + as.name + "' references an unknown vertex");
    const VarietyPtr& src = verts[si->second];
    const VarietyPtr& dst = verts[di->second];
    if (as.coords.size() != dst->ambient_dim())
      fail(Errc::InputError, "arrow '" + as.name + "' must give " +
                                 std::to_string(dst->ambient_dim()) +
                                 " coordinate(s) for vertex '" + dst->name() + "'");
    std::vector<Poly> coords;
    coords.reserve(as.coords.size());
    for (const std::string& c : as.coords) coords.push_back(parse_polynomial(c, src->vars()));
    arrows.emplace_back(as.name, si->second, di->second, Morphism(src, dst, std::move(coords)));
  }
  return System(std::move(verts), std::move(arrows));
}

// ---------------------------------------------------------------------------
// Verdict documents

std::string serialize_verdict_document(const Verdict& v, const System& s,
                                       const std::vector<std::string>& diagnostics) {
  json j;
  if (v.finite) {
    j["verdict"] = "finite";
    j["order"] = v.order;
    json table = json::array();
    if (v.table) {
      for (std::size_t i = 0; i < v.table->size(); ++i) {
        const ClosureEntry& e = v.table->entry(i);
        json row;
        row["src"] = s.vertex(e.src)->name();
        row["dst"] = s.vertex(e.dst)->name();
        row["name"] = word_string(s, e);
        row["word"] = e.word;
        json coords = json::array();
        for (const Poly& p : e.morph.coords())
          coords.push_back(poly_to_string(p, s.vertex(e.src)->vars()));
        row["coords"] = std::move(coords);
        table.push_back(std::move(row));
      }
    }
    j["homTable"] = std::move(table);
  } else {
    j["verdict"] = "infinite";
    j["witness"] = witness_json(s, *v.witness);
  }
  j["diagnostics"] = diagnostics_json(diagnostics);
  return dump(j);
}

std::string serialize_abort_document(const std::string& errorCode, const std::string& message,
                                     const std::vector<std::string>& diagnostics) {
  json j;
  j["verdict"] = "aborted";
  json err;
  err["code"] = errorCode;
  err["message"] = message;
  j["error"] = std::move(err);
  j["diagnostics"] = diagnostics_json(diagnostics);
  return dump(j);
}

ParsedVerdict parse_verdict_document(const std::string& text, const System& s) {
  json j = parse_json(text);
  expect_object(j, "top level");
  ParsedVerdict out;
  out.verdict = get_string(j, "verdict", "top level");
  if (out.verdict == "finite") {
    expect_known_keys(j, {"verdict", "order", "homTable", "diagnostics"}, "top level");
    out.order = as_uint(member(j, "order", "top level"), "order");
    const json& table = member(j, "homTable", "top level");
    if (!table.is_array()) bad("homTable", "expected an array");
    out.homTableSize = table.size();
  } else if (out.verdict == "infinite") {
    expect_known_keys(j, {"verdict", "witness", "diagnostics"}, "top level");
    out.witness = parse_witness(member(j, "witness", "top level"), canonical_system(s), "witness");
  } else if (out.verdict == "aborted") {
    expect_known_keys(j, {"verdict", "error", "diagnostics"}, "top level");
    const json& err = member(j, "error", "top level");
    expect_object(err, "error");
    out.errorCode = get_string(err, "code", "error");
  } else {
    bad("verdict", "unknown verdict '" + out.verdict + "'");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Orbit documents

std::string serialize_orbit_document(const MonoidAction& action,
                                     const std::vector<std::string>& generatorNames,
                                     const OrbitReport& report, bool mPeriodic,
                                     const std::vector<PeriodicityResult>& cyclic,
                                     const std::optional<PairProbeReport>& probe,
                                     const std::vector<std::string>& diagnostics) {
  auto point_json = [](const Point& p) {
    json arr = json::array();
    for (const Rational& q : p) arr.push_back(rational_to_string(q));
    return arr;
  };

  json o;
  o["vertex"] = action.variety->name();
  o["basePoint"] = point_json(action.basePoint);
  o["generators"] = generatorNames;
  o["complete"] = report.complete;
  o["budgetUsed"] = report.budgetUsed;
  json pts = json::array();
  for (const Point& p : report.points) pts.push_back(point_json(p));
  o["points"] = std::move(pts);
  json trans = json::array();
  for (const std::vector<std::size_t>& t : report.transitions) {
    json row = json::array();
    for (std::size_t img : t) {
      if (img == OrbitReport::npos)
        row.push_back(nullptr);
      else
        row.push_back(img);
    }
    trans.push_back(std::move(row));
  }
  o["transitions"] = std::move(trans);
  if (report.complete)
    o["mPeriodic"] = mPeriodic;
  else
    o["mPeriodic"] = nullptr;
  json cyc = json::array();
  for (std::size_t i = 0; i < cyclic.size(); ++i) {
    json e;
    e["generator"] = i < generatorNames.size() ? generatorNames[i] : "g" + std::to_string(i);
    switch (cyclic[i].kind) {
      case PeriodicityResult::Kind::Periodic:
        e["kind"] = "periodic";
        e["period"] = cyclic[i].period;
        break;
      case PeriodicityResult::Kind::Preperiodic:
        e["kind"] = "preperiodic";
        e["tail"] = cyclic[i].tail;
        e["period"] = cyclic[i].period;
        break;
      case PeriodicityResult::Kind::Unresolved:
        e["kind"] = "unresolved";
        break;
    }
    cyc.push_back(std::move(e));
  }
  o["cyclic"] = std::move(cyc);
  if (probe) {
    json p;
    p["maxCyclicOrbit"] = probe->maxCyclicOrbit;
    p["maxPairOrbit"] = probe->maxPairOrbit;
    p["fullOrbitComplete"] = probe->fullOrbitComplete;
    p["consistent"] = probe->consistent;
    json ws = json::array();
    for (const auto& w : probe->witnesses) {
      json e;
      e["wordF"] = w.wordF;
      e["keyF"] = w.keyF;
      e["wordG"] = w.wordG;
      e["keyG"] = w.keyG;
      ws.push_back(std::move(e));
    }
    p["witnesses"] = std::move(ws);
    o["pairProbe"] = std::move(p);
  }

  json j;
  j["orbit"] = std::move(o);
  j["diagnostics"] = diagnostics_json(diagnostics);
  return dump(j);
}

}  // namespace catfin
