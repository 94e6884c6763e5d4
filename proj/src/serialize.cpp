#include "mvalex/serialize.hpp"

#include "mvalex/error.hpp"

namespace mvalex {

namespace {

Json integer_json(const Integer& c) {
  if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(c);
  return c.str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw Error(ErrorKind::SyntaxError, "coefficient must be an integer or a decimal string");
}

Error bad(const std::string& what) { return Error(ErrorKind::SyntaxError, "json: " + what); }

const char* kind_name(ArcKind k) { return k == ArcKind::Plain ? "plain" : k == ArcKind::Dotted ? "dotted" : "free"; }

}  // namespace

Json to_json(const LaurentPoly& p) {
  Json out = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json exps = Json::object();
    for (const auto& [v, e] : m.entries()) exps[v.id] = e;
    out.push_back({{"coeff", integer_json(c)}, {"exps", exps}});
  }
  return out;
}

LaurentPoly laurent_from_json(const Json& j) {
  if (!j.is_array()) throw bad("polynomial must be an array of terms");
  LaurentPoly p;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("coeff") || !t.contains("exps")) throw bad("term needs coeff and exps");
    std::vector<Monomial::Entry> m;
    for (const auto& [k, v] : t.at("exps").items()) m.push_back({ColorVar(k), v.get<int>()});
    p += LaurentPoly::monomial(Monomial(m), integer_from_json(t.at("coeff")));
  }
  return p;
}

Json to_json(const RationalFunction& r) {
  return {{"num", to_json(r.numerator())}, {"den", to_json(r.denominator())}, {"text", to_text(r)}};
}

RationalFunction rational_from_json(const Json& j) {
  return RationalFunction(laurent_from_json(j.at("num")), laurent_from_json(j.at("den")));
}

Json to_json(const BasisDiagram& d) {
  Json chords = Json::array();
  for (const auto& c : d.chords()) chords.push_back({c.i, c.j, kind_name(c.kind)});
  return {{"k", d.size()}, {"chords", chords}, {"frees", d.frees()}};
}

BasisDiagram diagram_from_json(const Json& j) {
  std::vector<Chord> chords;
  for (const auto& c : j.at("chords")) {
    const std::string k = c.at(2).get<std::string>();
    if (k != "plain" && k != "dotted") throw bad("chord kind must be plain or dotted");
    chords.push_back({c.at(0).get<int>(), c.at(1).get<int>(), k == "plain" ? ArcKind::Plain : ArcKind::Dotted});
  }
  return BasisDiagram::make(j.at("k").get<int>(), chords, j.at("frees").get<std::vector<int>>());
}

Json to_json(const DiagramSum& s) {
  Json terms = Json::array();
  for (const auto& [d, c] : s.terms()) terms.push_back({{"coeff", to_json(c)}, {"diagram", to_json(d)}});
  return {{"k", s.size()}, {"terms", terms}};
}

DiagramSum sum_from_json(const Json& j) {
  DiagramSum s(j.at("k").get<int>());
  for (const auto& t : j.at("terms")) {
    BasisDiagram d = diagram_from_json(t.at("diagram"));
    if (d.size() != s.size()) throw Error(ErrorKind::SizeMismatch, "json: diagram size differs from sum size");
    s.add(d, laurent_from_json(t.at("coeff")));
  }
  return s;
}

Json to_json(const NormalizedInvariant& inv) {
  Json rot = Json::object();
  for (const auto& [c, r] : inv.rotations) rot[c.id] = r.is_integer() ? Json(r.value()) : Json(r.to_string());
  return {{"value", to_json(inv.value)},
          {"rawSum", to_json(inv.raw_sum)},
          {"rotations", rot},
          {"normalizer", to_json(inv.normalizer)},
          {"openColor", inv.open_color.id},
          {"convention", "dotted-coefficient"}};
}

Json to_json(const ContractionStats& s) {
  Json slices = Json::array();
  for (const auto& x : s.slices) {
    slices.push_back({{"slice", x.slice},
                      {"kind", x.kind == SliceKind::Cup ? "cup" : x.kind == SliceKind::Cap ? "cap" : "cross"},
                      {"width", x.width},
                      {"raw", x.glue.raw},
                      {"surviving", x.glue.surviving},
                      {"merged", x.glue.merged}});
  }
  Json out = {{"crossings", s.crossings},
              {"totalRaw", s.total_raw},
              {"totalSurviving", s.total_surviving},
              {"peakTerms", s.peak_terms},
              {"finalTerms", s.final_terms},
              {"slices", slices}};
  if (s.full) out["full"] = {{"raw", s.full->raw}, {"surviving", s.full->surviving}, {"merged", s.full->merged}};
  return out;
}

}  // namespace mvalex
