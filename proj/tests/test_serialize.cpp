#include "doctest.h"

#include "mvalex/error.hpp"
#include "mvalex/serialize.hpp"
#include "mvalex/verify.hpp"

using namespace mvalex;

TEST_CASE("polynomials") {
  const LaurentPoly p = parse_laurent("+3*q_a^2*q_b^-1 -1*q_c +7");
  const Json j = to_json(p);
  CHECK(j.size() == 3);
  CHECK(laurent_from_json(j) == p);
  CHECK(laurent_from_json(Json::parse(j.dump())) == p);
  CHECK(to_json(LaurentPoly()).empty());

  const LaurentPoly big = LaurentPoly(Integer("123456789012345678901234567890")) * LaurentPoly::var(ColorVar("a"));
  const Json jb = to_json(big);
  CHECK(jb[0]["coeff"].is_string());
  CHECK(laurent_from_json(jb) == big);

  CHECK_THROWS_AS(laurent_from_json(Json::parse(R"({"coeff": 1})")), Error);
  CHECK_THROWS_AS(laurent_from_json(Json::parse(R"([{"coeff": 1.5, "exps": {}}])")), Error);
}

TEST_CASE("rational functions") {
  const RationalFunction r(parse_laurent("+1*q_a"), parse_laurent("+1*q_a^2 -1"));
  const Json j = to_json(r);
  CHECK(j["text"] == to_text(r));
  CHECK(rational_from_json(j) == r);
}

TEST_CASE("diagrams and sums") {
  const BasisDiagram d = parse_diagram("k=4; dotted(0,3); free(1); free(2)");
  CHECK(diagram_from_json(to_json(d)) == d);
  const DiagramSum s = evaluate(braid_tangle({ColorVar("a"), ColorVar("b")}, {{0, 1}, {0, 1}}));
  CHECK(sum_from_json(Json::parse(to_json(s).dump())) == s);
  CHECK_THROWS_AS(diagram_from_json(Json::parse(R"({"k": 2, "chords": [[0, 1, "wavy"]], "frees": []})")), Error);
  CHECK_THROWS_AS(sum_from_json(Json::parse(
                      R"({"k": 4, "terms": [{"coeff": [], "diagram": {"k": 2, "chords": [], "frees": [0, 1]}}]})")),
                  Error);
}

TEST_CASE("invariant schema") {
  const NormalizedInvariant inv = delta_m_prime(straight_strand(ColorVar("a")));
  const Json j = to_json(inv);
  for (const char* key : {"value", "rawSum", "rotations", "normalizer", "convention"}) CHECK(j.contains(key));
  CHECK(j["convention"] == "dotted-coefficient");
  CHECK(j["rotations"]["a"] == 0);
  CHECK(rational_from_json(j["value"]) == inv.value);
  CHECK(sum_from_json(j["rawSum"]) == inv.raw_sum);
}

TEST_CASE("stats schema") {
  const ContractionStats s = contraction_stats(braid_closure({ColorVar("a"), ColorVar("a")}, {{0, 1}, {0, 1}, {0, 1}}));
  const Json j = to_json(s);
  CHECK(j["crossings"] == 3);
  CHECK(j["slices"].size() == s.slices.size());
  CHECK(j["full"]["raw"] == 125);
}
