#include "doctest.h"

#include <random>

#include "mvalex/braidrep.hpp"
#include "mvalex/error.hpp"

using namespace mvalex;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Malformed;
}

const Palette P;

LaurentPoly q(const ColorVar& v, int e = 1) { return LaurentPoly::var(v, e); }

const std::map<ColorVar, ColorVar> merge_all{{P.b, P.a}, {P.c, P.a}};

}  // namespace

TEST_CASE("coloring variants") {
  CHECK(variant_colors(1) == std::array<ColorVar, 3>{P.a, P.b, P.c});
  CHECK(variant_colors(2) == std::array<ColorVar, 3>{P.c, P.b, P.a});
  for (int v = 1; v <= 6; ++v) CHECK(variant_of(variant_colors(v)) == v);
  CHECK(variant_of({P.a, P.a, P.b}) == 0);
}

TEST_CASE("colored words") {
  const ColoredBraidWord w = colored_word({{1, 1}, {2, 1}, {1, 1}});
  CHECK(to_text(w) == "s1^3s2^4s1^1");
  CHECK(to_text(colored_word({{2, 1}, {1, 1}, {2, 1}})) == "s2^5s1^6s2^1");
  CHECK(to_text(colored_word({})) == "e");
  validate(w);
  CHECK(kind_of([] { validate(ColoredBraidWord{{{1, 1, 1}, {2, 1, 1}}, {}}); }) == ErrorKind::ColoringMismatch);
  CHECK(kind_of([] { phi(ColoredBraidWord{{{1, 1, 1}, {1, 1, 1}}, {}}); }) == ErrorKind::ColoringMismatch);
  CHECK(braid_of(w).crossing_count() == 3);
}

TEST_CASE("basis and rho") {
  const auto v = vbasis();
  CHECK(v[0].count(ArcKind::Dotted) == 3);
  CHECK(v[7].count(ArcKind::Free) == 6);
  DiagramSum sum(6);
  for (const auto& d : v) sum += DiagramSum(d, 1);
  CHECK(rho(colored_word({})) == sum);
  CHECK(sum == identity_expansion(3));
  CHECK(rho(colored_word({{1, 1}})).term_count() == 10);
  CHECK(check_idempotents());
}

TEST_CASE("printed matrices") {
  const Matrix8 s1 = phi_direct(colored_word({{1, 1}}, 1));
  CHECK(equal(s1, printed_sigma1_v1()));
  CHECK(s1(0, 0) == q(P.a));
  CHECK(s1(2, 2) == q(P.b) - q(P.b, -1));
  CHECK(s1(7, 7) == -q(P.a, -1));
  CHECK(equal(phi_direct(colored_word({{1, 1}}, 2)), printed_sigma1_v2()));
  const Matrix8 s2 = phi_direct(colored_word({{2, 1}}, 1));
  CHECK(equal(s2, printed_sigma2_v1()));
  CHECK(s2(0, 0) == q(P.b));
  CHECK(s2(3, 3) == q(P.c) - q(P.c, -1));
  CHECK(equal(printed_sigma1_v2(), substitute(printed_sigma1_v1(), {{P.a, P.c}, {P.c, P.a}})));
  CHECK(equal(phi_direct(colored_word({})), identity8()));
}

TEST_CASE("calibration is unique") {
  int passing = 0;
  for (const auto& e : calibrate()) {
    if (!e.passes()) continue;
    ++passing;
    CHECK(e.z == 1);
    CHECK(e.d_cyc == -1);
    CHECK(e.row_above);
  }
  CHECK(passing == 1);
}

TEST_CASE("braid relation") {
  const R3Check r = check_braid_r3();
  CHECK(r.equal);
  CHECK(equal(substitute(r.lhs_matrix, merge_all), substitute(r.rhs_matrix, merge_all)));
  CHECK(equal(phi_direct(r.lhs), phi_direct(r.rhs)));
}

TEST_CASE("third skein relation") {
  CHECK(is_zero(check_murakami3()));
  CHECK(is_zero(substitute(check_murakami3(), merge_all)));
  CHECK_FALSE(is_zero(check_murakami3(P, true)));
  CHECK(g_plus(q(P.a)) == q(P.a) + q(P.a, -1));
  CHECK(g_minus(q(P.a)) == q(P.a) - q(P.a, -1));
}

TEST_CASE("multiplicativity and block structure on random words") {
  std::mt19937 rng(41);
  const auto& S = v_strands();
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::pair<int, int>> word;
    const int len = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < len; ++k) word.push_back({1 + static_cast<int>(rng() % 2), rng() % 2 ? 1 : -1});
    const ColoredBraidWord w = colored_word(word, 1 + static_cast<int>(rng() % 6));
    const Matrix8 m = phi(w);
    CHECK(equal(m, phi_direct(w)));
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        if (S[static_cast<std::size_t>(i)].size() != S[static_cast<std::size_t>(j)].size()) CHECK(m(i, j).is_zero());
  }
}

TEST_CASE("matrix helpers") {
  Matrix8 m = identity8();
  CHECK_FALSE(is_zero(m));
  m(0, 1) = q(P.a);
  const auto d = differences(m, identity8());
  REQUIRE(d.size() == 1);
  CHECK(d[0].rfind("(1,2)", 0) == 0);
  CHECK(!to_text(m).empty());
}
