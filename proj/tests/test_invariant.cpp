#include "doctest.h"

#include <random>

#include "mvalex/error.hpp"
#include "mvalex/invariant.hpp"
#include "mvalex/verify.hpp"

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

const ColorVar a("a"), b("b"), c("c"), Q("q");

LaurentPoly q(const ColorVar& v, int e = 1) { return LaurentPoly::var(v, e); }
LaurentPoly qd(const ColorVar& v) { return q(v) - q(v, -1); }
RationalFunction value(const MorseTangle& t) { return delta_m_prime(t).value; }

const MorseTangle trefoil = braid_closure({a, a}, {{0, 1}, {0, 1}, {0, 1}});
const MorseTangle figure8 = braid_closure({a, a, a}, {{0, 1}, {1, -1}, {0, 1}, {1, -1}});
const MorseTangle whitehead = braid_closure({a, b, a}, {{0, 1}, {1, -1}, {0, 1}, {1, -1}, {1, -1}});
const MorseTangle borromean =
    braid_closure({a, b, c}, {{0, 1}, {1, -1}, {0, 1}, {1, -1}, {0, 1}, {1, -1}});

MorseTangle stack(const MorseTangle& lower, const MorseTangle& upper) {
  std::vector<Slice> s = lower.slices();
  s.insert(s.end(), upper.slices().begin(), upper.slices().end());
  return MorseTangle::make(lower.bottom(), s);
}

}  // namespace

TEST_CASE("normalizer") {
  CHECK(normalizer(straight_strand(a)) == RationalFunction(1, qd(a)));
  CHECK(normalizer(curl(a, 0)) == RationalFunction(-q(a), qd(a)));
  const MorseTangle t = insert_move(straight_strand(a), MoveKind::Curl, {0, 0, 2});
  CHECK(rotation_number(t, a).value() == 1);
  CHECK(normalizer(t) == RationalFunction(-q(a, -1), qd(a)));
  LaurentPoly rf = 1;
  for (const auto& col : whitehead.colors()) {
    const int r = rotation_number(whitehead, col).value();
    rf *= (-q(col)).pow(static_cast<unsigned>(std::abs(r))) * (r > 0 ? q(col, -2 * r) : LaurentPoly(1));
  }
  CHECK(normalizer(whitehead) == RationalFunction(rf, qd(a)));
  CHECK(kind_of([] { normalizer(braid_tangle({a, b}, {})); }) == ErrorKind::NotOneStrand);
  CHECK(kind_of([] { delta_m_prime(braid_tangle({a, b}, {{0, 1}})); }) == ErrorKind::NotOneStrand);
  CHECK(kind_of([] { delta_prime_single(MorseTangle::make({}, {Slice::cup(0, Turn::Ccw, a), Slice::cap(0)})); }) ==
        ErrorKind::NotOneStrand);
}

TEST_CASE("unknot and split unions") {
  CHECK(value(straight_strand(a)) == RationalFunction(1, qd(a)));
  CHECK(value(parse_tangle("colors: a b\nbottom: a^\ncup 2 ccw b\ncap 2\ntop: a^\n")).is_zero());
  CHECK(value(parse_tangle("colors: a\nbottom: a^\ncup 2 cw a\ncap 2\ntop: a^\n")).is_zero());
}

TEST_CASE("knots carry the Conway normalization exactly") {
  CHECK(value(trefoil) * RationalFunction(qd(a)) == RationalFunction(q(a, 2) - 1 + q(a, -2)));
  CHECK(value(figure8) * RationalFunction(qd(a)) == RationalFunction(-q(a, 2) + 3 - q(a, -2)));
}

TEST_CASE("links") {
  CHECK(value(braid_closure({a, b}, {{0, 1}, {0, 1}})) == RationalFunction(1));
  CHECK(value(braid_closure({a, b}, {{0, -1}, {0, -1}})) == RationalFunction(-1));
  CHECK(value(whitehead) == RationalFunction(qd(a) * qd(b)));
  CHECK(value(borromean) == RationalFunction(qd(a) * qd(b) * qd(c)));
}

TEST_CASE("extraction: dotted and free-pair coefficients agree on one strand") {
  for (const auto& t : {trefoil, figure8, whitehead, borromean}) {
    const NormalizedInvariant inv = delta_m_prime(t);
    CHECK(inv.dotted_coefficient == inv.free_coefficient);
    CHECK(inv.raw_sum.size() == 2);
    CHECK(inv.value == inv.normalizer * RationalFunction(inv.dotted_coefficient));
    CHECK(inv.open_color == a);
  }
}

TEST_CASE("single-variable invariant") {
  CHECK(delta_prime_single(straight_strand(a)) == 1);
  CHECK(equal_up_to_unit(delta_prime_single(trefoil), q(Q, 2) - 1 + q(Q, -2)));
  CHECK(equal_up_to_unit(delta_prime_single(figure8), q(Q, 2) - 3 + q(Q, -2)));
  for (const auto& t : {trefoil, figure8}) {
    const RationalFunction merged = delta_m_prime(t.recolored({{a, Q}})).value * RationalFunction(qd(Q));
    REQUIRE(merged.as_laurent().has_value());
    CHECK(equal_up_to_unit(*merged.as_laurent(), delta_prime_single(t)));
  }
  CHECK(turning_factor(curl(a, 0), Q) == -q(Q));
}

TEST_CASE("invariance under every curl site and random moves") {
  std::mt19937 rng(23);
  for (const auto& t : {trefoil, whitehead}) {
    const RationalFunction want = value(t);
    for (const auto& s : move_sites(t, MoveKind::Curl)) CHECK(value(insert_move(t, MoveKind::Curl, s)) == want);
    for (MoveKind mk : {MoveKind::R2, MoveKind::R3}) {
      auto sites = move_sites(t, mk);
      for (int k = 0; k < 4 && !sites.empty(); ++k) CHECK(value(insert_move(t, mk, sites[rng() % sites.size()])) == want);
    }
  }
}

TEST_CASE("stacking one-strand tangles multiplies values") {
  const MorseTangle ab = stack(trefoil, figure8);
  CHECK(value(ab) == value(trefoil) * value(figure8) * RationalFunction(qd(a)));
  const MorseTangle hw = stack(braid_closure({a, b}, {{0, 1}, {0, 1}}), whitehead);
  CHECK(value(hw) == value(whitehead) * RationalFunction(qd(a)));
}

TEST_CASE("tangle invariant") {
  const MorseTangle two = braid_tangle({a, b}, {});
  const TangleInvariant id = tangle_invariant(two);
  CHECK(id.value == identity_expansion(2));
  CHECK(id.rotations.at(a).twice == 0);
  CHECK(id.rotations.at(b).twice == 0);
  const MorseTangle base = braid_tangle({a, b, c}, {{0, 1}, {1, -1}});
  const TangleInvariant t0 = tangle_invariant(base);
  for (const auto& s : move_sites(base, MoveKind::R2)) CHECK(tangle_invariant(insert_move(base, MoveKind::R2, s)).value == t0.value);
  for (const auto& s : move_sites(base, MoveKind::Curl)) {
    const ColorVar& col = base.color_at(s.level, s.position);
    const TangleInvariant t1 = tangle_invariant(insert_move(base, MoveKind::Curl, s));
    CHECK(t1.value == curl_scalar(col, s.variant) * t0.value);
    CHECK(t1.rotations.at(col).twice == t0.rotations.at(col).twice + curl_rotation_twice(s.variant));
  }
}
