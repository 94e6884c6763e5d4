#include "doctest.h"

#include <random>

#include "mvalex/error.hpp"
#include "mvalex/invariant.hpp"
#include "mvalex/tangles.hpp"

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

const ColorVar a("a"), b("b"), c("c");

int count(const MorseTangle& t, SliceKind k) {
  int n = 0;
  for (const auto& s : t.slices()) n += s.kind == k;
  return n;
}

}  // namespace

TEST_CASE("straight strand parses") {
  const MorseTangle t = parse_tangle("colors: a\nbottom: a↑\ntop: a↑\n");
  CHECK(t.slices().empty());
  CHECK(t.is_one_strand());
  CHECK(t.components().size() == 1);
  CHECK(t.components()[0].color == a);
  CHECK(rotation_number(t, a).twice == 0);
  CHECK(turning_number(t).twice == 0);
}

TEST_CASE("braid shorthand") {
  const MorseTangle t = parse_tangle("colors: a b c\nbraid 3: s1 s2^-1\n");
  CHECK(t.crossing_count() == 2);
  CHECK(t.slices()[1].sign == -1);
  CHECK(t.slices()[1].position == 1);
  CHECK(t.top()[0].color == b);
  CHECK(t.top()[1].color == c);
  CHECK(t.top()[2].color == a);
  CHECK(parse_tangle("colors: a\nbraid 2: s1^3\n").crossing_count() == 3);
}

TEST_CASE("parse errors") {
  CHECK(kind_of([] { parse_tangle("colors: a b\nbottom: a^ b^\nx+ 5\n"); }) == ErrorKind::WidthError);
  CHECK(kind_of([] { parse_tangle("colors: a\nbottom: a^\nfrob 1\n"); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] { parse_tangle("colors: a b\nbottom: a^ bv\nx+ 1\n"); }) == ErrorKind::OrientationError);
  CHECK(kind_of([] { parse_tangle("colors: a\nbottom: a^ av\ncap 1 ccw\n"); }) == ErrorKind::OrientationError);
  CHECK(kind_of([] { parse_tangle("colors: a\nbottom: z^\n"); }) == ErrorKind::ColorError);
  CHECK(kind_of([] { parse_tangle("colors: a\nbottom: a^\ntop: a^ a^\n"); }) == ErrorKind::WidthError);
  CHECK(kind_of([] { parse_tangle("colors: a b\nbottom: a^\ntop: b^\n"); }) == ErrorKind::ColorError);
}

TEST_CASE("interface example parses once the cap turn agrees with the orientation") {
  const char* body = "colors: a b\nbottom: a^ b^\ncup 1 ccw\nx+ 2\ncap 1 ";
  CHECK(parse_tangle(std::string(body) + "ccw\ntop: a^ b^\n").crossing_count() == 1);
  CHECK(parse_tangle(std::string(body) + "\ntop: a^ b^\n").crossing_count() == 1);
  CHECK(kind_of([&] { parse_tangle(std::string(body) + "cw\ntop: a^ b^\n"); }) == ErrorKind::OrientationError);
}

TEST_CASE("print and parse round trip") {
  std::vector<MorseTangle> ts{
      parse_tangle("colors: a b c\nbraid 3: s1 s2^-1 s1\n"),
      braid_closure({a, b, a}, {{0, 1}, {1, -1}, {0, 1}, {1, -1}, {1, -1}}),
      parse_tangle("colors: a b\nbottom: a^ bv\ncup 3 cw b\ncap 2\ntop: a^ bv\n"),
      MorseTangle::make({}, {Slice::cup(0, Turn::Ccw, a), Slice::cap(0)}),
  };
  std::mt19937 rng(3);
  for (int k = 0; k < 20; ++k) {
    MorseTangle t = ts[rng() % ts.size()];
    const MoveKind mk = static_cast<MoveKind>(rng() % 3);
    auto sites = move_sites(t, mk);
    if (!sites.empty()) ts.push_back(insert_move(t, mk, sites[rng() % sites.size()]));
  }
  for (const auto& t : ts) CHECK(parse_tangle(print_tangle(t)) == t);
}

TEST_CASE("rotation and turning numbers") {
  const MorseTangle ccw = MorseTangle::make({}, {Slice::cup(0, Turn::Ccw, a), Slice::cap(0)});
  CHECK(rotation_number(ccw, a).value() == 1);
  CHECK(turning_number(ccw).value() == 1);
  const MorseTangle both =
      MorseTangle::make({}, {Slice::cup(0, Turn::Ccw, a), Slice::cup(2, Turn::Cw, b), Slice::cap(2), Slice::cap(0)});
  CHECK(rotation_number(both, a).value() == 1);
  CHECK(rotation_number(both, b).value() == -1);
  CHECK(turning_number(both).value() == 0);
  CHECK(kind_of([&] { rotation_number(both, c); }) == ErrorKind::UnknownColor);

  const MorseTangle straight = MorseTangle::make({{a, Orientation::Up}}, {});
  const MorseTangle curl = insert_move(straight, MoveKind::Curl, {0, 0, 0});
  CHECK(curl.crossing_count() == 1);
  CHECK(curl.slices()[1].sign == 1);
  CHECK(rotation_number(curl, a).twice == -2);

  const MorseTangle open_half = parse_tangle("colors: a\nbottom: a^ av\ncap 1\n");
  CHECK(rotation_number(open_half, a).to_string() == "-1/2");
  CHECK_THROWS_AS(rotation_number(open_half, a).value(), Error);
}

TEST_CASE("rotation is additive and changes only under curls") {
  const MorseTangle base = braid_closure({a, b}, {{0, 1}, {0, 1}, {0, 1}, {0, -1}});
  const int ra = rotation_number(base, a).twice, rb = rotation_number(base, b).twice;
  for (const auto& s : move_sites(base, MoveKind::R2)) {
    const auto t = insert_move(base, MoveKind::R2, s);
    CHECK(rotation_number(t, a).twice == ra);
    CHECK(rotation_number(t, b).twice == rb);
  }
  for (const auto& s : move_sites(base, MoveKind::Curl)) {
    const auto t = insert_move(base, MoveKind::Curl, s);
    const int delta = s.variant & 2 ? 2 : -2;
    const ColorVar& col = base.color_at(s.level, s.position);
    CHECK(rotation_number(t, col).twice == (col == a ? ra : rb) + delta);
    CHECK(rotation_number(t, col == a ? b : a).twice == (col == a ? rb : ra));
  }
}

TEST_CASE("insert moves") {
  const MorseTangle two = MorseTangle::make({{a, Orientation::Up}, {b, Orientation::Up}}, {});
  const MorseTangle r2 = insert_move(two, MoveKind::R2, {0, 0, 0});
  REQUIRE(r2.slices().size() == 2);
  CHECK(r2.slices()[0] == Slice::cross(0, 1));
  CHECK(r2.slices()[1] == Slice::cross(0, -1));

  const MorseTangle lhs = braid_tangle({a, b, c}, {{0, 1}, {1, 1}, {0, 1}});
  const MorseTangle rhs = insert_move(lhs, MoveKind::R3, {0, 0, 0});
  CHECK(rhs == braid_tangle({a, b, c}, {{1, 1}, {0, 1}, {1, 1}}));

  CHECK(kind_of([&] { insert_move(two, MoveKind::R2, {0, 5, 0}); }) == ErrorKind::BadSite);
  CHECK(kind_of([&] { insert_move(two, MoveKind::R3, {0, 0, 0}); }) == ErrorKind::BadSite);
  CHECK(kind_of([&] { insert_move(braid_tangle({a, b, c}, {{0, 1}, {1, -1}, {0, 1}}), MoveKind::R3, {0, 0, 0}); }) ==
        ErrorKind::BadSite);
}

TEST_CASE("PD parsing") {
  const ColoredPDCode pd = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]\nedgecolors: 1=a 2=a 3=a 4=a 5=a 6=a\n");
  CHECK(pd.crossings.size() == 3);
  CHECK(parse_pd(print_pd(pd)) == pd);
  const OrientedPD o = orient(pd);
  for (const auto& x : o.crossings) CHECK(x.sign == o.crossings[0].sign);
  CHECK(o.component_count == 1);

  CHECK(pd_to_morse(parse_pd("")).slices().empty());
  CHECK(kind_of([] { orient(parse_pd("X[1,2,3,4] X[4,3,2,5]\nedgecolors: 1=a 2=a 3=a 4=a 5=a")); }) ==
        ErrorKind::Malformed);
  CHECK(kind_of([] { parse_pd("X[1,2,3"); }) == ErrorKind::SyntaxError);
}

TEST_CASE("PD of the Hopf link") {
  const ColoredPDCode pd = morse_to_pd(braid_closure({a, b}, {{0, 1}, {0, 1}}));
  ColoredPDCode uncut = pd;
  uncut.cut.reset();
  const MorseTangle closed = pd_to_morse(uncut);
  CHECK(closed.crossing_count() == 2);
  CHECK(closed.components().size() == 2);
  CHECK(count(closed, SliceKind::Cup) == count(closed, SliceKind::Cap));
  CHECK(count(closed, SliceKind::Cup) >= 2);
  const MorseTangle open = pd_to_morse(pd, 1);
  CHECK(open.is_one_strand());
  CHECK(open.crossing_count() == 2);
}

TEST_CASE("PD round trip preserves the invariant at every cut, on any component") {
  std::vector<MorseTangle> links{
      braid_closure({a, a}, {{0, 1}, {0, 1}, {0, 1}}),
      braid_closure({a, a, a}, {{0, 1}, {1, -1}, {0, 1}, {1, -1}}),
      braid_closure({a, b}, {{0, -1}, {0, -1}}),
      braid_closure({a, b, a}, {{0, 1}, {1, -1}, {0, 1}, {1, -1}, {1, -1}}),
  };
  std::mt19937 rng(11);
  const std::size_t base = links.size();
  for (int k = 0; k < 12; ++k) {
    const MorseTangle& t = links[rng() % base];
    const MoveKind mk = static_cast<MoveKind>(rng() % 3);
    auto sites = move_sites(t, mk);
    if (!sites.empty()) links.push_back(insert_move(t, mk, sites[rng() % sites.size()]));
  }
  for (const auto& t : links) {
    const RationalFunction want = delta_m_prime(t).value;
    const ColoredPDCode pd = morse_to_pd(t);
    std::set<int> edges;
    for (const auto& x : pd.crossings) edges.insert(x.legs.begin(), x.legs.end());
    for (int e : edges) {
      CHECK(delta_m_prime(pd_to_morse(pd, e)).value == want);
    }
  }
}

TEST_CASE("unknot PD") {
  const ColoredPDCode pd = parse_pd("O[1]\nedgecolors: 1=a\n");
  const MorseTangle t = pd_to_morse(pd, 1);
  CHECK(t.is_one_strand());
  CHECK(t.crossing_count() == 0);
}

TEST_CASE("PD round trip after nested random moves") {
  const std::vector<MorseTangle> bases{
      braid_closure({a, a}, {{0, 1}, {0, 1}, {0, 1}}),
      braid_closure({a, b}, {{0, -1}, {0, -1}}),
      braid_closure({a, b, c}, {{0, 1}, {1, -1}, {0, 1}, {1, -1}, {0, 1}, {1, -1}}),
      MorseTangle::make({{a, Orientation::Up}}, {}),
  };
  std::mt19937 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    MorseTangle t = bases[rng() % bases.size()];
    const int depth = 1 + static_cast<int>(rng() % 6);
    for (int d = 0; d < depth; ++d) {
      const MoveKind mk = static_cast<MoveKind>(rng() % 3);
      auto sites = move_sites(t, mk);
      if (!sites.empty()) t = insert_move(t, mk, sites[rng() % sites.size()]);
    }
    const RationalFunction want = delta_m_prime(t).value;
    const ColoredPDCode pd = morse_to_pd(t);
    std::set<int> edges(pd.loops.begin(), pd.loops.end());
    for (const auto& x : pd.crossings) edges.insert(x.legs.begin(), x.legs.end());
    for (int e : edges) {
      const MorseTangle m = pd_to_morse(pd, e);
      CHECK(m.crossing_count() == t.crossing_count());
      CHECK(delta_m_prime(m).value == want);
      ++checked;
    }
  }
  CHECK(checked > 1000);
}
