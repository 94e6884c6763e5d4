#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvalex/diagrams.hpp"
#include "mvalex/invariant.hpp"
#include "mvalex/tangles.hpp"

namespace mvalex {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  bool passed() const;
};

/// matrices, r3, murakami3, idempotents, reidemeister, skein, axioms.
const std::vector<std::string>& suite_names();
/// Throws Error(SyntaxError) for an unknown suite name.
SuiteReport run_suite(const std::string& name, unsigned threads = 1);

/// Raw, nonzero and merged counts of gluing a small braid's crossings at once,
/// together with its value.
struct LocalCount {
  GlueStats stats;
  DiagramSum value;
};

/// Two-strand positive-over-negative (or reversed) stack.
MorseTangle r2_tangle(const ColorVar& left, const ColorVar& right, bool positive_below);
/// The two sides of a third-move configuration with signs (a, b, c) bottom to top:
/// s1^a s2^b s1^c against s2^c s1^b s2^a.
std::pair<MorseTangle, MorseTangle> r3_tangles(const std::array<ColorVar, 3>& colors, const std::array<int, 3>& signs);
LocalCount local_count(const MorseTangle& t);

/// A one-strand straight tangle with an extra closed component per entry.
MorseTangle straight_strand(const ColorVar& c);
/// Curl variant 0..3 on a straight strand of color c.
MorseTangle curl(const ColorVar& c, int variant);
/// Expected curl scalar and rotation shift (doubled) for a variant.
LaurentPoly curl_scalar(const ColorVar& c, int variant);
int curl_rotation_twice(int variant);

/// Same-color skein triple obtained from a one-strand tangle by switching or
/// smoothing crossing slice h: (plus, minus, smoothing).
struct SkeinTriple {
  MorseTangle plus, minus, zero;
};
SkeinTriple skein_triple(const MorseTangle& t, int h);

}  // namespace mvalex
