#pragma once

#include <Eigen/Core>

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "mvalex/diagrams.hpp"
#include "mvalex/laurent.hpp"
#include "mvalex/resolve.hpp"
#include "mvalex/tangles.hpp"

namespace Eigen {

template <>
struct NumTraits<mvalex::LaurentPoly> {
  using Real = mvalex::LaurentPoly;
  using NonInteger = mvalex::LaurentPoly;
  using Literal = mvalex::LaurentPoly;
  using Nested = mvalex::LaurentPoly;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 128
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace mvalex {

using Matrix8 = Eigen::Matrix<LaurentPoly, 8, 8>;

/// The three colors of the three-strand algebra.
struct Palette {
  ColorVar a{"a"}, b{"b"}, c{"c"};
};

/// Bottom colors of coloring variant 1..6: abc, cba, bca, bac, cab, acb.
std::array<ColorVar, 3> variant_colors(int variant, const Palette& p = {});
/// Variant index of a bottom coloring; 0 if it is not a permutation of the palette.
int variant_of(const std::array<ColorVar, 3>& bottom, const Palette& p = {});

struct ColoredGenerator {
  int index = 1;    // 1 or 2
  int sign = 1;
  int variant = 1;  // 1..6
  bool operator==(const ColoredGenerator&) const = default;
};

/// Product of generators written left to right; the rightmost acts first and
/// sits at the bottom.  The empty word is the identity e.
struct ColoredBraidWord {
  std::vector<ColoredGenerator> generators;
  Palette palette{};
};

/// Colors a plain word (index, sign) consistently starting from the given bottom coloring.
ColoredBraidWord colored_word(const std::vector<std::pair<int, int>>& word, int bottom_variant = 1,
                              const Palette& p = {});
/// Throws ColoringMismatch unless adjacent generators agree on strand colors.
void validate(const ColoredBraidWord& w);
/// The word as an upward three-strand braid.
MorseTangle braid_of(const ColoredBraidWord& w);
std::string to_text(const ColoredBraidWord& w);

/// v_1..v_8 in P_6 (box convention): dotted through-strands on S_k, free ends elsewhere.
const std::array<std::vector<int>, 8>& v_strands();
std::array<BasisDiagram, 8> vbasis();

struct PhiOptions {
  bool row_above = true;  // entry (i,j) glues v_i above the word and v_j below
  GlueScalars scalars{};
  unsigned threads = 1;
};

DiagramSum rho(const ColoredBraidWord& w, const PhiOptions& o = {});
/// Sandwich of a P_6 element between basis vectors; throws Degenerate if a
/// sandwich leaves more than one diagram.
Matrix8 sandwich(const DiagramSum& x, const PhiOptions& o = {});
/// Entrywise from rho(w).
Matrix8 phi_direct(const ColoredBraidWord& w, const PhiOptions& o = {});
/// Product of generator matrices.
Matrix8 phi(const ColoredBraidWord& w, const PhiOptions& o = {});
Matrix8 generator_matrix(const ColoredGenerator& g, const Palette& p = {}, const PhiOptions& o = {});

/// The three matrices printed for sigma_1 (variants 1, 2) and sigma_2 (variant 1).
Matrix8 printed_sigma1_v1(const Palette& p = {});
Matrix8 printed_sigma1_v2(const Palette& p = {});
Matrix8 printed_sigma2_v1(const Palette& p = {});

bool is_zero(const Matrix8& m);
bool equal(const Matrix8& a, const Matrix8& b);
Matrix8 identity8();
Matrix8 substitute(const Matrix8& m, const std::map<ColorVar, ColorVar>& map);
/// Entries that differ, as "(i,j): lhs vs rhs" lines (1-based).
std::vector<std::string> differences(const Matrix8& a, const Matrix8& b);
std::string to_text(const Matrix8& m);

struct R3Check {
  ColoredBraidWord lhs, rhs;
  Matrix8 lhs_matrix, rhs_matrix;
  bool equal = false;
};
/// phi(s1^3 s2^4 s1^1) against phi(s2^5 s1^6 s2^1) from bottom coloring (a,b,c).
R3Check check_braid_r3(const Palette& p = {}, const PhiOptions& o = {});

LaurentPoly g_plus(const LaurentPoly& x);
LaurentPoly g_minus(const LaurentPoly& x);
/// The matrix of the third skein-type relation; zero when the relation holds.
Matrix8 check_murakami3(const Palette& p = {}, bool drop_identity_term = false, const PhiOptions& o = {});

struct CalibrationEntry {
  Integer z, d_cyc;
  bool row_above = true;
  bool sigma1_v1 = false, sigma1_v2 = false, sigma2_v1 = false;
  bool idempotents = false;  // v_k orthogonal idempotents summing to rho(e)
  bool closed_loop = false;  // closing a plain strand gives 0
  bool matrices() const { return sigma1_v1 && sigma1_v2 && sigma2_v1; }
  bool passes() const { return matrices() && idempotents && closed_loop; }
};
/// v_k v_l = delta_kl v_k and sum v_k = rho(e) under the given scalars.
bool check_idempotents(const GlueScalars& s = {});
/// Tries (z, d_cyc) in {-1,0,1}^2 and both row conventions against the printed
/// matrices, idempotency and the closed-loop relation.
std::vector<CalibrationEntry> calibrate();

}  // namespace mvalex
