#pragma once

#include <map>

#include "mvalex/diagrams.hpp"
#include "mvalex/laurent.hpp"
#include "mvalex/resolve.hpp"
#include "mvalex/tangles.hpp"

namespace mvalex {

struct NormalizedInvariant {
  RationalFunction value;
  DiagramSum raw_sum{2};
  std::map<ColorVar, HalfInteger> rotations;
  RationalFunction normalizer;
  ColorVar open_color;
  LaurentPoly dotted_coefficient;
  LaurentPoly free_coefficient;  // coefficient of the two-free-end diagram
};

/// Product over colors of (-q_i)^(-rot_i), a unit.
LaurentPoly rotation_factor(const MorseTangle& t);
/// (-q)^(-tau) with every color read as q.
LaurentPoly turning_factor(const MorseTangle& t, const ColorVar& q);

/// N(T) for a one-strand tangle.
RationalFunction normalizer(const MorseTangle& t);

/// Coefficient of the dotted strand in a P_2 element.
LaurentPoly dotted_coefficient(const DiagramSum& s);
LaurentPoly free_pair_coefficient(const DiagramSum& s);

NormalizedInvariant delta_m_prime(const MorseTangle& t, const EvaluateOptions& options = {});

/// Single-variable invariant: every color merged into q, scaled by (-q)^(-tau),
/// with no division by (q - q^-1).
LaurentPoly delta_prime_single(const MorseTangle& t, const ColorVar& q = ColorVar("q"),
                               const EvaluateOptions& options = {});

struct TangleInvariant {
  DiagramSum value;
  std::map<ColorVar, HalfInteger> rotations;
};
TangleInvariant tangle_invariant(const MorseTangle& t, const EvaluateOptions& options = {});

}  // namespace mvalex
