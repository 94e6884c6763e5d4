#pragma once

#include <string>
#include <vector>

#include "mvalex/invariant.hpp"
#include "mvalex/laurent.hpp"
#include "mvalex/tangles.hpp"

namespace mvalex {

/// One generator per arc; relator x_out = x_over^s x_in x_over^-s per crossing.
struct WirtingerPresentation {
  struct Relator {
    int in = 0, out = 0, over = 0;
    int sign = 1;
  };
  std::vector<ColorVar> generator_color;
  std::vector<int> generator_component;
  std::vector<Relator> relators;
  int components = 0;
  bool connected = true;  // the diagram is one piece

  int generators() const { return static_cast<int>(generator_color.size()); }
};

WirtingerPresentation wirtinger(const ColoredPDCode& pd);

/// Abelianized Fox Jacobian, x_i -> t_{color(i)} with t = q^2.
std::vector<std::vector<LaurentPoly>> fox_matrix(const WirtingerPresentation& w);

/// Determinant by fraction-free elimination.
LaurentPoly determinant(std::vector<std::vector<LaurentPoly>> m);

/// Multivariate Alexander polynomial in t_i = q_i^2, in unit normal form.
/// Disconnected diagrams give 0.
LaurentPoly fox_alexander(const WirtingerPresentation& w);

struct OracleReport {
  int components = 0;
  LaurentPoly oracle;      // unit normal form
  LaurentPoly engine;      // engine value after the correction below, unit normal form
  std::string correction;  // what was applied to the engine value
  NormalizedInvariant invariant;
  bool match = false;
};

/// Engine against oracle on the closure of a one-strand tangle.
OracleReport compare(const MorseTangle& t, const EvaluateOptions& options = {});

}  // namespace mvalex
