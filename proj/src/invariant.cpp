#include "mvalex/invariant.hpp"

#include "mvalex/error.hpp"

namespace mvalex {

namespace {

LaurentPoly minus_q_power(const ColorVar& q, int e) {
  LaurentPoly m = LaurentPoly::var(q, e);
  return e % 2 == 0 ? m : -m;
}

std::map<ColorVar, HalfInteger> rotations_of(const MorseTangle& t) {
  std::map<ColorVar, HalfInteger> r;
  for (const auto& c : t.colors()) r[c] = rotation_number(t, c);
  return r;
}

}  // namespace

LaurentPoly rotation_factor(const MorseTangle& t) {
  LaurentPoly f(1);
  for (const auto& [c, r] : rotations_of(t)) f = f * minus_q_power(c, -r.value());
  return f;
}

LaurentPoly turning_factor(const MorseTangle& t, const ColorVar& q) {
  return minus_q_power(q, -turning_number(t).value());
}

RationalFunction normalizer(const MorseTangle& t) {
  const ColorVar& ql = t.components()[static_cast<std::size_t>(t.open_component())].color;
  return RationalFunction(rotation_factor(t), LaurentPoly::var(ql) - LaurentPoly::var(ql, -1));
}

LaurentPoly dotted_coefficient(const DiagramSum& s) {
  if (s.size() != 2) throw Error(ErrorKind::NotOneStrand, "expected an element of P_2, got P_" + std::to_string(s.size()));
  return s.coefficient(dotted_strand());
}

LaurentPoly free_pair_coefficient(const DiagramSum& s) {
  if (s.size() != 2) throw Error(ErrorKind::NotOneStrand, "expected an element of P_2, got P_" + std::to_string(s.size()));
  return s.coefficient(free_pair());
}

NormalizedInvariant delta_m_prime(const MorseTangle& t, const EvaluateOptions& options) {
  NormalizedInvariant inv;
  inv.open_color = t.components()[static_cast<std::size_t>(t.open_component())].color;
  inv.normalizer = normalizer(t);
  inv.rotations = rotations_of(t);
  inv.raw_sum = evaluate(t, options);
  inv.dotted_coefficient = dotted_coefficient(inv.raw_sum);
  inv.free_coefficient = free_pair_coefficient(inv.raw_sum);
  inv.value = inv.normalizer * RationalFunction(inv.dotted_coefficient);
  return inv;
}

LaurentPoly delta_prime_single(const MorseTangle& t, const ColorVar& q, const EvaluateOptions& options) {
  t.open_component();
  std::map<ColorVar, ColorVar> merge;
  for (const auto& c : t.colors()) merge[c] = q;
  MorseTangle m = t.recolored(merge);
  return turning_factor(m, q) * dotted_coefficient(evaluate(m, options));
}

TangleInvariant tangle_invariant(const MorseTangle& t, const EvaluateOptions& options) {
  return {evaluate(t, options), rotations_of(t)};
}

}  // namespace mvalex
