#include "mvalex/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "mvalex/error.hpp"
#include "union_find.hpp"

namespace mvalex {

namespace {
std::size_t at(int i) { return static_cast<std::size_t>(i); }
}  // namespace

WirtingerPresentation wirtinger(const ColoredPDCode& pd) {
  if (pd.cut && pd.crossings.empty() && pd.loops.empty()) throw Error(ErrorKind::Malformed, "cut edge in an empty diagram");
  const OrientedPD o = orient(pd);
  WirtingerPresentation w;
  w.components = o.component_count;
  std::vector<int> labels;
  for (const auto& [e, c] : o.color) labels.push_back(e);
  std::map<int, int> index;
  for (int e : labels) index.emplace(e, static_cast<int>(index.size()));
  detail::UnionFind arcs(static_cast<int>(labels.size()));
  for (const auto& x : o.crossings) arcs.unite(index[x.over_in], index[x.over_out]);
  std::map<int, int> arc_of_root;
  std::vector<int> arc(labels.size());
  for (int e : labels) {
    int r = arcs.find(index[e]);
    auto [it, fresh] = arc_of_root.emplace(r, static_cast<int>(arc_of_root.size()));
    if (fresh) {
      w.generator_color.push_back(o.color.at(e));
      w.generator_component.push_back(o.component.at(e));
    }
    arc[at(index[e])] = it->second;
  }
  detail::UnionFind pieces(o.component_count);
  for (const auto& x : o.crossings) {
    w.relators.push_back({arc[at(index[x.under_in])], arc[at(index[x.under_out])], arc[at(index[x.over_in])], x.sign});
    pieces.unite(o.component.at(x.under_in), o.component.at(x.over_in));
  }
  for (int c = 0; c < o.component_count; ++c)
    if (pieces.find(c) != 0) w.connected = false;
  return w;
}

std::vector<std::vector<LaurentPoly>> fox_matrix(const WirtingerPresentation& w) {
  auto t = [&](int g, int e = 1) { return LaurentPoly::var(w.generator_color[at(g)], 2 * e); };
  std::vector<std::vector<LaurentPoly>> m(w.relators.size(), std::vector<LaurentPoly>(at(w.generators())));
  for (std::size_t r = 0; r < w.relators.size(); ++r) {
    const auto& x = w.relators[r];
    auto& row = m[r];
    if (x.sign > 0) {
      row[at(x.over)] += LaurentPoly(1) - t(x.in);
      row[at(x.in)] += t(x.over);
    } else {
      row[at(x.over)] += t(x.over, -1) * (t(x.in) - LaurentPoly(1));
      row[at(x.in)] += t(x.over, -1);
    }
    row[at(x.out)] -= LaurentPoly(1);
  }
  return m;
}

LaurentPoly determinant(std::vector<std::vector<LaurentPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return LaurentPoly(1);
  LaurentPoly prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return LaurentPoly();
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = divide_exact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
      m[i][k] = LaurentPoly();
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

LaurentPoly fox_alexander(const WirtingerPresentation& w) {
  if (!w.connected) return LaurentPoly();
  const int n = w.generators();
  if (n <= 1 && w.relators.empty()) return LaurentPoly(1);
  auto m = fox_matrix(w);
  const int rows = static_cast<int>(m.size());
  const int size = n - 1;
  if (rows < size) return LaurentPoly();
  // Delete column 0, then take the gcd over all choices of `size` rows.
  LaurentPoly g;
  std::vector<int> pick(at(rows), 0);
  std::fill(pick.begin(), pick.begin() + size, 1);
  std::sort(pick.begin(), pick.end(), std::greater<>());
  do {
    std::vector<std::vector<LaurentPoly>> minor;
    for (int r = 0; r < rows; ++r) {
      if (!pick[at(r)]) continue;
      minor.emplace_back(m[at(r)].begin() + 1, m[at(r)].end());
    }
    g = gcd(g, determinant(std::move(minor)));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  if (g.is_zero()) return g;
  if (w.components >= 2) {
    const ColorVar& c = w.generator_color[0];
    g = divide_exact(g, LaurentPoly::var(c, 2) - LaurentPoly(1));
  }
  return unit_normal_form(g);
}

OracleReport compare(const MorseTangle& t, const EvaluateOptions& options) {
  OracleReport r;
  r.invariant = delta_m_prime(t, options);
  const WirtingerPresentation w = wirtinger(morse_to_pd(t));
  r.components = w.components;
  r.oracle = fox_alexander(w);
  RationalFunction v = r.invariant.value;
  if (w.components == 1) {
    const ColorVar& q = r.invariant.open_color;
    v = v * RationalFunction(LaurentPoly::var(q) - LaurentPoly::var(q, -1));
    r.correction = "engine value times (q_" + q.id + " - q_" + q.id + "^-1); oracle read at t = q^2";
  } else {
    r.correction = "engine value as is; oracle read at t_i = q_i^2";
  }
  auto lp = v.as_laurent();
  if (!lp) {
    r.correction += "; engine value is not a Laurent polynomial";
    return r;
  }
  r.engine = unit_normal_form(*lp);
  r.match = equal_up_to_unit(r.engine, r.oracle);
  return r;
}

}  // namespace mvalex
