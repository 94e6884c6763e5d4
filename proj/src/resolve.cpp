#include "mvalex/resolve.hpp"

#include <algorithm>

#include "mvalex/error.hpp"
#include "union_find.hpp"

namespace mvalex {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

BasisDiagram D(std::vector<std::pair<int, int>> chords, std::vector<int> frees) {
  std::vector<Chord> cs;
  for (auto [i, j] : chords) cs.push_back({i, j, ArcKind::Dotted});
  return BasisDiagram::make(4, cs, frees);
}

}  // namespace

DiagramSum resolve_crossing(int sign, const ColorVar& over, const ColorVar& under) {
  const LaurentPoly qo = LaurentPoly::var(over), qoi = LaurentPoly::var(over, -1);
  const LaurentPoly g = LaurentPoly::var(under) - LaurentPoly::var(under, -1);
  DiagramSum s(4);
  if (sign > 0) {
    s.add(D({{0, 3}, {1, 2}}, {}), qo);
    s.add(D({{1, 3}}, {0, 2}), qo);
    s.add(D({{0, 3}}, {1, 2}), g);
    s.add(D({{0, 2}}, {1, 3}), qoi);
    s.add(D({}, {0, 1, 2, 3}), -qoi);
  } else {
    s.add(D({{0, 3}, {1, 2}}, {}), qoi);
    s.add(D({{0, 2}}, {1, 3}), qoi);
    s.add(D({{1, 2}}, {0, 3}), -g);
    s.add(D({{1, 3}}, {0, 2}), qo);
    s.add(D({}, {0, 1, 2, 3}), -qo);
  }
  return s;
}

DiagramSum resolve_slice(const MorseTangle& t, int h) {
  const Slice& s = t.slices()[at(h)];
  if (s.kind != SliceKind::Cross) throw Error(ErrorKind::Malformed, "slice " + std::to_string(h) + " is not a crossing");
  const ColorVar& left = t.color_at(h, s.position);
  const ColorVar& right = t.color_at(h, s.position + 1);
  return s.sign > 0 ? resolve_crossing(1, left, right) : resolve_crossing(-1, right, left);
}

namespace {

// Planar tangle applying slice s to a (nb, w) box state.
PlanarTangle slice_step(int nb, int w, const Slice& s) {
  using PT = PlanarTangle;
  std::vector<std::pair<Port, Port>> strands;
  const int w2 = w + (s.kind == SliceKind::Cup ? 2 : s.kind == SliceKind::Cap ? -2 : 0);
  for (int i = 0; i < nb; ++i) strands.push_back({{-1, PT::box_bottom(nb, w2, i)}, {0, PT::box_bottom(nb, w, i)}});
  auto state_top = [&](int j) { return Port{0, PT::box_top(nb, w, j)}; };
  auto outer_top = [&](int j) { return Port{-1, PT::box_top(nb, w2, j)}; };
  const int p = s.position;
  std::vector<int> inner{nb + w};
  switch (s.kind) {
    case SliceKind::Cup:
      for (int j = 0; j < w; ++j) strands.push_back({state_top(j), outer_top(j < p ? j : j + 2)});
      strands.push_back({outer_top(p), outer_top(p + 1)});
      break;
    case SliceKind::Cap:
      for (int j = 0; j < w; ++j)
        if (j < p) strands.push_back({state_top(j), outer_top(j)});
        else if (j >= p + 2) strands.push_back({state_top(j), outer_top(j - 2)});
      strands.push_back({state_top(p), state_top(p + 1)});
      break;
    case SliceKind::Cross:
      inner.push_back(4);
      for (int j = 0; j < w; ++j)
        if (j != p && j != p + 1) strands.push_back({state_top(j), outer_top(j)});
      strands.push_back({state_top(p), {1, 0}});
      strands.push_back({state_top(p + 1), {1, 1}});
      strands.push_back({{1, 2}, outer_top(p + 1)});
      strands.push_back({{1, 3}, outer_top(p)});
      break;
  }
  return PlanarTangle(nb + w2, inner, std::move(strands));
}

}  // namespace

DiagramSum evaluate(const MorseTangle& t, const EvaluateOptions& options) {
  const int nb = static_cast<int>(t.bottom().size());
  std::vector<Chord> id;
  for (int i = 0; i < nb; ++i) id.push_back({i, 2 * nb - 1 - i, ArcKind::Plain});
  DiagramSum state(BasisDiagram::make(2 * nb, id, {}), 1);
  if (options.expand_plain_eagerly) state = expand_plain(state);
  ContractionStats local;
  local.crossings = t.crossing_count();
  local.peak_terms = state.term_count();
  GlueOptions g;
  g.scalars = options.scalars;
  g.threads = options.threads;
  for (int h = 0; h < static_cast<int>(t.slices().size()); ++h) {
    const Slice& s = t.slices()[at(h)];
    PlanarTangle step = slice_step(nb, t.width_at(h), s);
    SliceStats ss;
    ss.slice = h;
    ss.kind = s.kind;
    ss.width = t.width_at(h + 1);
    g.stats = &ss.glue;
    if (s.kind == SliceKind::Cross) {
      DiagramSum x = resolve_slice(t, h);
      state = glue(step, std::vector<const DiagramSum*>{&state, &x}, g);
    } else {
      state = glue(step, std::vector<const DiagramSum*>{&state}, g);
    }
    if (options.expand_plain_eagerly) state = expand_plain(state);
    local.total_raw += ss.glue.raw;
    local.total_surviving += ss.glue.surviving;
    local.peak_terms = std::max<std::uint64_t>(local.peak_terms, state.term_count());
    local.slices.push_back(ss);
    if (state.is_zero()) {
      state = DiagramSum(nb + t.width_at(static_cast<int>(t.slices().size())));
      break;
    }
  }
  DiagramSum out = expand_plain(state);
  local.final_terms = out.term_count();
  if (options.stats) *options.stats = std::move(local);
  return out;
}

PlanarTangle crossing_tangle(const MorseTangle& t) {
  const int h_count = static_cast<int>(t.slices().size());
  const int nb = static_cast<int>(t.bottom().size());
  const int nt = static_cast<int>(t.top().size());
  std::vector<int> offset{0};
  for (int h = 0; h <= h_count; ++h) offset.push_back(offset.back() + t.width_at(h));
  detail::UnionFind uf(offset.back());
  std::vector<std::vector<Port>> ends(at(offset.back()));
  std::vector<int> inner;
  for (int h = 0; h < h_count; ++h) {
    const Slice& s = t.slices()[at(h)];
    const int w = t.width_at(h), off = offset[at(h)], up = offset[at(h + 1)], p = s.position;
    for (int i = 0; i < w; ++i) {
      if (s.kind == SliceKind::Cup) uf.unite(off + i, up + (i < p ? i : i + 2));
      else if (s.kind == SliceKind::Cap) {
        if (i < p) uf.unite(off + i, up + i);
        else if (i >= p + 2) uf.unite(off + i, up + i - 2);
      } else if (i != p && i != p + 1) {
        uf.unite(off + i, up + i);
      }
    }
    if (s.kind == SliceKind::Cup) uf.unite(up + p, up + p + 1);
    if (s.kind == SliceKind::Cap) uf.unite(off + p, off + p + 1);
    if (s.kind == SliceKind::Cross) {
      const int d = static_cast<int>(inner.size());
      inner.push_back(4);
      ends[at(off + p)].push_back({d, 0});
      ends[at(off + p + 1)].push_back({d, 1});
      ends[at(up + p + 1)].push_back({d, 2});
      ends[at(up + p)].push_back({d, 3});
    }
  }
  for (int i = 0; i < nb; ++i) ends[at(i)].push_back({-1, PlanarTangle::box_bottom(nb, nt, i)});
  for (int j = 0; j < nt; ++j) ends[at(offset[at(h_count)] + j)].push_back({-1, PlanarTangle::box_top(nb, nt, j)});
  std::map<int, std::vector<Port>> groups;
  for (int n = 0; n < offset.back(); ++n) {
    auto& g = groups[uf.find(n)];
    g.insert(g.end(), ends[at(n)].begin(), ends[at(n)].end());
  }
  std::vector<std::pair<Port, Port>> strands;
  int loops = 0;
  for (const auto& [r, g] : groups) {
    if (g.empty()) ++loops;
    else if (g.size() == 2) strands.push_back({g[0], g[1]});
    else throw Error(ErrorKind::Malformed, "internal: strand with " + std::to_string(g.size()) + " ends");
  }
  return PlanarTangle(nb + nt, inner, std::move(strands), loops);
}

DiagramSum evaluate_full(const MorseTangle& t, GlueStats* stats, const GlueOptions& options) {
  PlanarTangle pt = crossing_tangle(t);
  std::vector<DiagramSum> xs;
  for (int h = 0; h < static_cast<int>(t.slices().size()); ++h)
    if (t.slices()[at(h)].kind == SliceKind::Cross) xs.push_back(resolve_slice(t, h));
  GlueOptions g = options;
  g.stats = stats;
  return expand_plain(glue(pt, xs, g));
}

ContractionStats contraction_stats(const MorseTangle& t, int full_limit, unsigned threads) {
  ContractionStats st;
  EvaluateOptions o;
  o.threads = threads;
  o.stats = &st;
  evaluate(t, o);
  if (t.crossing_count() <= full_limit) {
    GlueStats g;
    GlueOptions go;
    go.threads = threads;
    evaluate_full(t, &g, go);
    st.full = g;
  }
  return st;
}

}  // namespace mvalex
