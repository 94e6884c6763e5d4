#include "mvalex/braidrep.hpp"

#include <sstream>

#include "mvalex/error.hpp"

namespace mvalex {

namespace {

constexpr const char* kVariants[6] = {"abc", "cba", "bca", "bac", "cab", "acb"};

const ColorVar& pick(const Palette& p, char ch) { return ch == 'a' ? p.a : ch == 'b' ? p.b : p.c; }

std::array<ColorVar, 3> after(std::array<ColorVar, 3> cols, int index) {
  std::swap(cols[static_cast<std::size_t>(index - 1)], cols[static_cast<std::size_t>(index)]);
  return cols;
}

}  // namespace

std::array<ColorVar, 3> variant_colors(int variant, const Palette& p) {
  if (variant < 1 || variant > 6) throw Error(ErrorKind::ColoringMismatch, "coloring variant must be 1..6");
  const char* s = kVariants[variant - 1];
  return {pick(p, s[0]), pick(p, s[1]), pick(p, s[2])};
}

int variant_of(const std::array<ColorVar, 3>& bottom, const Palette& p) {
  for (int v = 1; v <= 6; ++v)
    if (variant_colors(v, p) == bottom) return v;
  return 0;
}

ColoredBraidWord colored_word(const std::vector<std::pair<int, int>>& word, int bottom_variant, const Palette& p) {
  ColoredBraidWord w;
  w.palette = p;
  auto cols = variant_colors(bottom_variant, p);
  w.generators.resize(word.size());
  for (std::size_t k = word.size(); k-- > 0;) {
    const auto [index, sign] = word[k];
    if (index != 1 && index != 2) throw Error(ErrorKind::ColoringMismatch, "generator index must be 1 or 2");
    w.generators[k] = {index, sign < 0 ? -1 : 1, variant_of(cols, p)};
    cols = after(cols, index);
  }
  return w;
}

void validate(const ColoredBraidWord& w) {
  for (const auto& g : w.generators) {
    if (g.index != 1 && g.index != 2) throw Error(ErrorKind::ColoringMismatch, "generator index must be 1 or 2");
    variant_colors(g.variant, w.palette);
  }
  for (std::size_t k = 0; k + 1 < w.generators.size(); ++k) {
    const auto& upper = w.generators[k];
    const auto& lower = w.generators[k + 1];
    if (after(variant_colors(lower.variant, w.palette), lower.index) != variant_colors(upper.variant, w.palette))
      throw Error(ErrorKind::ColoringMismatch, "generator " + std::to_string(k + 2) + " of " + to_text(w) +
                                                   " does not continue into generator " + std::to_string(k + 1));
  }
}

MorseTangle braid_of(const ColoredBraidWord& w) {
  validate(w);
  std::array<ColorVar, 3> bottom = w.generators.empty() ? variant_colors(1, w.palette)
                                                        : variant_colors(w.generators.back().variant, w.palette);
  std::vector<std::pair<int, int>> up;
  for (auto it = w.generators.rbegin(); it != w.generators.rend(); ++it) up.push_back({it->index - 1, it->sign});
  return braid_tangle({bottom.begin(), bottom.end()}, up);
}

std::string to_text(const ColoredBraidWord& w) {
  if (w.generators.empty()) return "e";
  std::ostringstream os;
  for (const auto& g : w.generators) {
    os << "s" << g.index << "^" << (g.sign < 0 ? "-" : "") << g.variant;
  }
  return os.str();
}

const std::array<std::vector<int>, 8>& v_strands() {
  static const std::array<std::vector<int>, 8> s{{{0, 1, 2}, {1, 2}, {0, 2}, {0, 1}, {0}, {1}, {2}, {}}};
  return s;
}

std::array<BasisDiagram, 8> vbasis() {
  std::array<BasisDiagram, 8> out;
  for (std::size_t k = 0; k < 8; ++k) {
    std::vector<Chord> chords;
    std::vector<int> frees;
    for (int i = 0; i < 3; ++i) {
      const int b = PlanarTangle::box_bottom(3, 3, i), t = PlanarTangle::box_top(3, 3, i);
      const auto& s = v_strands()[k];
      if (std::find(s.begin(), s.end(), i) != s.end()) chords.push_back({std::min(b, t), std::max(b, t), ArcKind::Dotted});
      else {
        frees.push_back(b);
        frees.push_back(t);
      }
    }
    out[k] = BasisDiagram::make(6, chords, frees);
  }
  return out;
}

DiagramSum rho(const ColoredBraidWord& w, const PhiOptions& o) {
  EvaluateOptions e;
  e.scalars = o.scalars;
  e.threads = o.threads;
  return evaluate(braid_of(w), e);
}

Matrix8 sandwich(const DiagramSum& x, const PhiOptions& o) {
  if (x.size() != 6) throw Error(ErrorKind::SizeMismatch, "sandwich needs an element of P_6");
  const auto v = vbasis();
  const PlanarTangle three = PlanarTangle::stacking(3, 3, 3);
  GlueOptions g;
  g.scalars = o.scalars;
  std::array<DiagramSum, 8> below;
  std::array<DiagramSum, 8> vs;
  for (std::size_t k = 0; k < 8; ++k) {
    vs[k] = DiagramSum(v[k], 1);
    below[k] = glue(three, std::vector<const DiagramSum*>{&vs[k], &x}, g);
  }
  Matrix8 m;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const std::size_t top = static_cast<std::size_t>(o.row_above ? i : j);
      const std::size_t bot = static_cast<std::size_t>(o.row_above ? j : i);
      DiagramSum s = glue(three, std::vector<const DiagramSum*>{&below[bot], &vs[top]}, g);
      if (s.term_count() > 1)
        throw Error(ErrorKind::Degenerate, "sandwich (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                               ") leaves " + std::to_string(s.term_count()) + " diagrams");
      m(i, j) = s.is_zero() ? LaurentPoly() : s.terms().begin()->second;
    }
  return m;
}

Matrix8 phi_direct(const ColoredBraidWord& w, const PhiOptions& o) { return sandwich(rho(w, o), o); }

Matrix8 generator_matrix(const ColoredGenerator& g, const Palette& p, const PhiOptions& o) {
  ColoredBraidWord w;
  w.palette = p;
  w.generators = {g};
  return phi_direct(w, o);
}

Matrix8 phi(const ColoredBraidWord& w, const PhiOptions& o) {
  validate(w);
  Matrix8 m = identity8();
  for (const auto& g : w.generators) m = (m * generator_matrix(g, w.palette, o)).eval();
  return m;
}

namespace {

LaurentPoly V(const ColorVar& c, int e = 1) { return LaurentPoly::var(c, e); }
LaurentPoly G(const ColorVar& c) { return V(c) - V(c, -1); }

Matrix8 sigma1_form(const ColorVar& x, const ColorVar& y) {
  Matrix8 m = Matrix8::Constant(LaurentPoly());
  m(0, 0) = V(x);
  m(1, 2) = V(x, -1);
  m(2, 1) = V(x);
  m(2, 2) = G(y);
  m(3, 3) = V(x);
  m(4, 4) = G(y);
  m(4, 5) = V(x);
  m(5, 4) = V(x, -1);
  m(6, 6) = -V(x, -1);
  m(7, 7) = -V(x, -1);
  return m;
}

}  // namespace

Matrix8 printed_sigma1_v1(const Palette& p) { return sigma1_form(p.a, p.b); }
Matrix8 printed_sigma1_v2(const Palette& p) { return sigma1_form(p.c, p.b); }

Matrix8 printed_sigma2_v1(const Palette& p) {
  Matrix8 m = Matrix8::Constant(LaurentPoly());
  m(0, 0) = V(p.b);
  m(1, 1) = V(p.b);
  m(2, 3) = V(p.b, -1);
  m(3, 2) = V(p.b);
  m(3, 3) = G(p.c);
  m(4, 4) = -V(p.b, -1);
  m(5, 5) = G(p.c);
  m(5, 6) = V(p.b);
  m(6, 5) = V(p.b, -1);
  m(7, 7) = -V(p.b, -1);
  return m;
}

bool is_zero(const Matrix8& m) {
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

bool equal(const Matrix8& a, const Matrix8& b) { return differences(a, b).empty(); }

Matrix8 identity8() {
  Matrix8 m = Matrix8::Constant(LaurentPoly());
  for (int i = 0; i < 8; ++i) m(i, i) = LaurentPoly(1);
  return m;
}

Matrix8 substitute(const Matrix8& m, const std::map<ColorVar, ColorVar>& map) {
  Matrix8 out;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) out(i, j) = substitute(m(i, j), map);
  return out;
}

std::vector<std::string> differences(const Matrix8& a, const Matrix8& b) {
  std::vector<std::string> out;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      if (a(i, j) != b(i, j))
        out.push_back("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " + to_text(a(i, j)) + " vs " +
                      to_text(b(i, j)));
  return out;
}

std::string to_text(const Matrix8& m) {
  std::ostringstream os;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) os << (j ? " | " : "") << to_text(m(i, j));
    os << '\n';
  }
  return os.str();
}

R3Check check_braid_r3(const Palette& p, const PhiOptions& o) {
  R3Check r;
  r.lhs = colored_word({{1, 1}, {2, 1}, {1, 1}}, 1, p);
  r.rhs = colored_word({{2, 1}, {1, 1}, {2, 1}}, 1, p);
  r.lhs_matrix = phi(r.lhs, o);
  r.rhs_matrix = phi(r.rhs, o);
  r.equal = equal(r.lhs_matrix, r.rhs_matrix);
  return r;
}

LaurentPoly g_plus(const LaurentPoly& x) {
  LaurentPoly inv;
  for (const auto& [m, c] : x.terms()) inv += LaurentPoly::monomial(m.inverse(), c);
  return x + inv;
}

LaurentPoly g_minus(const LaurentPoly& x) {
  LaurentPoly inv;
  for (const auto& [m, c] : x.terms()) inv += LaurentPoly::monomial(m.inverse(), c);
  return x - inv;
}

Matrix8 check_murakami3(const Palette& p, bool drop_identity_term, const PhiOptions& o) {
  auto M = [&](std::vector<std::pair<int, int>> w) { return phi(colored_word(w, 1, p), o); };
  auto mono = [](std::vector<Monomial::Entry> e) { return LaurentPoly::monomial(Monomial(std::move(e))); };
  const LaurentPoly a = V(p.a), b = V(p.b), c = V(p.c);
  auto scale = [](const Matrix8& m, const LaurentPoly& s) {
    Matrix8 out;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) out(i, j) = m(i, j) * s;
    return out;
  };
  Matrix8 z = scale(M({{1, 1}, {2, 1}, {2, 1}, {1, 1}}), g_plus(c) * g_minus(b));
  z -= scale(M({{2, 1}, {1, 1}, {1, 1}, {2, 1}}), g_minus(b) * g_plus(a));
  z -= scale((M({{1, 1}, {1, 1}, {2, 1}, {2, 1}}) + M({{2, 1}, {2, 1}, {1, 1}, {1, 1}})).eval(),
             g_minus(mono({{p.c, -1}, {p.a, 1}})));
  z += scale(M({{2, 1}, {2, 1}}), g_minus(mono({{p.c, -1}, {p.b, 1}, {p.a, 1}})) * g_plus(a));
  z -= scale(M({{1, 1}, {1, 1}}), g_plus(c) * g_minus(mono({{p.c, 1}, {p.b, 1}, {p.a, -1}})));
  if (!drop_identity_term) z -= scale(M({}), g_minus(mono({{p.c, -2}, {p.a, 2}})));
  return z;
}

bool check_idempotents(const GlueScalars& s) {
  const auto v = vbasis();
  GlueOptions g;
  g.scalars = s;
  const PlanarTangle three = PlanarTangle::multiplication(3);
  DiagramSum total(6);
  for (std::size_t k = 0; k < 8; ++k) {
    DiagramSum vk(v[k], 1);
    total += vk;
    for (std::size_t l = 0; l < 8; ++l) {
      DiagramSum vl(v[l], 1);
      DiagramSum prod = glue(three, std::vector<const DiagramSum*>{&vk, &vl}, g);
      if (k == l ? prod != vk : !prod.is_zero()) return false;
    }
  }
  EvaluateOptions e;
  e.scalars = s;
  return total == evaluate(braid_tangle({ColorVar("a"), ColorVar("b"), ColorVar("c")}, {}), e);
}

std::vector<CalibrationEntry> calibrate() {
  std::vector<CalibrationEntry> out;
  const Palette p;
  for (int z = -1; z <= 1; ++z)
    for (int d = -1; d <= 1; ++d)
      for (bool above : {true, false}) {
        CalibrationEntry e;
        e.z = z;
        e.d_cyc = d;
        e.row_above = above;
        PhiOptions o;
        o.row_above = above;
        o.scalars.free_path = z;
        o.scalars.dotted_cycle = d;
        auto test = [&](const ColoredGenerator& g, const Matrix8& want) {
          try {
            return equal(generator_matrix(g, p, o), want);
          } catch (const Error&) {
            return false;
          }
        };
        e.sigma1_v1 = test({1, 1, 1}, printed_sigma1_v1(p));
        e.sigma1_v2 = test({1, 1, 2}, printed_sigma1_v2(p));
        e.sigma2_v1 = test({2, 1, 1}, printed_sigma2_v1(p));
        e.idempotents = check_idempotents(o.scalars);
        GlueOptions g;
        g.scalars = o.scalars;
        const PlanarTangle close = PlanarTangle::trace(1);
        e.closed_loop = (glue(close, {DiagramSum(dotted_strand(), 1)}, g) + glue(close, {DiagramSum(free_pair(), 1)}, g)).is_zero();
        out.push_back(e);
      }
  return out;
}

}  // namespace mvalex
