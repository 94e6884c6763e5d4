#include "mvalex/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "mvalex/error.hpp"

namespace mvalex {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (auto& [v, e] : entries) {
    if (!entries_.empty() && entries_.back().first == v) {
      entries_.back().second += e;
      if (entries_.back().second == 0) entries_.pop_back();
    } else if (e != 0) {
      entries_.emplace_back(std::move(v), e);
    }
  }
}

Monomial Monomial::var(const ColorVar& v, int exponent) {
  Monomial m;
  if (exponent != 0) m.entries_.emplace_back(v, exponent);
  return m;
}

int Monomial::exponent(const ColorVar& v) const {
  for (const auto& [var, e] : entries_)
    if (var == v) return e;
  return 0;
}

Monomial Monomial::inverse() const {
  Monomial m = *this;
  for (auto& entry : m.entries_) entry.second = -entry.second;
  return m;
}

bool Monomial::divisible_by(const Monomial& other) const {
  for (const auto& [v, e] : other.entries_)
    if (exponent(v) < e) return false;
  for (const auto& [v, e] : entries_)
    if (e < 0 && other.exponent(v) > e) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  auto i = a.entries_.begin();
  auto j = b.entries_.begin();
  while (i != a.entries_.end() || j != b.entries_.end()) {
    if (j == b.entries_.end() || (i != a.entries_.end() && i->first < j->first)) {
      out.entries_.push_back(*i++);
    } else if (i == a.entries_.end() || j->first < i->first) {
      out.entries_.push_back(*j++);
    } else {
      int e = i->second + j->second;
      if (e != 0) out.entries_.emplace_back(i->first, e);
      ++i;
      ++j;
    }
  }
  return out;
}

std::strong_ordering lex_compare(const Monomial& a, const Monomial& b) {
  auto i = a.entries().begin();
  auto j = b.entries().begin();
  while (i != a.entries().end() || j != b.entries().end()) {
    int ea = 0;
    int eb = 0;
    if (j == b.entries().end() || (i != a.entries().end() && i->first < j->first)) {
      ea = i->second;
      ++i;
    } else if (i == a.entries().end() || j->first < i->first) {
      eb = j->second;
      ++j;
    } else {
      ea = i->second;
      eb = j->second;
      ++i;
      ++j;
    }
    if (ea != eb) return ea <=> eb;
  }
  return std::strong_ordering::equal;
}

// ------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(int constant) {
  if (constant != 0) terms_.emplace(Monomial{}, Integer(constant));
}

LaurentPoly::LaurentPoly(const Integer& constant) {
  if (constant != 0) terms_.emplace(Monomial{}, constant);
}

LaurentPoly LaurentPoly::monomial(const Monomial& m, const Integer& coeff) {
  LaurentPoly p;
  if (coeff != 0) p.terms_.emplace(m, coeff);
  return p;
}

LaurentPoly LaurentPoly::var(const ColorVar& v, int exponent) {
  return monomial(Monomial::var(v, exponent));
}

Integer LaurentPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

bool LaurentPoly::is_unit() const {
  return terms_.size() == 1 && (terms_.begin()->second == 1 || terms_.begin()->second == -1);
}

std::set<ColorVar> LaurentPoly::variables() const {
  std::set<ColorVar> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.entries()) out.insert(v);
  return out;
}

int LaurentPoly::min_degree(const ColorVar& v) const {
  int best = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(v);
    if (first || e < best) best = e;
    first = false;
  }
  return best;
}

int LaurentPoly::max_degree(const ColorVar& v) const {
  int best = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(v);
    if (first || e > best) best = e;
    first = false;
  }
  return best;
}

LaurentPoly LaurentPoly::coefficient_in(const ColorVar& v, int e) const {
  LaurentPoly out;
  Monomial shift = Monomial::var(v, -e);
  for (const auto& [m, c] : terms_)
    if (m.exponent(v) == e) out.terms_.emplace(m * shift, c);
  return out;
}

Monomial LaurentPoly::min_exponents() const {
  std::vector<Monomial::Entry> entries;
  for (const auto& v : variables()) entries.emplace_back(v, min_degree(v));
  return Monomial(std::move(entries));
}

void LaurentPoly::add_term(const Monomial& m, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

void LaurentPoly::add_scaled(const LaurentPoly& o, const Monomial& m, const Integer& coeff) {
  for (const auto& [om, oc] : o.terms_) add_term(om * m, oc * coeff);
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

LaurentPoly operator-(LaurentPoly a) {
  for (auto& [m, c] : a.terms_) c = -c;
  return a;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly result(1);
  LaurentPoly base = *this;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return result;
}

LaurentPoly LaurentPoly::times_monomial(const Monomial& m) const {
  LaurentPoly out;
  for (const auto& [tm, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), tm * m, c);
  return out;
}

// ----------------------------------------------------------- free functions

LaurentPoly substitute(const LaurentPoly& p, const std::map<ColorVar, ColorVar>& map) {
  LaurentPoly out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Entry> entries;
    for (const auto& [v, e] : m.entries()) {
      auto it = map.find(v);
      entries.emplace_back(it == map.end() ? v : it->second, e);
    }
    out += LaurentPoly::monomial(Monomial(std::move(entries)), c);
  }
  return out;
}

LaurentPoly scale_exponents(const LaurentPoly& p, int factor) {
  LaurentPoly out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Entry> entries;
    for (const auto& [v, e] : m.entries()) entries.emplace_back(v, e * factor);
    out += LaurentPoly::monomial(Monomial(std::move(entries)), c);
  }
  return out;
}

namespace {

// Division in the polynomial ring: p and d have non-negative exponents and
// d is not divisible by any variable.
std::optional<LaurentPoly> polynomial_divide(LaurentPoly r, const LaurentPoly& d) {
  LaurentPoly q;
  const Monomial& lead_m = d.leading_monomial();
  const Integer& lead_c = d.leading_coefficient();
  while (!r.is_zero()) {
    const Monomial& rm = r.leading_monomial();
    const Integer& rc = r.leading_coefficient();
    if (!rm.divisible_by(lead_m)) return std::nullopt;
    if (rc % lead_c != 0) return std::nullopt;
    Monomial tm = rm / lead_m;
    Integer tc = rc / lead_c;
    q += LaurentPoly::monomial(tm, tc);
    r.add_scaled(d, tm, -tc);
  }
  return q;
}

}  // namespace

std::optional<LaurentPoly> try_divide_exact(const LaurentPoly& p, const LaurentPoly& d) {
  if (d.is_zero()) throw Error(ErrorKind::NotDivisible, "division by zero polynomial");
  if (p.is_zero()) return LaurentPoly{};
  // Monomials are units, so reduce both to polynomials with no monomial factor.
  Monomial p_shift = p.min_exponents();
  Monomial d_shift = d.min_exponents();
  LaurentPoly pp = p.times_monomial(p_shift.inverse());
  LaurentPoly dd = d.times_monomial(d_shift.inverse());
  auto q = polynomial_divide(std::move(pp), dd);
  if (!q) return std::nullopt;
  return q->times_monomial(p_shift / d_shift);
}

LaurentPoly divide_exact(const LaurentPoly& p, const LaurentPoly& d) {
  auto q = try_divide_exact(p, d);
  if (!q) throw Error(ErrorKind::NotDivisible, to_text(p) + " is not divisible by " + to_text(d));
  return *q;
}

LaurentPoly unit_normal_form(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  LaurentPoly out = p.times_monomial(p.min_exponents().inverse());
  if (out.leading_coefficient() < 0) out = -out;
  return out;
}

bool equal_up_to_unit(const LaurentPoly& p, const LaurentPoly& q) {
  return unit_normal_form(p) == unit_normal_form(q);
}

Integer content(const LaurentPoly& p) {
  Integer g = 0;
  for (const auto& [m, c] : p.terms()) g = boost::multiprecision::gcd(g, c);
  return boost::multiprecision::abs(g);
}

namespace {

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

// gcd of the coefficients of p viewed as a polynomial in v.
LaurentPoly content_in(const LaurentPoly& p, const ColorVar& v) {
  LaurentPoly g;
  for (int e = p.min_degree(v); e <= p.max_degree(v); ++e) {
    LaurentPoly c = p.coefficient_in(v, e);
    if (c.is_zero()) continue;
    g = poly_gcd(g, c);
    if (g == LaurentPoly(1)) break;
  }
  return g;
}

LaurentPoly primitive_part(const LaurentPoly& p, const ColorVar& v) {
  if (p.is_zero()) return p;
  return divide_exact(p, content_in(p, v));
}

// Pseudo-remainder of a by b in the variable v.
LaurentPoly pseudo_remainder(LaurentPoly a, const LaurentPoly& b, const ColorVar& v) {
  const int db = b.max_degree(v);
  const LaurentPoly lcb = b.coefficient_in(v, db);
  while (!a.is_zero() && a.max_degree(v) >= db) {
    const int da = a.max_degree(v);
    LaurentPoly lca = a.coefficient_in(v, da);
    a = lcb * a - lca * b.times_monomial(Monomial::var(v, da - db));
  }
  return a;
}

// Inputs and output are polynomials (non-negative exponents).
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return unit_normal_form(b);
  if (b.is_zero()) return unit_normal_form(a);
  std::set<ColorVar> vars = a.variables();
  for (const auto& v : b.variables()) vars.insert(v);
  if (vars.empty()) return LaurentPoly(boost::multiprecision::gcd(content(a), content(b)));

  const ColorVar v = *vars.begin();
  const bool a_has = a.max_degree(v) > 0;
  const bool b_has = b.max_degree(v) > 0;
  if (!a_has && !b_has) {
    // Neither involves v after shifting; recurse on the remaining variables.
    std::set<ColorVar> rest = vars;
    rest.erase(v);
    const ColorVar w = *rest.begin();
    return unit_normal_form(poly_gcd(content_in(a, w), content_in(b, w)) *
                            poly_gcd(primitive_part(a, w), primitive_part(b, w)));
  }
  if (!a_has) return unit_normal_form(poly_gcd(a, content_in(b, v)));
  if (!b_has) return unit_normal_form(poly_gcd(content_in(a, v), b));

  LaurentPoly c = poly_gcd(content_in(a, v), content_in(b, v));
  LaurentPoly f = primitive_part(a, v);
  LaurentPoly g = primitive_part(b, v);
  if (f.max_degree(v) < g.max_degree(v)) std::swap(f, g);
  while (!g.is_zero()) {
    LaurentPoly r = pseudo_remainder(f, g, v);
    f = std::move(g);
    g = primitive_part(r, v);
  }
  return unit_normal_form(c * primitive_part(f, v));
}

}  // namespace

LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero()) return LaurentPoly{};
  LaurentPoly pa = a.is_zero() ? a : a.times_monomial(a.min_exponents().inverse());
  LaurentPoly pb = b.is_zero() ? b : b.times_monomial(b.min_exponents().inverse());
  return unit_normal_form(poly_gcd(pa, pb));
}

// -------------------------------------------------------------------- text

std::string to_text(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) os << ' ';
    first = false;
    os << (c < 0 ? '-' : '+') << boost::multiprecision::abs(c);
    for (const auto& [v, e] : m.entries()) {
      os << "*q_" << v.id;
      if (e != 1) os << '^' << e;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << to_text(p); }

LaurentPoly parse_laurent(std::string_view text) {
  std::size_t i = 0;
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorKind::SyntaxError,
                 "polynomial '" + std::string(text) + "' at offset " + std::to_string(i) + ": " + why);
  };
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_int = [&]() -> std::string {
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    std::string s(text.substr(start, i - start));
    if (s.empty() || s == "-" || s == "+") throw fail("expected integer");
    return s;
  };
  auto read_factor = [&]() -> Monomial::Entry {
    if (text.substr(i, 2) != "q_") throw fail("expected q_<id>");
    i += 2;
    std::size_t start = i;
    while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) throw fail("empty variable id");
    ColorVar v(std::string(text.substr(start, i - start)));
    int e = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      e = std::stoi(read_int());
    }
    return {v, e};
  };

  LaurentPoly out;
  skip_ws();
  if (text.substr(i) == "0") return out;
  bool any = false;
  while (true) {
    skip_ws();
    if (i >= text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip_ws();
    } else if (any) {
      throw fail("expected '+' or '-' between terms");
    }
    Integer coeff = 1;
    std::vector<Monomial::Entry> entries;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      coeff = Integer(read_int());
    } else {
      entries.push_back(read_factor());
    }
    while (i < text.size() && text[i] == '*') {
      ++i;
      entries.push_back(read_factor());
    }
    out += LaurentPoly::monomial(Monomial(std::move(entries)), sign * coeff);
    any = true;
  }
  if (!any) throw fail("empty polynomial");
  return out;
}

// -------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(const LaurentPoly& num, const LaurentPoly& den)
    : num_(num), den_(den) {
  if (den_.is_zero()) throw Error(ErrorKind::NotDivisible, "rational function with zero denominator");
  canonicalize();
}

void RationalFunction::canonicalize() {
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  if (auto q = try_divide_exact(num_, den_)) {
    num_ = std::move(*q);
    den_ = LaurentPoly(1);
    return;
  }
  LaurentPoly g = gcd(num_, den_);
  num_ = divide_exact(num_, g);
  den_ = divide_exact(den_, g);
  Monomial shift = den_.min_exponents().inverse();
  num_ = num_.times_monomial(shift);
  den_ = den_.times_monomial(shift);
  if (den_.leading_coefficient() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

std::optional<LaurentPoly> RationalFunction::as_laurent() const {
  if (den_ == LaurentPoly(1)) return num_;
  return std::nullopt;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ - b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw Error(ErrorKind::NotDivisible, "division by zero rational function");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

std::string to_text(const RationalFunction& r) {
  if (r.denominator() == LaurentPoly(1)) return to_text(r.numerator());
  return "(" + to_text(r.numerator()) + ") / (" + to_text(r.denominator()) + ")";
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& r) { return os << to_text(r); }

}  // namespace mvalex
