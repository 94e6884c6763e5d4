#pragma once

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mvalex {

using Integer = boost::multiprecision::cpp_int;

/// Color of a link component.  Printed as `q_<id>`; the global variable order
/// is the lexicographic order of ids.
struct ColorVar {
  std::string id;

  ColorVar() = default;
  explicit ColorVar(std::string name) : id(std::move(name)) {}

  auto operator<=>(const ColorVar&) const = default;
  bool operator==(const ColorVar&) const = default;
};

inline ColorVar operator""_c(const char* s, std::size_t n) { return ColorVar(std::string(s, n)); }

/// Product of color variables with integer (possibly negative) exponents.
/// Stored sorted by variable with no zero exponents.
class Monomial {
 public:
  using Entry = std::pair<ColorVar, int>;
  using Storage = boost::container::small_vector<Entry, 3>;

  Monomial() = default;
  explicit Monomial(std::vector<Entry> entries);
  static Monomial var(const ColorVar& v, int exponent = 1);

  const Storage& entries() const { return entries_; }
  int exponent(const ColorVar& v) const;
  bool is_one() const { return entries_.empty(); }
  Monomial inverse() const;
  /// True if every exponent of `this` is >= the corresponding exponent of `other`.
  bool divisible_by(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend Monomial operator/(const Monomial& a, const Monomial& b) { return a * b.inverse(); }
  bool operator==(const Monomial&) const = default;

 private:
  Storage entries_;
};

/// Lexicographic comparison of exponent vectors, variables taken in increasing
/// id order.  This is a group order on monomials (compatible with products).
std::strong_ordering lex_compare(const Monomial& a, const Monomial& b);

/// Orders terms from lex-greatest to lex-smallest.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const { return lex_compare(a, b) > 0; }
};

/// Exact multivariate Laurent polynomial over the integers.
class LaurentPoly {
 public:
  using Terms = std::map<Monomial, Integer, MonomialOrder>;

  LaurentPoly() = default;
  LaurentPoly(int constant);  // NOLINT(google-explicit-constructor): Eigen needs Scalar(0), Scalar(1)
  LaurentPoly(const Integer& constant);  // NOLINT(google-explicit-constructor)
  static LaurentPoly monomial(const Monomial& m, const Integer& coeff = 1);
  static LaurentPoly var(const ColorVar& v, int exponent = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Integer coefficient(const Monomial& m) const;
  /// Single term `c * m` (including constants)?
  bool is_monomial() const { return terms_.size() == 1; }
  /// +-1 times a monomial: the units of the Laurent ring.
  bool is_unit() const;

  std::set<ColorVar> variables() const;
  int min_degree(const ColorVar& v) const;
  int max_degree(const ColorVar& v) const;
  /// Coefficient of v^e, as a polynomial in the remaining variables.
  LaurentPoly coefficient_in(const ColorVar& v, int e) const;
  /// Lex-greatest monomial; undefined on zero.
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Integer& leading_coefficient() const { return terms_.begin()->second; }
  /// Monomial whose exponent in each variable is the minimum over all terms.
  Monomial min_exponents() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  /// this += coeff * m * o, without building the temporary product.
  void add_scaled(const LaurentPoly& o, const Monomial& m, const Integer& coeff);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(LaurentPoly a);
  bool operator==(const LaurentPoly&) const = default;

  LaurentPoly pow(unsigned n) const;
  LaurentPoly times_monomial(const Monomial& m) const;

 private:
  void add_term(const Monomial& m, const Integer& c);
  Terms terms_;
};

/// Renames variables; variables mapped to the same target merge and their
/// exponents add within each monomial.
LaurentPoly substitute(const LaurentPoly& p, const std::map<ColorVar, ColorVar>& map);
/// Replaces every variable x by x^factor (used for t = q^2).
LaurentPoly scale_exponents(const LaurentPoly& p, int factor);

/// Quotient when d divides p in the Laurent ring; throws Error(NotDivisible) otherwise.
LaurentPoly divide_exact(const LaurentPoly& p, const LaurentPoly& d);
std::optional<LaurentPoly> try_divide_exact(const LaurentPoly& p, const LaurentPoly& d);

/// Representative of p's class modulo units: every variable's minimum exponent
/// shifted to 0 and the lex-leading coefficient made positive.
LaurentPoly unit_normal_form(const LaurentPoly& p);
bool equal_up_to_unit(const LaurentPoly& p, const LaurentPoly& q);

/// Greatest common divisor, returned in unit normal form.  gcd(0, 0) = 0.
LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);
Integer content(const LaurentPoly& p);

/// Canonical text form, e.g. `+1*q_a^2*q_b^-1 -1`; zero prints as `0`.
std::string to_text(const LaurentPoly& p);
LaurentPoly parse_laurent(std::string_view text);
std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

/// Quotient of Laurent polynomials, kept in lowest terms.  The denominator is
/// normalized to have minimum exponent 0 in every variable and a positive
/// leading coefficient.
class RationalFunction {
 public:
  RationalFunction() : num_(0), den_(1) {}
  RationalFunction(const LaurentPoly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(const LaurentPoly& num, const LaurentPoly& den);

  const LaurentPoly& numerator() const { return num_; }
  const LaurentPoly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  /// The value as a Laurent polynomial, if the denominator is a unit.
  std::optional<LaurentPoly> as_laurent() const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  bool operator==(const RationalFunction&) const = default;

 private:
  void canonicalize();
  LaurentPoly num_;
  LaurentPoly den_;
};

std::string to_text(const RationalFunction& r);
std::ostream& operator<<(std::ostream& os, const RationalFunction& r);

}  // namespace mvalex
