#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "matchpoly/errors.hpp"
#include "matchpoly/rational.hpp"

namespace matchpoly {

/// Dense univariate polynomial over an exact field, coefficients lowest degree first.
/// The zero polynomial has an empty coefficient list; otherwise the leading
/// coefficient is non-zero.
template <typename Field>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Field> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Field> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(Field c) { return Polynomial(std::vector<Field>{std::move(c)}); }
  static Polynomial x() { return Polynomial({Field(0), Field(1)}); }
  /// x - root
  static Polynomial linear_root(const Field& root) { return Polynomial({-root, Field(1)}); }
  static Polynomial monomial(std::size_t degree, Field c = Field(1)) {
    std::vector<Field> v(degree + 1, Field(0));
    v[degree] = std::move(c);
    return Polynomial(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  std::span<const Field> coefficients() const { return c_; }
  /// Coefficient of x^k, zero beyond the degree.
  Field coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Field(0); }
  const Field& leading() const {
    if (c_.empty()) throw InputError("leading coefficient of the zero polynomial");
    return c_.back();
  }

  Field eval(const Field& x) const {
    Field acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= x;
      acc += *it;
    }
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Field> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Field(static_cast<long>(k));
    return Polynomial(std::move(d));
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    Field lead = leading();
    std::vector<Field> v(c_);
    for (auto& a : v) a /= lead;
    return Polynomial(std::move(v));
  }

  /// p(x + c) by repeated synthetic division (Horner-style Taylor shift).
  Polynomial shift(const Field& c) const {
    std::vector<Field> a(c_);
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) a[j - 1] += c * a[j];
    return Polynomial(std::move(a));
  }

  /// p(-x)
  Polynomial reflect() const {
    std::vector<Field> v(c_);
    for (std::size_t k = 1; k < v.size(); k += 2) v[k] = -v[k];
    return Polynomial(std::move(v));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Field(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Field(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Field& s) {
    if (s == Field(0)) {
      c_.clear();
      return *this;
    }
    for (auto& a : c_) a *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& c : a.c_) c = -c;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const Field& s) { return a *= s; }
  friend Polynomial operator*(const Field& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Field> r(a.c_.size() + b.c_.size() - 1, Field(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == Field(0)) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  /// Human-readable rendering, highest degree first, e.g. "x^2 - 4x - 2".
  std::string pretty() const {
    if (is_zero()) return "0";
    std::string out;
    for (long k = degree(); k >= 0; --k) {
      const Field& a = c_[static_cast<std::size_t>(k)];
      if (a == Field(0)) continue;
      std::string body = term_body(a, k, out.empty());
      out += body;
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.pretty(); }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == Field(0)) c_.pop_back();
  }

  static std::string term_body(const Field& a, long k, bool first);

  std::vector<Field> c_;
};

using RationalPolynomial = Polynomial<Rational>;
using GaussianPolynomial = Polynomial<GaussianRational>;

template <>
inline std::string RationalPolynomial::term_body(const Rational& a, long k, bool first) {
  bool negative = a.sign() < 0;
  Rational mag = abs(a);
  std::string sign = first ? (negative ? "-" : "") : (negative ? " - " : " + ");
  std::string coef;
  if (k == 0 || mag != Rational(1)) coef = mag.is_integer() || k == 0 ? mag.pretty() : "(" + mag.pretty() + ")";
  std::string var = k == 0 ? "" : (k == 1 ? "x" : "x^" + std::to_string(k));
  return sign + coef + var;
}

template <>
inline std::string GaussianPolynomial::term_body(const GaussianRational& a, long k, bool first) {
  std::string var = k == 0 ? "" : (k == 1 ? "x" : "x^" + std::to_string(k));
  std::string coef = (a == GaussianRational(1) && k > 0) ? "" : "(" + a.pretty() + ")";
  return (first ? "" : " + ") + coef + var;
}

/// Quotient and remainder with a = q*b + r, deg r < deg b.
template <typename Field>
std::pair<Polynomial<Field>, Polynomial<Field>> divrem(const Polynomial<Field>& a,
                                                       const Polynomial<Field>& b) {
  if (b.is_zero()) throw InputError("polynomial division by the zero polynomial");
  if (a.degree() < b.degree()) return {Polynomial<Field>{}, a};
  std::vector<Field> rem(a.coefficients().begin(), a.coefficients().end());
  const auto db = static_cast<std::size_t>(b.degree());
  std::vector<Field> quo(rem.size() - db, Field(0));
  const Field& lead = b.leading();
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k] == Field(0)) continue;
    Field f = rem[k] / lead;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= f * b.coeff(j);
    quo[k - db] = std::move(f);
  }
  rem.resize(db);
  return {Polynomial<Field>(std::move(quo)), Polynomial<Field>(std::move(rem))};
}

/// Monic greatest common divisor.
template <typename Field>
Polynomial<Field> gcd(Polynomial<Field> a, Polynomial<Field> b) {
  if (a.is_zero() && b.is_zero()) throw InputError("gcd of two zero polynomials");
  while (!b.is_zero()) {
    auto r = divrem(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

/// True iff b divides a exactly.
template <typename Field>
bool divides(const Polynomial<Field>& b, const Polynomial<Field>& a) {
  return divrem(a, b).second.is_zero();
}

/// Largest k with (x - root)^k | p, by repeated synthetic division.
inline std::size_t multiplicity_of_rational_root(RationalPolynomial p, const Rational& root) {
  if (p.is_zero()) throw InputError("root multiplicity in the zero polynomial is undefined");
  std::size_t k = 0;
  for (;;) {
    auto c = p.coefficients();
    const std::size_t n = c.size();
    if (n <= 1) return k;
    std::vector<Rational> q(n - 1);
    Rational carry = c[n - 1];
    q[n - 2] = carry;
    for (std::size_t i = n - 1; i-- > 1;) {
      carry = c[i] + root * carry;
      q[i - 1] = carry;
    }
    Rational remainder = c[0] + root * carry;
    if (!remainder.is_zero()) return k;
    p = RationalPolynomial(std::move(q));
    ++k;
  }
}

/// Largest k with factor^k | p.
inline std::size_t multiplicity_of_factor(RationalPolynomial p, const RationalPolynomial& factor) {
  if (p.is_zero()) throw InputError("root multiplicity in the zero polynomial is undefined");
  if (factor.degree() < 1) throw InputError("multiplicity of a constant factor is undefined");
  std::size_t k = 0;
  for (;;) {
    auto [q, r] = divrem(p, factor);
    if (!r.is_zero()) return k;
    p = std::move(q);
    ++k;
  }
}

/// Positive rational multiple of p with integer coprime coefficients (sign preserved).
inline RationalPolynomial primitive_part(const RationalPolynomial& p) {
  if (p.is_zero()) return p;
  mpz_class lcm_den(1), gcd_num(0);
  for (const auto& a : p.coefficients()) {
    mpz_class d = a.denominator();
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
    mpz_class nm = a.numerator();
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), nm.get_mpz_t());
  }
  return p * Rational(lcm_den, gcd_num);
}

namespace detail {

/// Integer coefficients, lowest degree first, no trailing zeros.
using IntegerCoeffs = std::vector<mpz_class>;

inline IntegerCoeffs to_integer_coeffs(const RationalPolynomial& p) {
  IntegerCoeffs out;
  const RationalPolynomial q = primitive_part(p);
  for (const auto& a : q.coefficients()) out.push_back(a.numerator());
  return out;
}

inline RationalPolynomial from_integer_coeffs(const IntegerCoeffs& a) {
  std::vector<Rational> c;
  c.reserve(a.size());
  for (const auto& z : a) c.emplace_back(z);
  return RationalPolynomial(std::move(c));
}

/// Divides out the content, keeping the sign of every coefficient.
inline void remove_content(IntegerCoeffs& a) {
  mpz_class g(0);
  for (const auto& z : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    if (g == 1) return;
  }
  if (g == 0) return;
  for (auto& z : a) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
}

/// lc(b)^(deg a - deg b + 1) * a mod b, as a primitive polynomial. `flipped` is set
/// when that power of lc(b) is negative.
inline IntegerCoeffs primitive_pseudo_remainder(IntegerCoeffs a, const IntegerCoeffs& b, bool& flipped) {
  const std::size_t db = b.size() - 1;
  const mpz_class& lead = b.back();
  flipped = false;
  if (a.size() < b.size()) return a;
  const std::size_t steps = a.size() - db;
  flipped = lead < 0 && steps % 2 == 1;
  mpz_class f;
  for (std::size_t k = a.size(); k-- > db;) {
    f = a[k];
    for (std::size_t i = 0; i < k; ++i) a[i] *= lead;
    for (std::size_t j = 0; j < db; ++j) a[k - db + j] -= f * b[j];
    a[k] = 0;
  }
  a.resize(db);
  while (!a.empty() && a.back() == 0) a.pop_back();
  remove_content(a);
  return a;
}

}  // namespace detail

/// Monic greatest common divisor over the rationals, computed by a primitive
/// integer remainder sequence.
inline RationalPolynomial gcd(const RationalPolynomial& p, const RationalPolynomial& q) {
  if (p.is_zero() && q.is_zero()) throw InputError("gcd of two zero polynomials");
  if (p.is_zero()) return q.monic();
  if (q.is_zero()) return p.monic();
  auto a = detail::to_integer_coeffs(p), b = detail::to_integer_coeffs(q);
  if (a.size() < b.size()) std::swap(a, b);
  bool flipped = false;
  while (!b.empty()) {
    auto r = detail::primitive_pseudo_remainder(std::move(a), b, flipped);
    a = std::move(b);
    b = std::move(r);
  }
  return detail::from_integer_coeffs(a).monic();
}

}  // namespace matchpoly
