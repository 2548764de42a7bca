#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "matchpoly/errors.hpp"

namespace matchpoly {

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    if (den == 0) throw InputError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpz_class v) : q_(std::move(v)) {}
  Rational(mpz_class num, mpz_class den) {
    if (den == 0) throw InputError("rational with zero denominator");
    q_ = mpq_class(std::move(num), std::move(den));
    q_.canonicalize();
  }
  explicit Rational(mpq_class v) : q_(std::move(v)) { q_.canonicalize(); }

  /// Parses "p/q" or "p" with decimal integers.
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    mpz_class num, den(1);
    auto read = [&](const std::string& part, mpz_class& out) {
      std::string t = part;
      if (!t.empty() && t.front() == '+') t.erase(0, 1);
      bool ok = !t.empty();
      for (std::size_t i = (t.size() > 0 && t[0] == '-') ? 1 : 0; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') ok = false;
      if (t == "-") ok = false;
      if (!ok || out.set_str(t, 10) != 0)
        throw InputError("malformed rational \"" + s + "\"");
    };
    if (slash == std::string::npos) {
      read(s, num);
    } else {
      read(s.substr(0, slash), num);
      read(s.substr(slash + 1), den);
    }
    if (den == 0) throw InputError("rational \"" + s + "\" has zero denominator");
    return Rational(std::move(num), std::move(den));
  }

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  /// Always "p/q", including "n/1" for integers.
  std::string str() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }
  /// "p" for integers, "p/q" otherwise.
  std::string pretty() const { return is_integer() ? q_.get_num().get_str() : str(); }

  double to_double() const { return q_.get_d(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw InputError("division by zero rational");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.pretty(); }

  std::size_t hash() const {
    std::size_t h = std::hash<std::string>{}(q_.get_num().get_str(16));
    return h ^ (std::hash<std::string>{}(q_.get_den().get_str(16)) * 1099511628211ULL);
  }

 private:
  mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Exact complex number with rational real and imaginary parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(int re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  GaussianRational conj() const { return {re_, -im_}; }
  /// |z|^2 = z * conj(z).
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    Rational n = o.norm();
    if (n.is_zero()) throw InputError("division by zero complex number");
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) = default;

  std::string pretty() const {
    if (im_.is_zero()) return re_.pretty();
    std::string imag = (im_ == Rational(1)) ? "i" : (im_ == Rational(-1) ? "-i" : im_.pretty() + "i");
    if (re_.is_zero()) return imag;
    return re_.pretty() + (im_.sign() > 0 ? "+" : "") + imag;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.pretty(); }

 private:
  Rational re_;
  Rational im_;
};

inline const GaussianRational kImaginaryUnit{Rational(0), Rational(1)};

}  // namespace matchpoly

template <>
struct std::hash<matchpoly::Rational> {
  std::size_t operator()(const matchpoly::Rational& r) const { return r.hash(); }
};
