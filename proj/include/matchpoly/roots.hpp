#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "matchpoly/errors.hpp"
#include "matchpoly/polynomial.hpp"
#include "matchpoly/rational.hpp"

namespace matchpoly {

/// p / gcd(p, p'), normalised to a primitive integer polynomial with positive lead.
inline RationalPolynomial square_free_part(const RationalPolynomial& p) {
  if (p.is_zero()) throw InputError("square-free part of the zero polynomial");
  if (p.degree() == 0) return RationalPolynomial::constant(Rational(1));
  auto g = gcd(p, p.derivative());
  return primitive_part(divrem(p, g).first);
}

inline bool is_square_free(const RationalPolynomial& p) {
  if (p.is_zero()) return false;
  return gcd(p, p.derivative()).degree() == 0;
}

/// Sturm chain p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k), with every member
/// rescaled by a positive constant to a primitive integer polynomial.
inline std::vector<RationalPolynomial> sturm_chain(const RationalPolynomial& p) {
  std::vector<RationalPolynomial> chain;
  chain.push_back(primitive_part(p));
  if (p.degree() < 1) return chain;
  auto prev = detail::to_integer_coeffs(p), cur = detail::to_integer_coeffs(p.derivative());
  chain.push_back(detail::from_integer_coeffs(cur));
  while (cur.size() > 1) {
    bool flipped = false;
    auto r = detail::primitive_pseudo_remainder(std::move(prev), cur, flipped);
    if (r.empty()) break;
    if (!flipped)
      for (auto& z : r) z = -z;
    chain.push_back(detail::from_integer_coeffs(r));
    prev = std::move(cur);
    cur = std::move(r);
  }
  return chain;
}

namespace detail {

inline std::size_t sign_changes(const std::vector<int>& signs) {
  std::size_t changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

inline std::size_t variations_at(const std::vector<RationalPolynomial>& chain, const Rational& x) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& q : chain) signs.push_back(q.eval(x).sign());
  return sign_changes(signs);
}

/// Sign variations at +infinity (positive = true) or -infinity.
inline std::size_t variations_at_infinity(const std::vector<RationalPolynomial>& chain, bool positive) {
  std::vector<int> signs;
  for (const auto& q : chain) {
    if (q.is_zero()) continue;
    int s = q.leading().sign();
    if (!positive && (q.degree() % 2 == 1)) s = -s;
    signs.push_back(s);
  }
  return sign_changes(signs);
}

/// Distinct roots of a square-free q in (a, b], requires q(a) != 0 and q(b) != 0.
inline std::size_t sturm_half_open(const std::vector<RationalPolynomial>& chain, const Rational& a,
                                   const Rational& b) {
  std::size_t va = variations_at(chain, a), vb = variations_at(chain, b);
  return va >= vb ? va - vb : 0;
}

/// Removes the factor (x - r) from q when q(r) == 0.
inline RationalPolynomial deflate_if_root(const RationalPolynomial& q, const Rational& r) {
  if (!q.eval(r).is_zero()) return q;
  return divrem(q, RationalPolynomial::linear_root(r)).first;
}

}  // namespace detail

struct SturmCount {
  std::size_t count = 0;
  /// Endpoints actually used; moved toward the interior when an input endpoint was a root.
  Rational lo;
  Rational hi;
  bool adjusted = false;
};

/// Number of distinct real roots strictly inside (lo, hi).
inline SturmCount sturm_count(const RationalPolynomial& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw InputError("Sturm count of the zero polynomial");
  if (!(lo < hi)) throw InputError("Sturm interval requires lo < hi");
  RationalPolynomial q = square_free_part(p);
  SturmCount out{0, lo, hi, false};
  if (q.degree() < 1) return out;
  // Deflating a rational endpoint root leaves a polynomial non-vanishing there.
  RationalPolynomial inner = detail::deflate_if_root(detail::deflate_if_root(q, lo), hi);
  if (inner.degree() < 1) {
    out.adjusted = q.eval(lo).is_zero() || q.eval(hi).is_zero();
  } else {
    out.count = detail::sturm_half_open(sturm_chain(inner), lo, hi);
  }
  auto nudge = [&](const Rational& from, const Rational& toward, Rational& slot) {
    if (!q.eval(from).is_zero()) return;
    out.adjusted = true;
    Rational step = (toward - from) / Rational(2);
    auto chain = inner.degree() >= 1 ? sturm_chain(inner) : std::vector<RationalPolynomial>{};
    for (;;) {
      Rational cand = from + step;
      bool clean = !q.eval(cand).is_zero();
      if (clean && !chain.empty()) {
        const Rational& a = from < cand ? from : cand;
        const Rational& b = from < cand ? cand : from;
        clean = detail::sturm_half_open(chain, a, b) == 0;
      }
      if (clean) {
        slot = cand;
        return;
      }
      step /= Rational(2);
    }
  };
  nudge(lo, hi, out.lo);
  nudge(hi, lo, out.hi);
  return out;
}

/// Number of distinct real roots on the whole real line.
inline std::size_t distinct_real_root_count(const RationalPolynomial& p) {
  if (p.is_zero()) throw InputError("distinct real roots of the zero polynomial");
  RationalPolynomial q = square_free_part(p);
  if (q.degree() < 1) return 0;
  auto chain = sturm_chain(q);
  std::size_t vneg = detail::variations_at_infinity(chain, false);
  std::size_t vpos = detail::variations_at_infinity(chain, true);
  return vneg - vpos;
}

/// Square-free factors s_1, s_2, ... with p = c * prod s_i^i (Yun).
inline std::vector<RationalPolynomial> square_free_factors(const RationalPolynomial& p) {
  if (p.is_zero()) throw InputError("square-free factorisation of the zero polynomial");
  std::vector<RationalPolynomial> out;
  if (p.degree() < 1) return out;
  RationalPolynomial dp = p.derivative();
  RationalPolynomial a = gcd(p, dp);
  RationalPolynomial b = divrem(p, a).first, c = divrem(dp, a).first;
  RationalPolynomial d = c - b.derivative();
  while (b.degree() >= 1) {
    a = gcd(b, d);
    out.push_back(a);
    b = divrem(b, a).first;
    c = divrem(d, a).first;
    d = c - b.derivative();
  }
  return out;
}

/// Real roots counted with multiplicity. Equals the degree iff every root is real.
inline std::size_t real_root_count_with_multiplicity(const RationalPolynomial& p) {
  if (p.is_zero()) throw InputError("real roots of the zero polynomial");
  std::size_t total = 0;
  auto factors = square_free_factors(p);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& s = factors[i];
    if (s.degree() < 1) continue;
    auto chain = sturm_chain(s);
    total += (i + 1) * (detail::variations_at_infinity(chain, false) - detail::variations_at_infinity(chain, true));
  }
  return total;
}

/// Upper bound on |root| (Cauchy).
inline Rational cauchy_root_bound(const RationalPolynomial& p) {
  Rational m(0);
  const Rational& lead = p.leading();
  for (long k = 0; k < p.degree(); ++k) {
    Rational r = abs(p.coeff(static_cast<std::size_t>(k)) / lead);
    if (r > m) m = r;
  }
  return m + Rational(1);
}

/// An isolating interval (lo, hi) containing exactly one real root of the
/// square-free part, or an exact rational root found during bisection.
struct RootInterval {
  Rational lo;
  Rational hi;
  std::optional<Rational> exact;
};

/// Disjoint isolating intervals for all distinct real roots, sorted ascending.
inline std::vector<RootInterval> isolate_real_roots(const RationalPolynomial& p) {
  std::vector<RootInterval> out;
  RationalPolynomial q = square_free_part(p);
  if (q.degree() < 1) return out;
  Rational bound = cauchy_root_bound(q);
  auto chain = sturm_chain(q);
  struct Job {
    Rational lo, hi;
  };
  std::vector<Job> stack{{-bound, bound}};
  while (!stack.empty()) {
    Job j = stack.back();
    stack.pop_back();
    std::size_t c = detail::sturm_half_open(chain, j.lo, j.hi);
    if (c == 0) continue;
    if (c == 1) {
      out.push_back({j.lo, j.hi, std::nullopt});
      continue;
    }
    Rational mid = (j.lo + j.hi) / Rational(2);
    if (q.eval(mid).is_zero()) {
      out.push_back({mid, mid, mid});
      // Shrink around mid so neither half contains it as an endpoint root.
      Rational eps = (j.hi - j.lo) / Rational(4);
      for (;;) {
        Rational l = mid - eps, h = mid + eps;
        if (!q.eval(l).is_zero() && !q.eval(h).is_zero() &&
            detail::sturm_half_open(chain, l, h) == 1)
          break;
        eps /= Rational(2);
      }
      stack.push_back({j.lo, mid - eps});
      stack.push_back({mid + eps, j.hi});
    } else {
      stack.push_back({j.lo, mid});
      stack.push_back({mid, j.hi});
    }
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

namespace detail {

/// Fraction with the smallest denominator in the closed interval [lo, hi], lo <= hi.
inline Rational simplest_between(Rational lo, Rational hi) {
  // Stern-Brocot style descent via continued fractions.
  auto floor_of = [](const Rational& r) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), r.numerator().get_mpz_t(), r.denominator().get_mpz_t());
    return f;
  };
  if (lo.sign() < 0 && hi.sign() <= 0) return -simplest_between(-hi, -lo);
  if (lo.sign() <= 0) return Rational(0);
  mpz_class fl = floor_of(lo);
  Rational fl_r(fl);
  if (fl_r == lo) return lo;
  Rational next_int{mpz_class(fl + 1)};
  if (next_int <= hi) return next_int;
  // lo and hi share an integer part; recurse on reciprocals of the fractional parts.
  Rational inv = simplest_between(Rational(1) / (hi - fl_r), Rational(1) / (lo - fl_r));
  return fl_r + Rational(1) / inv;
}

}  // namespace detail

/// All distinct rational roots, ascending. A rational root p/q of the primitive integer
/// polynomial has q dividing the leading coefficient L, so an isolating interval of
/// width below 1/L^2 contains at most one such fraction, the simplest one.
inline std::vector<Rational> rational_roots(const RationalPolynomial& p) {
  std::vector<Rational> out;
  RationalPolynomial q = square_free_part(p);
  if (q.degree() < 1) return out;
  Rational lead = abs(q.leading());
  Rational width_limit = Rational(1) / (lead * lead);
  auto chain = sturm_chain(q);
  for (auto iv : isolate_real_roots(q)) {
    if (iv.exact) {
      out.push_back(*iv.exact);
      continue;
    }
    while (iv.hi - iv.lo >= width_limit) {
      Rational mid = (iv.lo + iv.hi) / Rational(2);
      if (q.eval(mid).is_zero()) {
        iv.exact = mid;
        break;
      }
      if (detail::sturm_half_open(chain, iv.lo, mid) == 1) iv.hi = mid;
      else iv.lo = mid;
    }
    if (iv.exact) {
      out.push_back(*iv.exact);
      continue;
    }
    Rational cand = detail::simplest_between(iv.lo, iv.hi);
    if (q.eval(cand).is_zero()) out.push_back(cand);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// A real number: either an exact rational, or the unique root of a square-free
/// minimal polynomial inside an open isolating interval.
class ThetaSpec {
 public:
  struct Algebraic {
    RationalPolynomial min_poly;
    Rational lo;
    Rational hi;
  };

  ThetaSpec(Rational r) : v_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  ThetaSpec(long r) : v_(Rational(r)) {}       // NOLINT(google-explicit-constructor)
  ThetaSpec(int r) : v_(Rational(r)) {}        // NOLINT(google-explicit-constructor)

  /// Validates square-freeness, endpoint non-roots and a single root inside.
  /// Irreducibility of min_poly is trusted, not verified.
  static ThetaSpec algebraic(RationalPolynomial min_poly, Rational lo, Rational hi) {
    if (min_poly.degree() < 1) throw InputError("theta minimal polynomial must have degree >= 1");
    if (!(lo < hi)) throw InputError("theta interval requires lo < hi");
    if (!is_square_free(min_poly)) throw InputError("theta minimal polynomial is not square-free");
    if (min_poly.eval(lo).is_zero() || min_poly.eval(hi).is_zero())
      throw InputError("theta interval endpoint is a root of the minimal polynomial");
    auto count = sturm_count(min_poly, lo, hi).count;
    if (count != 1)
      throw InputError("theta interval contains " + std::to_string(count) + " roots, expected exactly 1");
    if (min_poly.degree() == 1) return ThetaSpec(-min_poly.coeff(0) / min_poly.coeff(1));
    return ThetaSpec(Algebraic{primitive_part(min_poly), std::move(lo), std::move(hi)});
  }

  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  const Rational& rational() const { return std::get<Rational>(v_); }
  const Algebraic& algebraic_data() const { return std::get<Algebraic>(v_); }

  /// Multiplicity of this number as a root of p.
  std::size_t multiplicity_in(const RationalPolynomial& p) const {
    if (p.is_zero()) throw InputError("root multiplicity in the zero polynomial is undefined");
    if (is_rational()) return multiplicity_of_rational_root(p, rational());
    return multiplicity_of_factor(p, algebraic_data().min_poly);
  }

  bool equals_rational(const Rational& r) const { return is_rational() && rational() == r; }

 private:
  explicit ThetaSpec(Algebraic a) : v_(std::move(a)) {}
  std::variant<Rational, Algebraic> v_;
};

inline std::size_t multiplicity_at(const RationalPolynomial& p, const ThetaSpec& theta) {
  return theta.multiplicity_in(p);
}

}  // namespace matchpoly
