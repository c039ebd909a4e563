#pragma once

#include <gmpxx.h>

#include <string>

#include "farey2d/error.hpp"

namespace farey2d {

// Arbitrary-precision integer and rational. mpq_class keeps the canonical
// form this library relies on (gcd(num,den)=1, den>0) as long as values are
// built through make_rat / arithmetic operators.
using Int = mpz_class;
using Rat = mpq_class;

inline int sgn(const Int& x) { return mpz_sgn(x.get_mpz_t()); }
inline int sgn(const Rat& x) { return mpq_sgn(x.get_mpq_t()); }

// num/den with canonicalization; den must be nonzero.
Rat make_rat(const Int& num, const Int& den);

// Always renders "num/den", including den = 1, so files stay uniform.
std::string rat_to_string(const Rat& x);

// Accepts "num" and "num/den". Throws ParseError on malformed input.
Rat parse_rat(const std::string& text);

// Fixed-point decimal rendering by exact integer division (round toward
// zero). No floating point involved, so output is portable and stable.
std::string rat_to_decimal(const Rat& x, unsigned digits);

Int gcd(const Int& a, const Int& b);

// Element a + b*sqrt(5) of the real quadratic field Q(sqrt 5).
struct QuadNum {
  Rat a;
  Rat b;

  QuadNum() : a(0), b(0) {}
  QuadNum(Rat rational_part, Rat surd_part)
      : a(std::move(rational_part)), b(std::move(surd_part)) {}
  explicit QuadNum(const Rat& rational) : a(rational), b(0) {}

  bool is_rational() const { return sgn(b) == 0; }
};

QuadNum operator+(const QuadNum& x, const QuadNum& y);
QuadNum operator-(const QuadNum& x, const QuadNum& y);
QuadNum operator-(const QuadNum& x);
QuadNum operator*(const QuadNum& x, const QuadNum& y);
QuadNum operator*(const Rat& c, const QuadNum& x);
bool operator==(const QuadNum& x, const QuadNum& y);

// Exact sign of a + b*sqrt(5), decided with integer arithmetic only: when a
// and b disagree in sign the comparison reduces to a^2 vs 5 b^2.
int quad_sign(const QuadNum& x);

// Three-way comparison against a rational: sign of x - q.
int quad_cmp_rat(const QuadNum& x, const Rat& q);

inline int sgn(const QuadNum& x) { return quad_sign(x); }

// Rational r with r >= sqrt(q) and r^2 - q <= 2^-precision * max(1,q).
Rat interval_sqrt_upper(const Rat& q, unsigned precision);

// Closed rational interval [lo, hi]; the certified-bound substrate.
struct RatInterval {
  Rat lo;
  Rat hi;

  RatInterval() : lo(0), hi(0) {}
  RatInterval(Rat low, Rat high);
  explicit RatInterval(const Rat& point) : lo(point), hi(point) {}

  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains(const RatInterval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  Rat width() const { return hi - lo; }
};

RatInterval operator+(const RatInterval& x, const RatInterval& y);
RatInterval operator-(const RatInterval& x, const RatInterval& y);
RatInterval operator*(const RatInterval& x, const RatInterval& y);
// y must not contain zero.
RatInterval operator/(const RatInterval& x, const RatInterval& y);
RatInterval interval_square(const RatInterval& x);
RatInterval interval_hull(const RatInterval& x, const RatInterval& y);

}  // namespace farey2d
