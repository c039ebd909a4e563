#include "farey2d/exactnum.hpp"

#include <utility>

namespace farey2d {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::NotInUpperHalfSpace: return "NotInUpperHalfSpace";
    case ErrorCode::NotCoprimePair: return "NotCoprimePair";
    case ErrorCode::OnSplitLine: return "OnSplitLine";
    case ErrorCode::RelabelImpossible: return "RelabelImpossible";
    case ErrorCode::WindowEmpty: return "WindowEmpty";
    case ErrorCode::IterationCap: return "IterationCap";
    case ErrorCode::SearchCap: return "SearchCap";
    case ErrorCode::InvalidTheta: return "InvalidTheta";
    case ErrorCode::InsufficientDepth: return "InsufficientDepth";
    case ErrorCode::EmptyEnclosure: return "EmptyEnclosure";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Rat make_rat(const Int& num, const Int& den) {
  if (sgn(den) == 0) {
    throw Error(ErrorCode::Degenerate, "rational with zero denominator");
  }
  Rat q(num, den);
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat parse_rat(const std::string& text) {
  if (text.empty()) {
    throw Error(ErrorCode::ParseError, "empty rational literal");
  }
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      Int num(text, 10);
      return Rat(num);
    }
    Int num(text.substr(0, slash), 10);
    Int den(text.substr(slash + 1), 10);
    return make_rat(num, den);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::ParseError, "bad rational literal '" + text + "'");
  }
}

std::string rat_to_decimal(const Rat& x, unsigned digits) {
  Int num = x.get_num();
  const Int den = x.get_den();
  std::string sign;
  if (sgn(num) < 0) {
    sign = "-";
    num = -num;
  }
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  Int scaled = num * scale / den;
  Int whole = scaled / scale;
  Int frac = scaled % scale;
  std::string frac_str = frac.get_str();
  if (frac_str.size() < digits) {
    frac_str.insert(0, digits - frac_str.size(), '0');
  }
  if (digits == 0) {
    return sign + whole.get_str();
  }
  return sign + whole.get_str() + "." + frac_str;
}

QuadNum operator+(const QuadNum& x, const QuadNum& y) {
  return QuadNum(x.a + y.a, x.b + y.b);
}

QuadNum operator-(const QuadNum& x, const QuadNum& y) {
  return QuadNum(x.a - y.a, x.b - y.b);
}

QuadNum operator-(const QuadNum& x) { return QuadNum(-x.a, -x.b); }

QuadNum operator*(const QuadNum& x, const QuadNum& y) {
  // (a + b s)(c + d s) = ac + 5bd + (ad + bc) s, with s^2 = 5.
  return QuadNum(x.a * y.a + 5 * x.b * y.b, x.a * y.b + x.b * y.a);
}

QuadNum operator*(const Rat& c, const QuadNum& x) {
  return QuadNum(c * x.a, c * x.b);
}

bool operator==(const QuadNum& x, const QuadNum& y) {
  return x.a == y.a && x.b == y.b;
}

int quad_sign(const QuadNum& x) {
  const int sa = sgn(x.a);
  const int sb = sgn(x.b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: |a| vs |b| sqrt(5) decided on squares.
  const Rat a2 = x.a * x.a;
  const Rat b25 = 5 * x.b * x.b;
  const int cmp = a2 > b25 ? 1 : (a2 < b25 ? -1 : 0);
  if (cmp == 0) {
    // a^2 = 5 b^2 with b != 0 would make sqrt(5) rational.
    throw Error(ErrorCode::InvariantViolation, "sqrt(5) rationality witness");
  }
  return sa * cmp;
}

int quad_cmp_rat(const QuadNum& x, const Rat& q) {
  return quad_sign(QuadNum(x.a - q, x.b));
}

Rat interval_sqrt_upper(const Rat& q, unsigned precision) {
  if (sgn(q) < 0) {
    throw Error(ErrorCode::NegativeInput, "sqrt of negative rational");
  }
  if (sgn(q) == 0) return Rat(0);
  const Rat tolerance = [&] {
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, precision);
    Rat tol = make_rat(1, scale);
    if (q > 1) tol *= q;
    return tol;
  }();
  // sqrt(n/d) = sqrt(n d)/d; an upper bound comes from ceil-sqrt of the
  // scaled integer n d 4^m. Grow m until the defining error bound holds.
  const Int nd = q.get_num() * q.get_den();
  for (unsigned m = precision / 2 + 4;; m += 16) {
    Int scale2;  // 4^m
    mpz_ui_pow_ui(scale2.get_mpz_t(), 4, m);
    Int root;
    mpz_sqrt(root.get_mpz_t(), Int(nd * scale2).get_mpz_t());
    root += 1;  // ceil: root >= sqrt(nd * 4^m)
    Int half;
    mpz_ui_pow_ui(half.get_mpz_t(), 2, m);
    const Rat r = make_rat(root, half * q.get_den());
    if (r * r - q <= tolerance) return r;
  }
}

RatInterval::RatInterval(Rat low, Rat high) : lo(std::move(low)), hi(std::move(high)) {
  if (lo > hi) {
    throw Error(ErrorCode::EmptyEnclosure, "interval with lo > hi");
  }
}

RatInterval operator+(const RatInterval& x, const RatInterval& y) {
  return RatInterval(x.lo + y.lo, x.hi + y.hi);
}

RatInterval operator-(const RatInterval& x, const RatInterval& y) {
  return RatInterval(x.lo - y.hi, x.hi - y.lo);
}

RatInterval operator*(const RatInterval& x, const RatInterval& y) {
  const Rat p1 = x.lo * y.lo;
  const Rat p2 = x.lo * y.hi;
  const Rat p3 = x.hi * y.lo;
  const Rat p4 = x.hi * y.hi;
  Rat lo = p1, hi = p1;
  for (const Rat* p : {&p2, &p3, &p4}) {
    if (*p < lo) lo = *p;
    if (*p > hi) hi = *p;
  }
  return RatInterval(lo, hi);
}

RatInterval operator/(const RatInterval& x, const RatInterval& y) {
  if (sgn(y.lo) <= 0 && sgn(y.hi) >= 0) {
    throw Error(ErrorCode::Degenerate, "interval division through zero");
  }
  return x * RatInterval(1 / y.hi, 1 / y.lo);
}

RatInterval interval_square(const RatInterval& x) {
  const Rat lo2 = x.lo * x.lo;
  const Rat hi2 = x.hi * x.hi;
  if (sgn(x.lo) >= 0) return RatInterval(lo2, hi2);
  if (sgn(x.hi) <= 0) return RatInterval(hi2, lo2);
  return RatInterval(Rat(0), std::max(lo2, hi2));
}

RatInterval interval_hull(const RatInterval& x, const RatInterval& y) {
  return RatInterval(std::min(x.lo, y.lo), std::max(x.hi, y.hi));
}

}  // namespace farey2d
