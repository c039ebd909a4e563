#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <gmpxx.h>

#include <random>

#include "doctest.h"
#include "farey2d/exactnum.hpp"

using namespace farey2d;

namespace {

// Small deterministic rational generator for property loops.
Rat random_rat(std::mt19937_64& rng, long num_range, long den_range) {
  const long num = static_cast<long>(rng() % (2 * num_range + 1)) - num_range;
  const long den = 1 + static_cast<long>(rng() % den_range);
  return make_rat(num, den);
}

QuadNum random_quad(std::mt19937_64& rng) {
  return QuadNum(random_rat(rng, 1000, 50), random_rat(rng, 1000, 50));
}

// High-precision floating evaluation of a + b sqrt(5).
mpf_class quad_to_mpf(const QuadNum& x, unsigned bits) {
  mpf_class a(x.a.get_num(), bits), ad(x.a.get_den(), bits);
  mpf_class b(x.b.get_num(), bits), bd(x.b.get_den(), bits);
  mpf_class root5(5, bits);
  root5 = sqrt(root5);
  return a / ad + (b / bd) * root5;
}

}  // namespace

TEST_CASE("rational canonical form and serialization") {
  const Rat q = make_rat(6, -4);
  CHECK(q.get_num() == -3);
  CHECK(q.get_den() == 2);
  CHECK(rat_to_string(q) == "-3/2");
  CHECK(parse_rat("-3/2") == q);
  CHECK(parse_rat("7") == Rat(7));
  CHECK(parse_rat("0/5") == Rat(0));
  CHECK_THROWS_AS(parse_rat("1/x"), Error);
  CHECK_THROWS_AS(parse_rat(""), Error);
  CHECK(rat_to_decimal(make_rat(1, 3), 6) == "0.333333");
  CHECK(rat_to_decimal(make_rat(-5, 4), 2) == "-1.25");
}

TEST_CASE("quad_sign on pinned values") {
  CHECK(quad_sign(QuadNum(Rat(0), Rat(0))) == 0);
  // sqrt(5) - 2 > 0 since 5 > 4
  CHECK(quad_sign(QuadNum(Rat(-2), Rat(1))) == 1);
  // 9/4 - sqrt(5) > 0 since 81/16 > 5
  CHECK(quad_sign(QuadNum(make_rat(9, 4), Rat(-1))) == 1);
  CHECK(quad_sign(QuadNum(make_rat(-9, 4), Rat(1))) == -1);
  CHECK(quad_sign(QuadNum(Rat(-3), Rat(1))) == -1);
  CHECK(quad_sign(QuadNum(make_rat(1, 2), Rat(0))) == 1);
}

TEST_CASE("quad_cmp_rat on pinned values") {
  const QuadNum root5(Rat(0), Rat(1));
  CHECK(quad_cmp_rat(root5, Rat(2)) > 0);
  CHECK(quad_cmp_rat(root5, Rat(3)) < 0);
  CHECK(quad_cmp_rat(QuadNum(make_rat(1, 2), Rat(0)), make_rat(1, 2)) == 0);
}

TEST_CASE("quad_sign agrees with 128-bit floating evaluation") {
  std::mt19937_64 rng(20240513);
  const mpf_class margin = [] {
    mpf_class m(1, 160);
    m >>= 64;  // 2^-64
    return m;
  }();
  int decided = 0;
  for (int i = 0; i < 10000; ++i) {
    const QuadNum x = random_quad(rng);
    const mpf_class approx = quad_to_mpf(x, 128);
    if (abs(approx) <= margin) continue;
    ++decided;
    CHECK(quad_sign(x) == (approx > 0 ? 1 : -1));
  }
  CHECK(decided > 9000);
}

TEST_CASE("field distributivity on random triples") {
  std::mt19937_64 rng(987654321);
  for (int i = 0; i < 2000; ++i) {
    const QuadNum x = random_quad(rng);
    const QuadNum y = random_quad(rng);
    const QuadNum z = random_quad(rng);
    CHECK((x + y) * z == x * z + y * z);
  }
}

TEST_CASE("interval_sqrt_upper defining bounds") {
  CHECK(interval_sqrt_upper(Rat(0), 10) == 0);

  const Rat four = interval_sqrt_upper(Rat(4), 16);
  CHECK(four >= 2);
  CHECK(four * four - 4 <= make_rat(4, 1 << 16));

  const Rat two = interval_sqrt_upper(Rat(2), 20);
  CHECK(two * two >= 2);
  CHECK(two * two - 2 <= make_rat(2, 1 << 20));

  CHECK_THROWS_AS(interval_sqrt_upper(Rat(-1), 8), Error);
}

TEST_CASE("interval_sqrt_upper never undershoots") {
  std::mt19937_64 rng(13579);
  for (int i = 0; i < 500; ++i) {
    const Rat q = make_rat(static_cast<long>(rng() % 100000),
                           1 + static_cast<long>(rng() % 1000));
    const unsigned prec = 4 + static_cast<unsigned>(rng() % 40);
    const Rat r = interval_sqrt_upper(q, prec);
    CHECK(r * r >= q);
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, prec);
    const Rat tol = make_rat(1, scale) * std::max(Rat(1), q);
    CHECK(r * r - q <= tol);
  }
}

TEST_CASE("interval arithmetic basics") {
  const RatInterval a(Rat(1), Rat(2));
  const RatInterval b(Rat(-3), Rat(4));
  const RatInterval sum = a + b;
  CHECK(sum.lo == -2);
  CHECK(sum.hi == 6);
  const RatInterval prod = a * b;
  CHECK(prod.lo == -6);
  CHECK(prod.hi == 8);
  const RatInterval sq = interval_square(b);
  CHECK(sq.lo == 0);
  CHECK(sq.hi == 16);
  CHECK_THROWS_AS(a / b, Error);  // divisor spans zero
  const RatInterval quot = b / a;
  CHECK(quot.lo == -3);
  CHECK(quot.hi == 4);
  CHECK_THROWS_AS(RatInterval(Rat(2), Rat(1)), Error);
}

TEST_CASE("interval multiplication encloses point products") {
  std::mt19937_64 rng(24680);
  for (int i = 0; i < 500; ++i) {
    const Rat a = random_rat(rng, 50, 9);
    const Rat b = random_rat(rng, 50, 9);
    const Rat c = random_rat(rng, 50, 9);
    const Rat d = random_rat(rng, 50, 9);
    const RatInterval x(std::min(a, b), std::max(a, b));
    const RatInterval y(std::min(c, d), std::max(c, d));
    const RatInterval xy = x * y;
    for (const Rat& px : {x.lo, x.hi}) {
      for (const Rat& py : {y.lo, y.hi}) {
        CHECK(xy.contains(Rat(px * py)));
      }
    }
  }
}
