#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "farey2d/metrics.hpp"

using namespace farey2d;

namespace {

RatPoint2 pt(long x, long y) { return RatPoint2{Rat(x), Rat(y)}; }

RatTriangle unit_triangle() { return RatTriangle(pt(0, 0), pt(1, 0), pt(0, 1)); }

RegularCone unit_cone() { return cone_from_triangle(unit_triangle()); }

RegularCone random_cone(std::mt19937_64& rng, unsigned depth) {
  RegularCone cur = unit_cone();
  for (unsigned i = 0; i < depth; ++i) {
    static const ConeEdge edges[3] = {ConeEdge(1, 2), ConeEdge(1, 3), ConeEdge(2, 3)};
    auto children = binary_star(cur, edges[rng() % 3]);
    cur = (rng() % 2 == 0) ? children.first : children.second;
  }
  return cur;
}

const AngleThreshold kStar = AngleThreshold::theta_star();

PrimitiveVector random_primitive(std::mt19937_64& rng) {
  for (;;) {
    const long p = static_cast<long>(rng() % 9) - 4;
    const long q = static_cast<long>(rng() % 9) - 4;
    const long r = 1 + static_cast<long>(rng() % 6);
    if (gcd(gcd(Int(p), Int(q)), Int(r)) == 1) return PrimitiveVector(p, q, r);
  }
}

}  // namespace

TEST_CASE("verify_duality on the unit cone, by hand") {
  // delta^2 = (2, 1, 1); dist^2(u2,u3) = 2 = delta_1^2 / (1*1);
  // sin^2(theta_1) = 1 = r_1^2 / (delta_2^2 delta_3^2).
  const RegularCone c = unit_cone();
  const DualCone d = dual_of(c);
  CHECK(d.delta2[0] == 2);
  CHECK(d.delta2[1] == 1);
  CHECK(d.delta2[2] == 1);
  CHECK(dist2(c.vertex(1), c.vertex(2)) == 2);
  CHECK(verify_duality(c));
}

TEST_CASE("identity-basis cone fails the upper-half-space precondition") {
  try {
    RegularCone(PrimitiveVector(1, 0, 0), PrimitiveVector(0, 1, 0),
                PrimitiveVector(0, 0, 1));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInUpperHalfSpace);
  }
}

TEST_CASE("verify_duality holds over 1000 random starring chains") {
  std::mt19937_64 rng(505001);
  for (int i = 0; i < 1000; ++i) {
    CHECK(verify_duality(random_cone(rng, rng() % 20)));
  }
}

TEST_CASE("ratio4 values") {
  // Right isosceles: diam^2 = 2, area = 1/2, ratio4 = 4 / (1/4) = 16.
  CHECK(ratio4(unit_triangle()) == 16);

  // Near-equilateral with h = 866/1000: ratio4 within 1% of 16/3.
  const RatTriangle near_eq(pt(0, 0), pt(1, 0),
                            RatPoint2{make_rat(1, 2), make_rat(866, 1000)});
  const Rat r4 = ratio4(near_eq);
  const Rat target = make_rat(16, 3);
  CHECK(100 * (r4 - target) < target);
  CHECK(100 * (target - r4) < target);

  // The theta* bound constant in fourth-power form: 208/23 ~ 9.043.
  CHECK(make_rat(208, 23) > r4);
}

TEST_CASE("certified_ray_distance degenerate boxes") {
  // v on the ray through (1/2, 1/2, 1): distance zero, width zero.
  const std::pair<RatInterval, RatInterval> at_half{
      RatInterval(make_rat(1, 2)), RatInterval(make_rat(1, 2))};
  const RatInterval zero = certified_ray_distance(PrimitiveVector(1, 1, 2), at_half);
  CHECK(zero.lo == 0);
  CHECK(zero.hi == 0);

  // v = (1,0,1) against the same ray: dist^2 = 2 - 9/6 = 1/2.
  const RatInterval half = certified_ray_distance(PrimitiveVector(1, 0, 1), at_half);
  CHECK(half.lo == make_rat(1, 2));
  CHECK(half.hi == make_rat(1, 2));
}

TEST_CASE("certified_ray_distance widening monotonicity") {
  std::mt19937_64 rng(505002);
  for (int i = 0; i < 200; ++i) {
    const long cx = static_cast<long>(rng() % 100);
    const long cy = static_cast<long>(rng() % 100);
    const Rat x0 = make_rat(cx, 100), y0 = make_rat(cy, 100);
    const Rat w = make_rat(1 + static_cast<long>(rng() % 50), 1000);
    const std::pair<RatInterval, RatInterval> small{RatInterval(x0, x0 + w),
                                                    RatInterval(y0, y0 + w)};
    const std::pair<RatInterval, RatInterval> big{RatInterval(x0 - w, x0 + 2 * w),
                                                  RatInterval(y0 - w, y0 + 2 * w)};
    const PrimitiveVector v = random_primitive(rng);
    const RatInterval inner = certified_ray_distance(v, small);
    const RatInterval outer = certified_ray_distance(v, big);
    CHECK(outer.contains(inner));
  }
}

TEST_CASE("certified_ray_distance encloses sampled exact distances") {
  // For rational sample points u = (x, y, 1), dist^2 is exactly
  // |v x u|^2 / |u|^2; the interval over the box must contain it.
  std::mt19937_64 rng(505003);
  for (int i = 0; i < 200; ++i) {
    const Rat x0 = make_rat(static_cast<long>(rng() % 200), 100);
    const Rat y0 = make_rat(static_cast<long>(rng() % 200), 100);
    const Rat w = make_rat(1 + static_cast<long>(rng() % 100), 100);
    const std::pair<RatInterval, RatInterval> box{RatInterval(x0, x0 + w),
                                                  RatInterval(y0, y0 + w)};
    const PrimitiveVector v = random_primitive(rng);
    const RatInterval enclosure = certified_ray_distance(v, box);
    for (int s = 0; s < 5; ++s) {
      const Rat x = x0 + w * make_rat(static_cast<long>(rng() % 101), 100);
      const Rat y = y0 + w * make_rat(static_cast<long>(rng() % 101), 100);
      const Rat cx = Rat(v.q) - Rat(v.r) * y;
      const Rat cy = Rat(v.r) * x - Rat(v.p);
      const Rat cz = Rat(v.p) * y - Rat(v.q) * x;
      const Rat exact = (cx * cx + cy * cy + cz * cz) / (x * x + y * y + 1);
      CHECK(enclosure.contains(exact));
    }
  }
}

TEST_CASE("convergence_report bound chain on a ten-stage trace") {
  const ExpansionTrace trace = construct_expansion(unit_triangle(), kStar, 10);
  const ConvergenceReport report = convergence_report(trace, 9);
  REQUIRE(report.rows.size() == 9);

  Int prev_d3(0);
  for (const ConvergenceRow& row : report.rows) {
    CHECK(row.d1 <= row.d2);
    CHECK(row.d2 <= row.d3);
    CHECK(row.area == make_rat(1, 2 * row.d1 * row.d2 * row.d3));
    // Strict ratio bound: all stage angles exceed theta*.
    CHECK(23 * row.ratio4 < 208);
    // Bound chain (also asserted inside convergence_report).
    CHECK(row.dist2_bound.hi <= Rat(row.d1 * row.d1) * row.diam2);
    CHECK(row.dist2_bound.hi * row.dist2_bound.hi <= row.bound2);
    CHECK(row.bound2 == make_rat(52, 23 * row.d3 * row.d3));
    // d3 strictly increases along stages.
    CHECK(row.d3 > prev_d3);
    prev_d3 = row.d3;
  }

  // Deeper enclosures never widen the certified bound.
  const ConvergenceReport shallow = convergence_report(trace, 5);
  for (std::size_t n = 0; n < shallow.rows.size(); ++n) {
    CHECK(report.rows[n].dist2_bound.hi <= shallow.rows[n].dist2_bound.hi);
  }

  try {
    convergence_report(trace, 10);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientDepth);
  }
}

TEST_CASE("davenport_floor_check") {
  // Near-extremal isosceles: base angles just above theta*, via a rational
  // tangent approximation from above; tan(theta*) = sqrt(23/13) ~ 1.33012.
  const Rat tan_above = make_rat(13302, 10000);
  const RatTriangle extremal(pt(0, 0), pt(2, 0), RatPoint2{Rat(1), tan_above});
  bool all_ge = true;
  for (std::size_t i = 0; i < 3; ++i) {
    const RatVec2 u = extremal.vertex((i + 1) % 3) - extremal.vertex(i);
    const RatVec2 v = extremal.vertex((i + 2) % 3) - extremal.vertex(i);
    if (!angle_at_least(u, v, kStar)) all_ge = false;
  }
  CHECK(all_ge);
  CHECK(davenport_floor_check(extremal, kStar));
  CHECK(23 * ratio4(extremal) < 208);
  // ...and close to the extremum: within 1%.
  CHECK(100 * (make_rat(208, 23) - ratio4(extremal)) < make_rat(208, 23));

  // Equilateral-like triangle: ratio4 near 16/3, far below the bound.
  const RatTriangle near_eq(pt(0, 0), pt(1, 0),
                            RatPoint2{make_rat(1, 2), make_rat(866, 1000)});
  CHECK(davenport_floor_check(near_eq, kStar));

  // Right isosceles: a 45-degree angle fails the antecedent; vacuously true.
  CHECK(davenport_floor_check(unit_triangle(), kStar));

  // Random triangles: the implication holds everywhere.
  std::mt19937_64 rng(505004);
  for (int i = 0; i < 2000; ++i) {
    const long x1 = static_cast<long>(rng() % 41) - 20;
    const long y1 = static_cast<long>(rng() % 41) - 20;
    const long x2 = static_cast<long>(rng() % 41) - 20;
    const long y2 = static_cast<long>(rng() % 41) - 20;
    const long x3 = static_cast<long>(rng() % 41) - 20;
    const long y3 = static_cast<long>(rng() % 41) - 20;
    try {
      const RatTriangle t(pt(x1, y1), pt(x2, y2), pt(x3, y3));
      CHECK(davenport_floor_check(t, kStar));
    } catch (const Error&) {
      // collinear sample; skip
    }
  }
}
