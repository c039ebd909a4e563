#include "farey2d/lattice_geom.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace farey2d {

PrimitiveVector::PrimitiveVector(Int pp, Int qq, Int rr)
    : p(std::move(pp)), q(std::move(qq)), r(std::move(rr)) {
  if (sgn(p) == 0 && sgn(q) == 0 && sgn(r) == 0) {
    throw Error(ErrorCode::Degenerate, "zero vector is not primitive");
  }
  if (gcd(gcd(p, q), r) != 1) {
    throw Error(ErrorCode::NotCoprimePair, "vector components share a factor");
  }
}

PrimitiveVector operator+(const PrimitiveVector& u, const PrimitiveVector& v) {
  return PrimitiveVector(u.p + v.p, u.q + v.q, u.r + v.r);
}

bool operator==(const PrimitiveVector& u, const PrimitiveVector& v) {
  return u.p == v.p && u.q == v.q && u.r == v.r;
}

bool operator==(const RatPoint2& a, const RatPoint2& b) {
  return a.x == b.x && a.y == b.y;
}

RatVec2 operator-(const RatPoint2& a, const RatPoint2& b) {
  return RatVec2{a.x - b.x, a.y - b.y};
}

QuadVec2 operator-(const QuadPoint2& a, const QuadPoint2& b) {
  return QuadVec2{a.x - b.x, a.y - b.y};
}

QuadPoint2 to_quad(const RatPoint2& p) {
  return QuadPoint2{QuadNum(p.x), QuadNum(p.y)};
}

RatTriangle::RatTriangle(RatPoint2 pa, RatPoint2 pb, RatPoint2 pc)
    : a(std::move(pa)), b(std::move(pb)), c(std::move(pc)) {
  if (sgn(shoelace2(*this)) == 0) {
    throw Error(ErrorCode::Degenerate, "collinear triangle vertices");
  }
}

const RatPoint2& RatTriangle::vertex(std::size_t i) const {
  switch (i) {
    case 0: return a;
    case 1: return b;
    default: return c;
  }
}

Rat shoelace2(const RatTriangle& t) {
  return cross(t.b - t.a, t.c - t.a);
}

Rat shoelace_area(const RatTriangle& t) {
  Rat s = shoelace2(t) / 2;
  return sgn(s) < 0 ? Rat(-s) : s;
}

Int det3(const std::array<PrimitiveVector, 3>& rows) {
  const PrimitiveVector& u = rows[0];
  const PrimitiveVector& v = rows[1];
  const PrimitiveVector& w = rows[2];
  return u.p * (v.q * w.r - v.r * w.q) - u.q * (v.p * w.r - v.r * w.p) +
         u.r * (v.p * w.q - v.q * w.p);
}

RegularCone::RegularCone(PrimitiveVector v1, PrimitiveVector v2, PrimitiveVector v3)
    : gens_{std::move(v1), std::move(v2), std::move(v3)}, det_(det3(gens_)) {
  for (const auto& g : gens_) {
    if (!g.in_upper_half()) {
      throw Error(ErrorCode::NotInUpperHalfSpace, "generator with r <= 0");
    }
  }
  if (det_ != 1 && det_ != -1) {
    if (sgn(det_) == 0) {
      throw Error(ErrorCode::Degenerate, "coplanar generators");
    }
    throw Error(ErrorCode::NotRegular,
                "generator matrix determinant " + det_.get_str());
  }
}

RatPoint2 RegularCone::vertex(std::size_t i) const {
  const PrimitiveVector& g = gens_[i];
  return RatPoint2{make_rat(g.p, g.r), make_rat(g.q, g.r)};
}

bool same_cone(const RegularCone& a, const RegularCone& b) {
  std::array<int, 3> used{0, 0, 0};
  for (std::size_t i = 0; i < 3; ++i) {
    bool found = false;
    for (std::size_t j = 0; j < 3; ++j) {
      if (!used[j] && a.gen(i) == b.gen(j)) {
        used[j] = 1;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

std::array<std::array<Int, 3>, 3> unimodular_transpose_inverse(
    const std::array<std::array<Int, 3>, 3>& m) {
  const Int det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                  m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                  m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (det != 1 && det != -1) {
    throw Error(ErrorCode::NotRegular, "matrix is not unimodular");
  }
  // Transpose inverse = cofactor matrix / det.
  std::array<std::array<Int, 3>, 3> cof;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      cof[i][j] = m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1];
      if (det < 0) cof[i][j] = -cof[i][j];
    }
  }
  return cof;
}

AngleThreshold AngleThreshold::from_cos2(const Rat& cos2) {
  if (sgn(cos2) < 0 || cos2 > 1) {
    throw Error(ErrorCode::InvalidTheta, "cos^2 outside [0,1]");
  }
  return AngleThreshold{Rat(1 - cos2), cos2, false};
}

AngleThreshold AngleThreshold::theta_star() {
  return from_cos2(make_rat(13, 36));
}

AngleThreshold AngleThreshold::third_pi() {
  return from_cos2(make_rat(1, 4));
}

Rat AngleThreshold::ctheta2() const {
  if (sgn(sin2) == 0) {
    throw Error(ErrorCode::InvalidTheta, "c_theta undefined for theta = 0");
  }
  return 1 / (9 * sin2);
}

RationalLine::RationalLine(Int aa, Int bb, Int cc)
    : a(std::move(aa)), b(std::move(bb)), c(std::move(cc)) {
  if (sgn(a) == 0 && sgn(b) == 0) {
    throw Error(ErrorCode::Degenerate, "line with a = b = 0");
  }
  Int g = gcd(gcd(a, b), c);
  if (sgn(g) < 0) g = -g;
  if (g != 1) {
    a /= g;
    b /= g;
    c /= g;
  }
  const int lead = sgn(a) != 0 ? sgn(a) : (sgn(b) != 0 ? sgn(b) : sgn(c));
  if (lead < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
}

bool operator==(const RationalLine& l, const RationalLine& m) {
  return l.a == m.a && l.b == m.b && l.c == m.c;
}

RationalLine line_through(const RatPoint2& p, const RatPoint2& q) {
  // Direction (dx, dy); normal (dy, -dx); c from passing through p.
  const Rat dx = q.x - p.x;
  const Rat dy = q.y - p.y;
  if (sgn(dx) == 0 && sgn(dy) == 0) {
    throw Error(ErrorCode::Degenerate, "line through equal points");
  }
  const Rat a = dy;
  const Rat b = -dx;
  const Rat c = -(a * p.x + b * p.y);
  // Clear denominators.
  Int lcm = a.get_den();
  mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), b.get_den().get_mpz_t());
  mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  const Rat scale(lcm);
  return RationalLine(Int(Rat(a * scale).get_num()), Int(Rat(b * scale).get_num()),
                      Int(Rat(c * scale).get_num()));
}

int line_side(const RationalLine& l, const RatPoint2& p) {
  return sgn(Rat(l.a * p.x + l.b * p.y + l.c));
}

int line_side(const RationalLine& l, const QuadPoint2& p) {
  const QuadNum value = Rat(l.a) * p.x + Rat(l.b) * p.y + QuadNum(Rat(l.c));
  return quad_sign(value);
}

bool line_meets_triangle(const RationalLine& l, const RatTriangle& t) {
  const int s1 = line_side(l, t.a);
  const int s2 = line_side(l, t.b);
  const int s3 = line_side(l, t.c);
  const bool all_pos = s1 > 0 && s2 > 0 && s3 > 0;
  const bool all_neg = s1 < 0 && s2 < 0 && s3 < 0;
  return !(all_pos || all_neg);
}

namespace {

// All canonical primitive triples with max(|a|,|b|,|c|) == h, in
// lexicographic order. Entries with |a|+|b| = 0 are excluded.
std::vector<RationalLine> line_block(long h) {
  std::vector<RationalLine> block;
  for (long a = -h; a <= h; ++a) {
    for (long b = -h; b <= h; ++b) {
      for (long c = -h; c <= h; ++c) {
        if (std::max({std::labs(a), std::labs(b), std::labs(c)}) != h) continue;
        if (a == 0 && b == 0) continue;
        const long lead = a != 0 ? a : (b != 0 ? b : c);
        if (lead < 0) continue;
        Int g = gcd(gcd(Int(a), Int(b)), Int(c));
        if (g != 1) continue;
        block.emplace_back(Int(a), Int(b), Int(c));
      }
    }
  }
  return block;
}

}  // namespace

const RationalLine& LineEnumerator::line(std::size_t n) {
  while (cache_.size() <= n) {
    auto block = line_block(next_height_++);
    cache_.insert(cache_.end(), block.begin(), block.end());
  }
  return cache_[n];
}

RationalLine enumerate_lines(std::size_t n) {
  LineEnumerator e;
  return e.line(n);
}

RegularCone cone_from_triangle(const RatTriangle& t) {
  std::array<PrimitiveVector, 3> gens{
      PrimitiveVector(0, 0, 1), PrimitiveVector(0, 0, 1), PrimitiveVector(0, 0, 1)};
  for (std::size_t i = 0; i < 3; ++i) {
    const RatPoint2& v = t.vertex(i);
    Int d;
    mpz_lcm(d.get_mpz_t(), v.x.get_den().get_mpz_t(), v.y.get_den().get_mpz_t());
    const Rat scale(d);
    gens[i] = PrimitiveVector(Int(Rat(v.x * scale).get_num()),
                              Int(Rat(v.y * scale).get_num()), d);
  }
  return RegularCone(gens[0], gens[1], gens[2]);
}

RatTriangle triangle_of_cone(const RegularCone& c) {
  return RatTriangle(c.vertex(0), c.vertex(1), c.vertex(2));
}

Rat area_regular(const RegularCone& c) {
  return make_rat(1, 2 * c.gen(0).r * c.gen(1).r * c.gen(2).r);
}

DualCone dual_of(const RegularCone& c) {
  std::array<std::array<Int, 3>, 3> m;
  for (std::size_t i = 0; i < 3; ++i) {
    m[i] = {c.gen(i).p, c.gen(i).q, c.gen(i).r};
  }
  DualCone dual;
  dual.rows = unimodular_transpose_inverse(m);
  for (std::size_t i = 0; i < 3; ++i) {
    dual.delta2[i] = Rat(dual.rows[i][0] * dual.rows[i][0] +
                         dual.rows[i][1] * dual.rows[i][1]);
  }
  return dual;
}

Rat cos2_of_angle(const RatVec2& u, const RatVec2& v) {
  const Rat d = dot(u, v);
  return d * d / (norm2(u) * norm2(v));
}

bool angle_gt(const RatTriangle& t, std::size_t vertex_index, const AngleThreshold& tau) {
  const RatPoint2& at = t.vertex(vertex_index);
  const RatPoint2& p = t.vertex((vertex_index + 1) % 3);
  const RatPoint2& q = t.vertex((vertex_index + 2) % 3);
  return angle_exceeds(p - at, q - at, tau);
}

Rat diam2(const RatTriangle& t) {
  return std::max({norm2(t.b - t.a), norm2(t.c - t.a), norm2(t.c - t.b)});
}

Rat dist2(const RatPoint2& a, const RatPoint2& b) { return norm2(b - a); }

Rat dist2_point_line(const RatPoint2& p, const RatPoint2& a, const RatPoint2& b) {
  const RatVec2 ab = b - a;
  const Rat cr = cross(ab, p - a);
  return cr * cr / norm2(ab);
}

Rat min_angle_cos2(const RatTriangle& t) {
  // The smallest interior angle is acute, so it maximizes cos; compare
  // cos_i = d_i / sqrt(n_i) pairwise on squares with sign care.
  Rat best_cos2(0);
  int best_sign = -2;
  for (std::size_t i = 0; i < 3; ++i) {
    const RatVec2 u = t.vertex((i + 1) % 3) - t.vertex(i);
    const RatVec2 v = t.vertex((i + 2) % 3) - t.vertex(i);
    const Rat d = dot(u, v);
    const int sd = sgn(d);
    const Rat c2 = d * d / (norm2(u) * norm2(v));
    const bool better =
        best_sign == -2 || sd > best_sign || (sd == best_sign && sd >= 0 && c2 > best_cos2) ||
        (sd == best_sign && sd < 0 && c2 < best_cos2);
    if (better) {
      best_sign = sd;
      best_cos2 = c2;
    }
  }
  if (best_sign <= 0) {
    throw Error(ErrorCode::InvariantViolation, "triangle with no acute angle");
  }
  return best_cos2;
}

namespace {

template <typename Point>
bool strictly_inside_impl(const RatTriangle& t, const Point& p) {
  for (std::size_t i = 0; i < 3; ++i) {
    const RationalLine edge = line_through(t.vertex((i + 1) % 3), t.vertex((i + 2) % 3));
    const int side_vertex = line_side(edge, t.vertex(i));
    const int side_point = line_side(edge, p);
    if (side_point == 0 || side_point != side_vertex) return false;
  }
  return true;
}

}  // namespace

bool strictly_inside(const RatTriangle& t, const RatPoint2& p) {
  return strictly_inside_impl(t, p);
}

bool strictly_inside(const RatTriangle& t, const QuadPoint2& p) {
  return strictly_inside_impl(t, p);
}

}  // namespace farey2d
