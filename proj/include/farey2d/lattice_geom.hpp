#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "farey2d/exactnum.hpp"

namespace farey2d {

// Integer vector (p,q,r) with gcd(p,q,r) = 1. Vectors "in V" additionally
// have r > 0 and are the homogeneous coordinates of the plane point
// (p/r, q/r); that bijection is what the whole cone calculus runs on.
struct PrimitiveVector {
  Int p;
  Int q;
  Int r;

  PrimitiveVector(Int pp, Int qq, Int rr);

  bool in_upper_half() const { return sgn(r) > 0; }
};

PrimitiveVector operator+(const PrimitiveVector& u, const PrimitiveVector& v);
bool operator==(const PrimitiveVector& u, const PrimitiveVector& v);

struct RatPoint2 {
  Rat x;
  Rat y;
};

bool operator==(const RatPoint2& a, const RatPoint2& b);

struct QuadPoint2 {
  QuadNum x;
  QuadNum y;
};

// Edge vectors; the exact angle predicates below are templated over these.
struct RatVec2 {
  Rat x;
  Rat y;
};

struct QuadVec2 {
  QuadNum x;
  QuadNum y;
};

RatVec2 operator-(const RatPoint2& a, const RatPoint2& b);
QuadVec2 operator-(const QuadPoint2& a, const QuadPoint2& b);
QuadPoint2 to_quad(const RatPoint2& p);

inline Rat dot(const RatVec2& u, const RatVec2& v) { return u.x * v.x + u.y * v.y; }
inline Rat cross(const RatVec2& u, const RatVec2& v) { return u.x * v.y - u.y * v.x; }
inline Rat norm2(const RatVec2& u) { return dot(u, u); }
inline QuadNum dot(const QuadVec2& u, const QuadVec2& v) { return u.x * v.x + u.y * v.y; }
inline QuadNum cross(const QuadVec2& u, const QuadVec2& v) { return u.x * v.y - u.y * v.x; }
inline QuadNum norm2(const QuadVec2& u) { return dot(u, u); }

struct RatTriangle {
  RatPoint2 a;
  RatPoint2 b;
  RatPoint2 c;

  RatTriangle(RatPoint2 pa, RatPoint2 pb, RatPoint2 pc);

  const RatPoint2& vertex(std::size_t i) const;
};

// Twice the signed area; nonzero by the type invariant.
Rat shoelace2(const RatTriangle& t);
Rat shoelace_area(const RatTriangle& t);

// Ordered triple of primitive vectors in V whose matrix has det +-1; the
// order carries starring provenance, equality is set equality.
class RegularCone {
 public:
  RegularCone(PrimitiveVector v1, PrimitiveVector v2, PrimitiveVector v3);

  const PrimitiveVector& gen(std::size_t i) const { return gens_[i]; }
  const std::array<PrimitiveVector, 3>& gens() const { return gens_; }
  RatPoint2 vertex(std::size_t i) const;
  const Int& det() const { return det_; }

 private:
  std::array<PrimitiveVector, 3> gens_;
  Int det_;
};

bool same_cone(const RegularCone& a, const RegularCone& b);

Int det3(const std::array<PrimitiveVector, 3>& rows);

// Dual description: rows = transpose inverse of the generator matrix, so
// f_i(x,y) = a_i x + b_i y + c_i satisfies f_i(u_i) = 1/r_i and f_i = 0 on
// the opposite side. delta2[i] = a_i^2 + b_i^2, kept squared.
struct DualCone {
  std::array<std::array<Int, 3>, 3> rows;
  std::array<Rat, 3> delta2;
};

// Transpose inverse of a unimodular integer matrix (|det| = 1 required).
std::array<std::array<Int, 3>, 3> unimodular_transpose_inverse(
    const std::array<std::array<Int, 3>, 3>& m);

// Angle tau in (0, pi/2] held exactly by the rational pair (sin^2, cos^2).
struct AngleThreshold {
  Rat sin2;
  Rat cos2;
  bool obtuse = false;  // always false here: all thresholds are <= pi/2

  static AngleThreshold from_cos2(const Rat& cos2);
  static AngleThreshold theta_star();  // cos^2 = 13/36, i.e. arcsin(sqrt(23)/6)
  static AngleThreshold third_pi();    // cos^2 = 1/4

  // c_theta^2 = 1/(9 sin^2 theta).
  Rat ctheta2() const;
};

// a x + b y + c = 0 with gcd(a,b,c) = 1, |a|+|b| > 0, first nonzero of
// (a,b,c) positive.
struct RationalLine {
  Int a;
  Int b;
  Int c;

  RationalLine(Int aa, Int bb, Int cc);
};

bool operator==(const RationalLine& l, const RationalLine& m);
RationalLine line_through(const RatPoint2& p, const RatPoint2& q);

int line_side(const RationalLine& l, const RatPoint2& p);
int line_side(const RationalLine& l, const QuadPoint2& p);

bool line_meets_triangle(const RationalLine& l, const RatTriangle& t);

// n-th rational line of the fixed enumeration: H = max(|a|,|b|,|c|)
// ascending, ties by lexicographic order on (a,b,c).
RationalLine enumerate_lines(std::size_t n);

// Cached prefix of the enumeration, for repeated Lambda_0..Lambda_k walks.
class LineEnumerator {
 public:
  const RationalLine& line(std::size_t n);

 private:
  std::vector<RationalLine> cache_;
  long next_height_ = 1;
};

RegularCone cone_from_triangle(const RatTriangle& t);
RatTriangle triangle_of_cone(const RegularCone& c);

// 1/(2 r1 r2 r3); equals the shoelace area of the projected triangle.
Rat area_regular(const RegularCone& c);

DualCone dual_of(const RegularCone& c);

// Exact strict comparison: angle between u and v exceeds tau. Works for
// rational and Q(sqrt 5) edge vectors alike; every comparison happens on
// squares so no root is ever taken.
template <typename Vec>
bool angle_exceeds(const Vec& u, const Vec& v, const AngleThreshold& tau) {
  const auto d = dot(u, v);
  const int sd = sgn(d);
  if (sd < 0) return true;                // angle > pi/2 >= tau
  if (sd == 0) return sgn(tau.cos2) > 0;  // angle = pi/2: strict unless tau = pi/2
  // Acute on both sides: angle > tau  <=>  cos^2 angle < cos^2 tau.
  return sgn(d * d - tau.cos2 * (norm2(u) * norm2(v))) < 0;
}

// Strict "angle < tau" for tau <= pi/2.
template <typename Vec>
bool angle_below(const Vec& u, const Vec& v, const AngleThreshold& tau) {
  const auto d = dot(u, v);
  if (sgn(d) <= 0) return false;  // angle >= pi/2 >= tau
  return sgn(d * d - tau.cos2 * (norm2(u) * norm2(v))) > 0;
}

// Non-strict "angle >= tau".
template <typename Vec>
bool angle_at_least(const Vec& u, const Vec& v, const AngleThreshold& tau) {
  const auto d = dot(u, v);
  if (sgn(d) <= 0) return true;
  return sgn(d * d - tau.cos2 * (norm2(u) * norm2(v))) <= 0;
}

// cos^2 of the angle between u and v (both rational); requires acute or
// right handled by caller when sign matters.
Rat cos2_of_angle(const RatVec2& u, const RatVec2& v);

// Interior angle at vertex i of t strictly exceeds tau.
bool angle_gt(const RatTriangle& t, std::size_t vertex_index, const AngleThreshold& tau);

// Max squared side length.
Rat diam2(const RatTriangle& t);

// Squared distance between two rational points.
Rat dist2(const RatPoint2& a, const RatPoint2& b);

// Squared distance from p to the line through a and b.
Rat dist2_point_line(const RatPoint2& p, const RatPoint2& a, const RatPoint2& b);

// cos^2 of the smallest interior angle (always acute), exact.
Rat min_angle_cos2(const RatTriangle& t);

// All three line_side signs of p against the edges of t are strict and match
// the opposite vertex: p lies in the open triangle.
bool strictly_inside(const RatTriangle& t, const RatPoint2& p);
bool strictly_inside(const RatTriangle& t, const QuadPoint2& p);

}  // namespace farey2d
