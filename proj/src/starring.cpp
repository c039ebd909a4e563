#include "farey2d/starring.hpp"

namespace farey2d {

ConeEdge::ConeEdge(int a, int b) : i(a < b ? a : b), j(a < b ? b : a) {
  if (i < 1 || j > 3 || i == j) {
    throw Error(ErrorCode::InvariantViolation, "cone edge must pick two of slots 1..3");
  }
}

bool operator==(const ConeEdge& a, const ConeEdge& b) {
  return a.i == b.i && a.j == b.j;
}

PrimitiveVector mediant(const PrimitiveVector& u, const PrimitiveVector& v) {
  const Int p = u.p + v.p;
  const Int q = u.q + v.q;
  const Int r = u.r + v.r;
  if (gcd(gcd(p, q), r) != 1) {
    throw Error(ErrorCode::NotCoprimePair, "imprimitive mediant");
  }
  return PrimitiveVector(p, q, r);
}

std::pair<RegularCone, RegularCone> binary_star(const RegularCone& c, const ConeEdge& edge) {
  const PrimitiveVector m = mediant(c.gen(edge.i - 1), c.gen(edge.j - 1));
  std::array<PrimitiveVector, 3> low = c.gens();
  std::array<PrimitiveVector, 3> high = c.gens();
  low[edge.i - 1] = m;
  high[edge.j - 1] = m;
  return {RegularCone(low[0], low[1], low[2]), RegularCone(high[0], high[1], high[2])};
}

std::pair<RegularCone, int> child_containing_tracked(const RegularCone& c,
                                                     const ConeEdge& edge,
                                                     const QuadPoint2& target) {
  const PrimitiveVector m = mediant(c.gen(edge.i - 1), c.gen(edge.j - 1));
  const RatPoint2 m_point{make_rat(m.p, m.r), make_rat(m.q, m.r)};
  const RatPoint2 off_point = c.vertex(edge.off_index() - 1);
  const RationalLine split = line_through(m_point, off_point);
  const int target_side = line_side(split, target);
  if (target_side == 0) {
    throw Error(ErrorCode::OnSplitLine, "target on dividing segment");
  }
  // Child one replaces the lower slot, so it keeps generator j and covers
  // the side of vertex j.
  const int side_j = line_side(split, c.vertex(edge.j - 1));
  auto children = binary_star(c, edge);
  if (target_side == side_j) return {std::move(children.first), 0};
  return {std::move(children.second), 1};
}

RegularCone child_containing(const RegularCone& c, const ConeEdge& edge,
                             const QuadPoint2& target) {
  return child_containing_tracked(c, edge, target).first;
}

RegularCone sigma_pq(const RegularCone& c, unsigned long p, unsigned long q) {
  const PrimitiveVector& a = c.gen(0);
  const PrimitiveVector& b = c.gen(1);
  const PrimitiveVector& cv = c.gen(2);
  const Int pk(p);
  const Int qk(q);
  return RegularCone(PrimitiveVector(a.p + pk * b.p, a.q + pk * b.q, a.r + pk * b.r),
                     PrimitiveVector(cv.p + qk * b.p, cv.q + qk * b.q, cv.r + qk * b.r),
                     b);
}

}  // namespace farey2d
