#pragma once

#include <cstddef>
#include <utility>

#include "farey2d/lattice_geom.hpp"

namespace farey2d {

// Two-dimensional face of a cone, as the unordered pair of generator slots
// (1-based, matching serialized provenance).
struct ConeEdge {
  int i;
  int j;

  ConeEdge(int a, int b);

  int off_index() const { return 6 - i - j; }  // the slot not on the edge
};

bool operator==(const ConeEdge& a, const ConeEdge& b);

// One binary starring: which face was split, which child was kept
// (0 = mediant replaced the lower slot, 1 = the higher slot), and the
// mediant vector itself.
struct StarringStep {
  ConeEdge edge;
  int kept_child;
  PrimitiveVector mediant;
};

// Componentwise sum of two generators of a common regular cone. Throws
// NotCoprimePair when the sum is imprimitive (a non-regular parent).
PrimitiveVector mediant(const PrimitiveVector& u, const PrimitiveVector& v);

// Both children of starring c at the mediant of the given face. Child one
// carries the mediant in the lower slot, child two in the higher slot.
std::pair<RegularCone, RegularCone> binary_star(const RegularCone& c, const ConeEdge& edge);

// The unique child whose closed triangle contains the target; the target
// must be off the split line (irrational steering guarantees that), else
// OnSplitLine.
RegularCone child_containing(const RegularCone& c, const ConeEdge& edge,
                             const QuadPoint2& target);

// As child_containing but also reports which child was taken.
std::pair<RegularCone, int> child_containing_tracked(const RegularCone& c,
                                                     const ConeEdge& edge,
                                                     const QuadPoint2& target);

// For c = <a, b, cv>: the cone <a + p b, cv + q b, b>, regular and contained
// in c, reachable from c by p + q binary starrings.
RegularCone sigma_pq(const RegularCone& c, unsigned long p, unsigned long q);

}  // namespace farey2d
