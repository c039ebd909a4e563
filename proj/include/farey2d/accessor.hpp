#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "farey2d/starring.hpp"

namespace farey2d {

// Records starrings against a replay cone that evolves only through
// canonical binary_star children. The working cones inside the pipeline
// get relabeled along the way; translating each move into the replay
// cone's slots keeps the recorded provenance replayable from the stage
// input by plain child selection.
class StarRecorder {
 public:
  explicit StarRecorder(RegularCone start) : replay_(std::move(start)) {}

  // The starring that produced `mediant` while dropping `replaced`.
  void apply(const PrimitiveVector& mediant, const PrimitiveVector& replaced);

  const RegularCone& replay() const { return replay_; }
  const std::vector<StarringStep>& steps() const { return steps_; }
  std::vector<StarringStep> take_steps() { return std::move(steps_); }

 private:
  RegularCone replay_;
  std::vector<StarringStep> steps_;
};

// Output of the slow-continued-fraction stage: the cone <a_m, b_m, c_0>
// with the angle zeta at the B_m vertex pinned strictly between theta and
// pi/3, B_m off the avoided line, and both original edge vertices replaced.
struct Step1Result {
  RegularCone cone;  // slots (A_m, B_m, C_0)
  Rat zeta_cos2;
  std::size_t iterations;
};

// One recorded stage of an expansion: the cone (slots A, B, C with the
// zeta angle at B), its full starring provenance, the index of the line it
// was built to avoid, and the steering point used.
struct StageRecord {
  RegularCone cone;
  std::vector<StarringStep> steps;
  std::size_t avoided_line_index;
  Rat zeta_cos2;
  QuadPoint2 steering;
};

struct ExpansionTrace {
  AngleThreshold theta;
  RatTriangle seed;
  std::vector<StageRecord> stages;
};

// Safety rails, not semantics; hitting one signals a defect upstream.
struct ExpansionCaps {
  std::size_t step1_iteration_cap = 1000000;
  unsigned long step2_search_cap = 10000;
};

// Reorder generators so the triangle satisfies
// angle(C) >= angle(A) >= angle(B), slots (A,B,C) = (1,2,3). Angle order is
// decided exactly through opposite squared side lengths. Already-ordered
// cones are returned unchanged, so the relabel is idempotent.
RegularCone relabel_for_construction(const RegularCone& c);

// Relabel, and if the A-B edge lies inside l, one binary starring
// <a, b+c, c> followed by a second relabel. The returned cone always has
// its A-B edge not contained in l.
RegularCone preamble(const RegularCone& c, const RationalLine& l,
                     StarRecorder* recorder = nullptr);

// Four fixed binary starrings producing a cone whose generators are
// strictly positive combinations of the input generators; its triangle is
// therefore strictly interior to the input triangle. Keeps consecutive
// recorded stages strictly nested.
RegularCone interiorize(const RegularCone& c, StarRecorder* recorder = nullptr);

// Deterministic steering point I = A0 + t (B0 - A0) with t irrational in
// Q(sqrt 5): dyadic bisection brackets a parameter interval on which the
// angle A0^I^C0 sits strictly inside (theta, pi/3), then t is placed at the
// golden section of that interval. I avoids every line in `avoid` and has
// at least one irrational coordinate.
QuadPoint2 choose_steering_point(const RegularCone& labeled, const AngleThreshold& theta,
                                 const std::vector<RationalLine>& avoid);

// Slow continued fraction on the A-B edge, keeping C fixed and always
// descending into the child containing the steering point, until
// B_m is off avoid_line, theta < zeta < pi/3 exactly, and both original
// edge vertices have been replaced.
Step1Result step1(const RegularCone& labeled, const AngleThreshold& theta,
                  const RationalLine& avoid_line, const QuadPoint2& steering,
                  std::size_t iteration_cap = ExpansionCaps{}.step1_iteration_cap,
                  StarRecorder* recorder = nullptr);

// Searches pairs (p,q), p,q >= 1, by max(p,q) then lexicographically, for
// the first sigma_{p,q} whose two new angles strictly exceed pi/3, whose
// triangle misses avoid_line, and whose vertices avoid forbidden_vertices.
// Returns the cone ordered (A_pq, B_m, C_pq). When nesting_reference is
// given, the accepted triangle is checked to be strictly inside it.
RegularCone step2(const RegularCone& step1_cone, const AngleThreshold& theta,
                  const RationalLine& avoid_line,
                  const std::vector<RatPoint2>& forbidden_vertices,
                  unsigned long search_cap = ExpansionCaps{}.step2_search_cap,
                  StarRecorder* recorder = nullptr,
                  std::pair<unsigned long, unsigned long>* pq_out = nullptr,
                  const RatTriangle* nesting_reference = nullptr);

// The full deterministic machine: stage k applies interiorize, preamble
// against line Lambda_k, steering-point choice, step1 and step2, and
// records the resulting cone. Stages are strictly nested regular cones,
// every stage triangle has all angles > theta, and stage k's triangle is
// disjoint from Lambda_0..Lambda_k.
ExpansionTrace construct_expansion(const RatTriangle& seed, const AngleThreshold& theta,
                                   std::size_t n_stages, const ExpansionCaps& caps = {});

// Naive contrast expansion: repeatedly star the longest edge (ties broken
// by lowest slot pair) and keep the child containing the target. No angle
// guarantee; used to exhibit min-angle collapse.
struct BaselineResult {
  std::vector<RegularCone> cones;
  std::vector<StarringStep> steps;
  std::vector<Rat> min_angle_cos2;
};

BaselineResult baseline_expansion(const RatTriangle& seed, const QuadPoint2& target,
                                  std::size_t n_steps);

}  // namespace farey2d
