#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "farey2d/accessor.hpp"

namespace farey2d {

// Checks, for every index rotation and in exact squared form, the nine
// duality identities tying edge lengths, vertex-line distances and angle
// sines to the dual rows: dist^2(u_j,u_k) r_j^2 r_k^2 = delta_i^2,
// dist^2(u_i, line(u_j,u_k)) r_i^2 delta_i^2 = 1, and
// sin^2(theta_i) delta_j^2 delta_k^2 = r_i^2.
bool verify_duality(const RegularCone& c);

// diam^4 / area^2, exact.
Rat ratio4(const RatTriangle& t);

// Certified enclosure of dist^2(v, ray through (alpha, beta, 1)) over all
// (alpha, beta) in the box, via interval evaluation of
// |v|^2 - (v.u)^2 / |u|^2. The lower endpoint is clamped at zero.
RatInterval certified_ray_distance(const PrimitiveVector& v,
                                   const std::pair<RatInterval, RatInterval>& enclosure);

struct ConvergenceRow {
  std::size_t k;
  Int d1, d2, d3;  // sorted denominators, d1 <= d2 <= d3
  Rat area;
  Rat diam2;
  Rat ratio4;
  Rat min_angle_cos2;
  RatInterval dist2_bound;  // certified interval for dist^2 to the limit ray
  Rat bound2;               // 52 / (23 d3^2), upper bound for (dist^2)^2
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
};

// Per-stage records for stages 0..depth_for_enclosure-1, with the limit-ray
// enclosure taken from the bounding box of the stage depth_for_enclosure
// triangle. Throws InvariantViolation if a stage violates either bound
// inequality dist2_hi <= d1^2 diam^2 or dist2_hi^2 <= 52/(23 d3^2).
ConvergenceReport convergence_report(const std::vector<RegularCone>& stage_cones,
                                     std::size_t depth_for_enclosure);
ConvergenceReport convergence_report(const ExpansionTrace& trace,
                                     std::size_t depth_for_enclosure);

// The extremal implication behind the ratio floor: if every angle of t is
// >= arcsin(sqrt(23)/6) then 23 diam^4 <= 208 area^2 must hold.
bool davenport_floor_check(const RatTriangle& t, const AngleThreshold& theta_star);

}  // namespace farey2d
