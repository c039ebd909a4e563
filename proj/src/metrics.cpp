#include "farey2d/metrics.hpp"

#include <algorithm>

namespace farey2d {

bool verify_duality(const RegularCone& c) {
  const DualCone dual = dual_of(c);
  const RatTriangle tri = triangle_of_cone(c);
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = (i + 1) % 3;
    const std::size_t k = (i + 2) % 3;
    const Rat rj2(c.gen(j).r * c.gen(j).r);
    const Rat rk2(c.gen(k).r * c.gen(k).r);
    const Rat ri2(c.gen(i).r * c.gen(i).r);

    if (dist2(tri.vertex(j), tri.vertex(k)) * rj2 * rk2 != dual.delta2[i]) return false;
    if (dist2_point_line(tri.vertex(i), tri.vertex(j), tri.vertex(k)) * ri2 *
            dual.delta2[i] != 1) {
      return false;
    }
    // sin^2 of the angle at vertex i, via the cross product.
    const RatVec2 u = tri.vertex(j) - tri.vertex(i);
    const RatVec2 v = tri.vertex(k) - tri.vertex(i);
    const Rat cr = cross(u, v);
    if (cr * cr * dual.delta2[j] * dual.delta2[k] != ri2 * norm2(u) * norm2(v)) {
      return false;
    }
  }
  return true;
}

Rat ratio4(const RatTriangle& t) {
  const Rat d2 = diam2(t);
  const Rat area = shoelace_area(t);
  return d2 * d2 / (area * area);
}

RatInterval certified_ray_distance(const PrimitiveVector& v,
                                   const std::pair<RatInterval, RatInterval>& enclosure) {
  const RatInterval& alpha = enclosure.first;
  const RatInterval& beta = enclosure.second;
  // dist^2(v, line(u)) = |v|^2 - (v.u)^2/|u|^2 = |v x u|^2 / |u|^2 by the
  // Lagrange identity. The cross form is the one evaluated: each component
  // is linear with every box variable occurring once, so the enclosure is
  // the exact range per component and no cancellation is lost between the
  // two near-equal terms of the difference form.
  const RatInterval cx = RatInterval(Rat(v.q)) - RatInterval(Rat(v.r)) * beta;
  const RatInterval cy = RatInterval(Rat(v.r)) * alpha - RatInterval(Rat(v.p));
  const RatInterval cz = RatInterval(Rat(v.p)) * beta - RatInterval(Rat(v.q)) * alpha;
  const RatInterval cross2 =
      interval_square(cx) + interval_square(cy) + interval_square(cz);
  const RatInterval u2 =
      interval_square(alpha) + interval_square(beta) + RatInterval(Rat(1));
  RatInterval res = cross2 / u2;
  if (sgn(res.lo) < 0) res.lo = 0;  // distances squared are nonnegative
  return res;
}

ConvergenceReport convergence_report(const std::vector<RegularCone>& stage_cones,
                                     std::size_t depth_for_enclosure) {
  if (depth_for_enclosure >= stage_cones.size()) {
    throw Error(ErrorCode::InsufficientDepth,
                "enclosure depth beyond last available stage");
  }
  const RatTriangle deep = triangle_of_cone(stage_cones[depth_for_enclosure]);
  const auto bounds = [](const Rat& a, const Rat& b, const Rat& c) {
    return RatInterval(std::min({a, b, c}), std::max({a, b, c}));
  };
  const std::pair<RatInterval, RatInterval> box{
      bounds(deep.a.x, deep.b.x, deep.c.x), bounds(deep.a.y, deep.b.y, deep.c.y)};

  ConvergenceReport report;
  report.rows.reserve(depth_for_enclosure);
  for (std::size_t n = 0; n < depth_for_enclosure; ++n) {
    const RegularCone& cone = stage_cones[n];
    const RatTriangle tri = triangle_of_cone(cone);
    std::array<Int, 3> d{cone.gen(0).r, cone.gen(1).r, cone.gen(2).r};
    std::sort(d.begin(), d.end());

    std::size_t min_idx = 0;
    for (std::size_t i = 1; i < 3; ++i) {
      if (cone.gen(i).r < cone.gen(min_idx).r) min_idx = i;
    }

    ConvergenceRow row{n,
                       d[0],
                       d[1],
                       d[2],
                       area_regular(cone),
                       diam2(tri),
                       ratio4(tri),
                       min_angle_cos2(tri),
                       certified_ray_distance(cone.gen(min_idx), box),
                       make_rat(52, 23 * d[2] * d[2])};

    const Rat d1_sq(row.d1 * row.d1);
    if (row.dist2_bound.hi > d1_sq * row.diam2) {
      throw Error(ErrorCode::InvariantViolation,
                  "certified distance exceeds d1^2 diam^2 at stage " + std::to_string(n));
    }
    if (row.dist2_bound.hi * row.dist2_bound.hi > row.bound2) {
      throw Error(ErrorCode::InvariantViolation,
                  "certified distance exceeds 52/(23 d3^2) at stage " + std::to_string(n));
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

ConvergenceReport convergence_report(const ExpansionTrace& trace,
                                     std::size_t depth_for_enclosure) {
  std::vector<RegularCone> cones;
  cones.reserve(trace.stages.size());
  for (const StageRecord& s : trace.stages) cones.push_back(s.cone);
  return convergence_report(cones, depth_for_enclosure);
}

bool davenport_floor_check(const RatTriangle& t, const AngleThreshold& theta_star) {
  for (std::size_t i = 0; i < 3; ++i) {
    const RatVec2 u = t.vertex((i + 1) % 3) - t.vertex(i);
    const RatVec2 v = t.vertex((i + 2) % 3) - t.vertex(i);
    if (!angle_at_least(u, v, theta_star)) return true;  // antecedent fails
  }
  return 23 * ratio4(t) <= 208;
}

}  // namespace farey2d
