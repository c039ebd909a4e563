#include "farey2d/accessor.hpp"

#include <algorithm>
#include <array>

namespace farey2d {

namespace {

RatPoint2 point_of(const PrimitiveVector& v) {
  return RatPoint2{make_rat(v.p, v.r), make_rat(v.q, v.r)};
}

Rat opposite_side2(const RatTriangle& t, std::size_t i) {
  return norm2(t.vertex((i + 2) % 3) - t.vertex((i + 1) % 3));
}

bool edge_inside_line(const RationalLine& l, const RatPoint2& p, const RatPoint2& q) {
  return line_side(l, p) == 0 && line_side(l, q) == 0;
}

}  // namespace

RegularCone relabel_for_construction(const RegularCone& c) {
  const RatTriangle t = triangle_of_cone(c);
  const std::array<Rat, 3> s{opposite_side2(t, 0), opposite_side2(t, 1),
                             opposite_side2(t, 2)};
  // Larger opposite side <=> larger angle. Target: s[2] >= s[0] >= s[1].
  RegularCone out = [&] {
    if (s[2] >= s[0] && s[0] >= s[1]) return c;
    std::array<std::size_t, 3> idx{0, 1, 2};
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });
    // idx = [C, A, B] by descending angle.
    return RegularCone(c.gen(idx[1]), c.gen(idx[2]), c.gen(idx[0]));
  }();
  const RatTriangle ot = triangle_of_cone(out);
  const AngleThreshold third = AngleThreshold::third_pi();
  if (!angle_gt(ot, 2, third) || angle_gt(ot, 1, third)) {
    // A rational triangle always has its largest angle > pi/3 and its
    // smallest < pi/3 (it cannot be equilateral), so this is a caller bug.
    throw Error(ErrorCode::RelabelImpossible, "triangle admits no valid labeling");
  }
  return out;
}

void StarRecorder::apply(const PrimitiveVector& med, const PrimitiveVector& replaced) {
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (replay_.gen(i) + replay_.gen(j) == med) {
        const ConeEdge edge(i + 1, j + 1);
        int kept_child;
        if (replay_.gen(i) == replaced) {
          kept_child = 0;  // child one: mediant takes the lower slot
        } else if (replay_.gen(j) == replaced) {
          kept_child = 1;
        } else {
          throw Error(ErrorCode::InvariantViolation,
                      "replaced generator not on the starred face");
        }
        steps_.push_back(StarringStep{edge, kept_child, med});
        auto children = binary_star(replay_, edge);
        replay_ = kept_child == 0 ? std::move(children.first) : std::move(children.second);
        return;
      }
    }
  }
  throw Error(ErrorCode::InvariantViolation, "mediant is not the sum of a cone face");
}

RegularCone preamble(const RegularCone& c, const RationalLine& l, StarRecorder* recorder) {
  RegularCone labeled = relabel_for_construction(c);
  if (!edge_inside_line(l, labeled.vertex(0), labeled.vertex(1))) {
    return labeled;
  }
  // conv(A,B) inside l: replace by <a, b+c, c>.
  const PrimitiveVector med = mediant(labeled.gen(1), labeled.gen(2));
  if (recorder) recorder->apply(med, labeled.gen(1));
  RegularCone starred(labeled.gen(0), med, labeled.gen(2));
  RegularCone out = relabel_for_construction(starred);
  if (edge_inside_line(l, out.vertex(0), out.vertex(1))) {
    throw Error(ErrorCode::InvariantViolation, "A-B edge still inside avoided line");
  }
  return out;
}

RegularCone interiorize(const RegularCone& c, StarRecorder* recorder) {
  // <a,b,c> -> <a+b,b,c> -> <a+b+c,b,c> -> <a+b+c,a+2b+c,c>
  //         -> <a+b+c, a+2b+c, a+2b+2c>; all generators end up strictly
  // positive combinations of a, b, c.
  struct Move {
    ConeEdge edge;
    int child;
  };
  static const std::array<Move, 4> plan{Move{ConeEdge(1, 2), 0}, Move{ConeEdge(1, 3), 0},
                                        Move{ConeEdge(1, 2), 1}, Move{ConeEdge(2, 3), 1}};
  RegularCone cur = c;
  for (const Move& mv : plan) {
    auto children = binary_star(cur, mv.edge);
    const PrimitiveVector med = mediant(cur.gen(mv.edge.i - 1), cur.gen(mv.edge.j - 1));
    const int replaced_slot = mv.child == 0 ? mv.edge.i - 1 : mv.edge.j - 1;
    if (recorder) recorder->apply(med, cur.gen(replaced_slot));
    cur = mv.child == 0 ? children.first : children.second;
  }
  return cur;
}

QuadPoint2 choose_steering_point(const RegularCone& labeled, const AngleThreshold& theta,
                                 const std::vector<RationalLine>& avoid) {
  const RatPoint2 a0 = labeled.vertex(0);
  const RatPoint2 b0 = labeled.vertex(1);
  const RatPoint2 c0 = labeled.vertex(2);
  for (const RationalLine& l : avoid) {
    if (edge_inside_line(l, a0, b0)) {
      throw Error(ErrorCode::InvariantViolation, "steering edge inside avoided line");
    }
  }
  // The angle psi(t) at I(t) = A0 + t (B0 - A0), seen between A0 and C0,
  // decreases strictly from pi - angle(A0) to angle(B0) as t runs over
  // (0,1). The target window (theta, pi/3) is narrowed to the middle half
  // of what is reachable, so downstream iteration counts stay bounded.
  const Rat beta_cos2 = cos2_of_angle(a0 - b0, c0 - b0);
  const Rat quarter = make_rat(1, 4);
  const Rat c_max = std::min(theta.cos2, beta_cos2);
  if (c_max <= quarter) {
    throw Error(ErrorCode::WindowEmpty, "no angle window above pi/3");
  }
  const Rat margin = (c_max - quarter) / 4;
  const AngleThreshold upper = AngleThreshold::from_cos2(quarter + margin);
  const AngleThreshold lower = AngleThreshold::from_cos2(c_max - margin);

  const RatVec2 dir = b0 - a0;
  const auto classify = [&](const Rat& t) -> int {
    const RatPoint2 i_t{a0.x + t * dir.x, a0.y + t * dir.y};
    const RatVec2 u = a0 - i_t;
    const RatVec2 v = c0 - i_t;
    if (!angle_below(u, v, upper)) return -1;    // psi too large
    if (!angle_exceeds(u, v, lower)) return 1;   // psi too small
    return 0;
  };

  Rat lo(0), hi(1);
  Rat found;
  bool have_found = false;
  for (int iter = 0; iter < 4096; ++iter) {
    const Rat mid = (lo + hi) / 2;
    const int cls = classify(mid);
    if (cls == 0) {
      found = mid;
      have_found = true;
      break;
    }
    (cls < 0 ? lo : hi) = mid;
  }
  if (!have_found) {
    throw Error(ErrorCode::WindowEmpty, "bisection found no steering window");
  }
  Rat h = (hi - found) / 2;
  for (int iter = 0; classify(found + h) != 0; ++iter) {
    h /= 2;
    if (iter > 4096) {
      throw Error(ErrorCode::WindowEmpty, "no room right of steering parameter");
    }
  }
  const Rat t0 = found;
  const Rat t1 = found + h;
  // t = t0 + (t1 - t0)(sqrt(5) - 1)/2, strictly between t0 and t1.
  const Rat irr = (t1 - t0) / 2;
  const QuadNum t(t0 - irr, irr);
  const QuadPoint2 steering{QuadNum(a0.x + t.a * dir.x, t.b * dir.x),
                            QuadNum(a0.y + t.a * dir.y, t.b * dir.y)};

  // Exact confirmation of the contract; none of these can fail.
  const QuadVec2 u = to_quad(a0) - steering;
  const QuadVec2 v = to_quad(c0) - steering;
  if (!angle_exceeds(u, v, theta) || !angle_below(u, v, AngleThreshold::third_pi())) {
    throw Error(ErrorCode::InvariantViolation, "steering angle outside window");
  }
  if (steering.x.is_rational() && steering.y.is_rational()) {
    throw Error(ErrorCode::InvariantViolation, "steering point is rational");
  }
  for (const RationalLine& l : avoid) {
    if (line_side(l, steering) == 0) {
      throw Error(ErrorCode::InvariantViolation, "steering point on avoided line");
    }
  }
  return steering;
}

Step1Result step1(const RegularCone& labeled, const AngleThreshold& theta,
                  const RationalLine& avoid_line, const QuadPoint2& steering,
                  std::size_t iteration_cap, StarRecorder* recorder) {
  const RatPoint2 a0_pt = labeled.vertex(0);
  const RatPoint2 b0_pt = labeled.vertex(1);
  const RatPoint2 c0_pt = labeled.vertex(2);
  const AngleThreshold third = AngleThreshold::third_pi();

  PrimitiveVector a = labeled.gen(0);
  PrimitiveVector b = labeled.gen(1);
  const PrimitiveVector c = labeled.gen(2);

  for (std::size_t n = 1; n <= iteration_cap; ++n) {
    const PrimitiveVector med = mediant(a, b);
    const RatPoint2 med_pt = point_of(med);
    const RationalLine split = line_through(med_pt, c0_pt);
    const int side_target = line_side(split, steering);
    if (side_target == 0) {
      throw Error(ErrorCode::OnSplitLine, "steering point on split line");
    }
    const int side_a = line_side(split, point_of(a));
    // The kept endpoint becomes A_{n+1}; the mediant is always B_{n+1}.
    if (side_target == side_a) {
      if (recorder) recorder->apply(med, b);  // b side dropped
    } else {
      if (recorder) recorder->apply(med, a);  // a side dropped
      a = b;
    }
    b = med;

    const RatPoint2 a_pt = point_of(a);
    const RatPoint2 b_pt = med_pt;
    if (line_side(avoid_line, b_pt) == 0) continue;
    if (a_pt == a0_pt || a_pt == b0_pt || b_pt == a0_pt || b_pt == b0_pt) continue;
    const RatVec2 u = a_pt - b_pt;
    const RatVec2 v = c0_pt - b_pt;
    if (!angle_exceeds(u, v, theta) || !angle_below(u, v, third)) continue;
    return Step1Result{RegularCone(a, b, c), cos2_of_angle(u, v), n};
  }
  throw Error(ErrorCode::IterationCap, "step1 exceeded iteration cap");
}

RegularCone step2(const RegularCone& step1_cone, const AngleThreshold& theta,
                  const RationalLine& avoid_line,
                  const std::vector<RatPoint2>& forbidden_vertices,
                  unsigned long search_cap, StarRecorder* recorder,
                  std::pair<unsigned long, unsigned long>* pq_out,
                  const RatTriangle* nesting_reference) {
  const PrimitiveVector& a = step1_cone.gen(0);
  const PrimitiveVector& b = step1_cone.gen(1);
  const PrimitiveVector& c = step1_cone.gen(2);
  const RatPoint2 b_pt = point_of(b);
  const AngleThreshold third = AngleThreshold::third_pi();
  const Rat zeta_cos2 = cos2_of_angle(point_of(a) - b_pt, point_of(c) - b_pt);

  const auto combo_point = [](const PrimitiveVector& u, const PrimitiveVector& v,
                              unsigned long k) {
    const Int kk(k);
    return RatPoint2{make_rat(u.p + kk * v.p, u.r + kk * v.r),
                     make_rat(u.q + kk * v.q, u.r + kk * v.r)};
  };

  const auto admissible = [&](unsigned long p, unsigned long q) -> bool {
    const RatPoint2 a_pt = combo_point(a, b, p);
    const RatPoint2 c_pt = combo_point(c, b, q);
    // Both new angles strictly above pi/3 (the kept angle at B stays zeta).
    if (!angle_exceeds(b_pt - a_pt, c_pt - a_pt, third)) return false;
    if (!angle_exceeds(a_pt - c_pt, b_pt - c_pt, third)) return false;
    const RatTriangle tri(a_pt, b_pt, c_pt);
    if (line_meets_triangle(avoid_line, tri)) return false;
    for (const RatPoint2& f : forbidden_vertices) {
      if (a_pt == f || b_pt == f || c_pt == f) return false;
    }
    return true;
  };

  for (unsigned long n = 1; n <= search_cap; ++n) {
    // Pairs with max(p,q) = n in lexicographic order:
    // (1,n), ..., (n-1,n), (n,1), ..., (n,n).
    unsigned long found_p = 0, found_q = 0;
    bool found = false;
    for (unsigned long p = 1; p < n && !found; ++p) {
      if (admissible(p, n)) { found_p = p; found_q = n; found = true; }
    }
    for (unsigned long q = 1; q <= n && !found; ++q) {
      if (admissible(n, q)) { found_p = n; found_q = q; found = true; }
    }
    if (!found) continue;

    const unsigned long p = found_p, q = found_q;
    const Int pk(p), qk(q);
    RegularCone out(PrimitiveVector(a.p + pk * b.p, a.q + pk * b.q, a.r + pk * b.r), b,
                    PrimitiveVector(c.p + qk * b.p, c.q + qk * b.q, c.r + qk * b.r));
    // zeta is preserved exactly at the B vertex, so together with the two
    // new angles above pi/3 every output angle exceeds theta.
    const RatVec2 ub = out.vertex(0) - out.vertex(1);
    const RatVec2 vb = out.vertex(2) - out.vertex(1);
    if (cos2_of_angle(ub, vb) != zeta_cos2 || !angle_exceeds(ub, vb, theta)) {
      throw Error(ErrorCode::InvariantViolation, "zeta not preserved by sigma_pq");
    }
    if (nesting_reference) {
      for (std::size_t i = 0; i < 3; ++i) {
        if (!strictly_inside(*nesting_reference, out.vertex(i))) {
          throw Error(ErrorCode::InvariantViolation, "stage vertex not strictly nested");
        }
      }
    }
    if (recorder) {
      PrimitiveVector run_a = a;
      for (unsigned long k = 0; k < p; ++k) {
        const PrimitiveVector med = mediant(run_a, b);
        recorder->apply(med, run_a);
        run_a = med;
      }
      PrimitiveVector run_c = c;
      for (unsigned long k = 0; k < q; ++k) {
        const PrimitiveVector med = mediant(run_c, b);
        recorder->apply(med, run_c);
        run_c = med;
      }
    }
    if (pq_out) *pq_out = {p, q};
    return out;
  }
  throw Error(ErrorCode::SearchCap, "step2 exceeded search cap");
}

ExpansionTrace construct_expansion(const RatTriangle& seed, const AngleThreshold& theta,
                                   std::size_t n_stages, const ExpansionCaps& caps) {
  const Rat quarter = make_rat(1, 4);
  const Rat half = make_rat(1, 2);
  if (!(theta.cos2 > quarter && theta.cos2 < half)) {
    throw Error(ErrorCode::InvalidTheta, "theta must satisfy pi/4 < theta < pi/3");
  }
  RegularCone current = cone_from_triangle(seed);
  ExpansionTrace trace{theta, seed, {}};
  trace.stages.reserve(n_stages);
  LineEnumerator lines;

  for (std::size_t k = 0; k < n_stages; ++k) {
    const RationalLine& lambda = lines.line(k);
    const RatTriangle nesting_ref = triangle_of_cone(current);
    StarRecorder recorder(current);

    RegularCone working = interiorize(current, &recorder);
    working = preamble(working, lambda, &recorder);
    const std::vector<RatPoint2> forbidden{working.vertex(0), working.vertex(1),
                                           working.vertex(2)};
    const QuadPoint2 steering = choose_steering_point(working, theta, {lambda});
    Step1Result s1 =
        step1(working, theta, lambda, steering, caps.step1_iteration_cap, &recorder);
    RegularCone stage = step2(s1.cone, theta, lambda, forbidden, caps.step2_search_cap,
                              &recorder, nullptr, &nesting_ref);
    if (!same_cone(recorder.replay(), stage)) {
      throw Error(ErrorCode::InvariantViolation, "replayed steps diverge from stage cone");
    }
    trace.stages.push_back(
        StageRecord{stage, recorder.take_steps(), k, s1.zeta_cos2, steering});
    current = stage;
  }
  return trace;
}

BaselineResult baseline_expansion(const RatTriangle& seed, const QuadPoint2& target,
                                  std::size_t n_steps) {
  if (!strictly_inside(seed, target)) {
    throw Error(ErrorCode::InvariantViolation, "baseline target not strictly inside seed");
  }
  RegularCone current = cone_from_triangle(seed);
  BaselineResult out;
  out.cones.reserve(n_steps);
  for (std::size_t n = 0; n < n_steps; ++n) {
    const RatTriangle tri = triangle_of_cone(current);
    static const std::array<ConeEdge, 3> edges{ConeEdge(1, 2), ConeEdge(1, 3),
                                               ConeEdge(2, 3)};
    std::size_t best = 0;
    Rat best_len = norm2(tri.vertex(1) - tri.vertex(0));
    const Rat len13 = norm2(tri.vertex(2) - tri.vertex(0));
    const Rat len23 = norm2(tri.vertex(2) - tri.vertex(1));
    if (len13 > best_len) { best = 1; best_len = len13; }
    if (len23 > best_len) { best = 2; best_len = len23; }

    const ConeEdge edge = edges[best];
    const PrimitiveVector med =
        mediant(current.gen(edge.i - 1), current.gen(edge.j - 1));
    auto [child, which] = child_containing_tracked(current, edge, target);
    out.steps.push_back(StarringStep{edge, which, med});
    out.min_angle_cos2.push_back(min_angle_cos2(triangle_of_cone(child)));
    out.cones.push_back(child);
    current = std::move(child);
  }
  return out;
}

}  // namespace farey2d
