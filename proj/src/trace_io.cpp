#include "farey2d/trace_io.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace farey2d {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json vector_json(const PrimitiveVector& v) {
  return ordered_json::array({v.p.get_str(), v.q.get_str(), v.r.get_str()});
}

ordered_json cone_json(const RegularCone& c) {
  ordered_json j;
  j["v"] = ordered_json::array({vector_json(c.gen(0)), vector_json(c.gen(1)),
                                vector_json(c.gen(2))});
  return j;
}

ordered_json triangle_json(const RatTriangle& t) {
  ordered_json j;
  j["v"] = ordered_json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    const RatPoint2& p = t.vertex(i);
    j["v"].push_back(ordered_json::array({rat_to_string(p.x), rat_to_string(p.y)}));
  }
  return j;
}

ordered_json quad_json(const QuadNum& x) {
  ordered_json j;
  j["a"] = rat_to_string(x.a);
  j["b"] = rat_to_string(x.b);
  return j;
}

ordered_json step_json(const StarringStep& s) {
  ordered_json j;
  j["edge"] = ordered_json::array({s.edge.i, s.edge.j});
  j["child"] = s.kept_child;
  j["mediant"] = vector_json(s.mediant);
  return j;
}

Int parse_int(const nlohmann::json& j, const char* what) {
  if (!j.is_string()) {
    throw Error(ErrorCode::ParseError, std::string(what) + " must be a decimal string");
  }
  try {
    return Int(j.get<std::string>(), 10);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::ParseError, std::string(what) + " is not an integer");
  }
}

Rat parse_rat_field(const nlohmann::json& j, const char* what) {
  if (!j.is_string()) {
    throw Error(ErrorCode::ParseError, std::string(what) + " must be a rational string");
  }
  return parse_rat(j.get<std::string>());
}

}  // namespace

std::string trace_to_jsonl(const ExpansionTrace& trace) {
  std::ostringstream out;
  ordered_json header;
  header["seed"] = triangle_json(trace.seed);
  header["theta_cos2"] = rat_to_string(trace.theta.cos2);
  header["stages"] = trace.stages.size();
  out << header.dump() << "\n";
  for (const StageRecord& stage : trace.stages) {
    ordered_json j;
    j["k"] = stage.avoided_line_index;
    j["cone"] = cone_json(stage.cone);
    j["steps"] = ordered_json::array();
    for (const StarringStep& s : stage.steps) j["steps"].push_back(step_json(s));
    const RationalLine lambda = enumerate_lines(stage.avoided_line_index);
    j["avoided_line"] =
        ordered_json::array({lambda.a.get_str(), lambda.b.get_str(), lambda.c.get_str()});
    j["zeta_cos2"] = rat_to_string(stage.zeta_cos2);
    out << j.dump() << "\n";
  }
  return out.str();
}

ParsedTrace parse_trace_jsonl(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) {
    throw Error(ErrorCode::ParseError, "empty trace file");
  }
  ParsedTrace parsed;
  try {
    const auto header = nlohmann::json::parse(lines[0]);
    const auto& seed = header.at("seed").at("v");
    if (!seed.is_array() || seed.size() != 3) {
      throw Error(ErrorCode::ParseError, "seed must have three vertices");
    }
    for (std::size_t i = 0; i < 3; ++i) {
      parsed.seed_vertices[i][0] = parse_rat_field(seed[i].at(0), "seed x");
      parsed.seed_vertices[i][1] = parse_rat_field(seed[i].at(1), "seed y");
    }
    parsed.theta_cos2 = parse_rat_field(header.at("theta_cos2"), "theta_cos2");
    parsed.declared_stages = header.at("stages").get<std::size_t>();
    for (std::size_t s = 1; s < lines.size(); ++s) {
      const auto j = nlohmann::json::parse(lines[s]);
      ParsedStage stage;
      stage.k = j.at("k").get<std::size_t>();
      const auto& rows = j.at("cone").at("v");
      if (!rows.is_array() || rows.size() != 3) {
        throw Error(ErrorCode::ParseError, "cone must have three generators");
      }
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t c = 0; c < 3; ++c) {
          stage.cone_rows[i][c] = parse_int(rows[i].at(c), "cone entry");
        }
      }
      const auto& lam = j.at("avoided_line");
      for (std::size_t c = 0; c < 3; ++c) {
        stage.avoided_line[c] = parse_int(lam.at(c), "avoided_line entry");
      }
      stage.zeta_cos2 = parse_rat_field(j.at("zeta_cos2"), "zeta_cos2");
      parsed.stages.push_back(std::move(stage));
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return parsed;
}

RatTriangle seed_of_parsed_trace(const ParsedTrace& trace) {
  return RatTriangle(RatPoint2{trace.seed_vertices[0][0], trace.seed_vertices[0][1]},
                     RatPoint2{trace.seed_vertices[1][0], trace.seed_vertices[1][1]},
                     RatPoint2{trace.seed_vertices[2][0], trace.seed_vertices[2][1]});
}

std::vector<RegularCone> cones_of_parsed_trace(const ParsedTrace& trace) {
  std::vector<RegularCone> cones;
  cones.reserve(trace.stages.size());
  for (const ParsedStage& s : trace.stages) {
    cones.emplace_back(PrimitiveVector(s.cone_rows[0][0], s.cone_rows[0][1], s.cone_rows[0][2]),
                       PrimitiveVector(s.cone_rows[1][0], s.cone_rows[1][1], s.cone_rows[1][2]),
                       PrimitiveVector(s.cone_rows[2][0], s.cone_rows[2][1], s.cone_rows[2][2]));
  }
  return cones;
}

VerifyResult verify_parsed_trace(const ParsedTrace& trace) {
  const auto fail = [](std::string msg) { return VerifyResult{false, std::move(msg)}; };

  if (trace.declared_stages != trace.stages.size()) {
    return fail("header declares " + std::to_string(trace.declared_stages) +
                " stages but file has " + std::to_string(trace.stages.size()));
  }
  const Rat quarter = make_rat(1, 4);
  const Rat half = make_rat(1, 2);
  if (!(trace.theta_cos2 > quarter && trace.theta_cos2 < half)) {
    return fail("theta_cos2 outside (1/4, 1/2)");
  }
  const AngleThreshold theta = AngleThreshold::from_cos2(trace.theta_cos2);
  const AngleThreshold third = AngleThreshold::third_pi();

  RatTriangle seed = [&] { return seed_of_parsed_trace(trace); }();
  RegularCone seed_cone = cone_from_triangle(seed);

  LineEnumerator lines;
  std::vector<RegularCone> cones;
  std::vector<RatTriangle> triangles;
  for (std::size_t k = 0; k < trace.stages.size(); ++k) {
    const ParsedStage& s = trace.stages[k];
    const std::string at = " at stage " + std::to_string(k);
    if (s.k != k) return fail("stage numbering broken" + at);

    try {
      cones.emplace_back(
          PrimitiveVector(s.cone_rows[0][0], s.cone_rows[0][1], s.cone_rows[0][2]),
          PrimitiveVector(s.cone_rows[1][0], s.cone_rows[1][1], s.cone_rows[1][2]),
          PrimitiveVector(s.cone_rows[2][0], s.cone_rows[2][1], s.cone_rows[2][2]));
    } catch (const Error& e) {
      return fail(std::string("regularity violated (") + e.what() + ")" + at);
    }
    const RegularCone& cone = cones.back();
    triangles.push_back(triangle_of_cone(cone));
    const RatTriangle& tri = triangles.back();

    const RationalLine& lambda = lines.line(k);
    if (!(lambda.a == s.avoided_line[0] && lambda.b == s.avoided_line[1] &&
          lambda.c == s.avoided_line[2])) {
      return fail("avoided line differs from enumeration" + at);
    }
    for (std::size_t i = 0; i < 3; ++i) {
      if (!angle_gt(tri, i, theta)) return fail("angle bound violated" + at);
    }
    const RatVec2 u = tri.vertex(0) - tri.vertex(1);
    const RatVec2 v = tri.vertex(2) - tri.vertex(1);
    if (cos2_of_angle(u, v) != s.zeta_cos2 || !angle_exceeds(u, v, theta) ||
        !angle_below(u, v, third)) {
      return fail("zeta angle inconsistent" + at);
    }
    for (std::size_t j = 0; j <= k; ++j) {
      if (line_meets_triangle(lines.line(j), tri)) {
        return fail("avoidance of line " + std::to_string(j) + " violated" + at);
      }
    }
    const RatTriangle& outer = k == 0 ? seed : triangles[k - 1];
    for (std::size_t i = 0; i < 3; ++i) {
      if (!strictly_inside(outer, tri.vertex(i))) {
        return fail("strict nesting violated" + at);
      }
    }
    const Rat prev_area = k == 0 ? area_regular(seed_cone) : area_regular(cones[k - 1]);
    if (!(area_regular(cone) < prev_area)) {
      return fail("area not strictly decreasing" + at);
    }
    const auto max_den = [](const RegularCone& c) {
      return std::max({c.gen(0).r, c.gen(1).r, c.gen(2).r});
    };
    const Int prev_max = k == 0 ? max_den(seed_cone) : max_den(cones[k - 1]);
    if (!(max_den(cone) > prev_max)) {
      return fail("max denominator not strictly increasing" + at);
    }
  }
  return VerifyResult{};
}

std::string report_to_csv(const ConvergenceReport& report) {
  std::ostringstream out;
  out << "k,d1,d2,d3,area,diam2,ratio4,min_angle_cos2,distUB2_hi,bound2\n";
  for (const ConvergenceRow& r : report.rows) {
    out << r.k << ',' << r.d1.get_str() << ',' << r.d2.get_str() << ',' << r.d3.get_str()
        << ',' << rat_to_string(r.area) << ',' << rat_to_string(r.diam2) << ','
        << rat_to_string(r.ratio4) << ',' << rat_to_string(r.min_angle_cos2) << ','
        << rat_to_string(r.dist2_bound.hi) << ',' << rat_to_string(r.bound2) << "\n";
  }
  return out.str();
}

std::string report_to_json(const ConvergenceReport& report) {
  ordered_json rows = ordered_json::array();
  for (const ConvergenceRow& r : report.rows) {
    ordered_json j;
    j["k"] = r.k;
    j["d1"] = r.d1.get_str();
    j["d2"] = r.d2.get_str();
    j["d3"] = r.d3.get_str();
    j["area"] = rat_to_string(r.area);
    j["diam2"] = rat_to_string(r.diam2);
    j["ratio4"] = rat_to_string(r.ratio4);
    j["min_angle_cos2"] = rat_to_string(r.min_angle_cos2);
    j["distUB2"] = ordered_json::array(
        {rat_to_string(r.dist2_bound.lo), rat_to_string(r.dist2_bound.hi)});
    j["bound2"] = rat_to_string(r.bound2);
    rows.push_back(std::move(j));
  }
  ordered_json root;
  root["rows"] = std::move(rows);
  return root.dump() + "\n";
}

std::string baseline_trace_jsonl(const RatTriangle& seed, const QuadPoint2& target,
                                 const BaselineResult& baseline) {
  std::ostringstream out;
  ordered_json header;
  header["seed"] = triangle_json(seed);
  header["target"] = ordered_json{{"x", quad_json(target.x)}, {"y", quad_json(target.y)}};
  header["steps"] = baseline.cones.size();
  out << header.dump() << "\n";
  for (std::size_t i = 0; i < baseline.cones.size(); ++i) {
    ordered_json j;
    j["k"] = i;
    j["cone"] = cone_json(baseline.cones[i]);
    j["steps"] = ordered_json::array({step_json(baseline.steps[i])});
    j["min_angle_cos2"] = rat_to_string(baseline.min_angle_cos2[i]);
    out << j.dump() << "\n";
  }
  return out.str();
}

std::string baseline_csv(const BaselineResult& baseline) {
  std::ostringstream out;
  out << "k,min_angle_cos2\n";
  for (std::size_t i = 0; i < baseline.min_angle_cos2.size(); ++i) {
    out << i << ',' << rat_to_string(baseline.min_angle_cos2[i]) << "\n";
  }
  return out.str();
}

std::string render_svg(const RatTriangle& seed, const std::vector<RatTriangle>& stages,
                       const RenderOptions& options) {
  Rat xmin = seed.a.x, xmax = seed.a.x, ymin = seed.a.y, ymax = seed.a.y;
  for (std::size_t i = 0; i < 3; ++i) {
    const RatPoint2& p = seed.vertex(i);
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const Rat pad_x = (xmax - xmin) / 20;
  const Rat pad_y = (ymax - ymin) / 20;
  xmin -= pad_x;
  xmax += pad_x;
  ymin -= pad_y;
  ymax += pad_y;
  const Rat span_x = xmax - xmin;
  const Rat span_y = ymax - ymin;

  const auto pixel = [&](const RatPoint2& p) {
    const Rat px = (p.x - xmin) / span_x * options.width;
    const Rat py = Rat(options.height) - (p.y - ymin) / span_y * options.height;
    return rat_to_decimal(px, 3) + "," + rat_to_decimal(py, 3);
  };
  const auto polygon = [&](const RatTriangle& t, const std::string& style) {
    return "  <polygon points=\"" + pixel(t.a) + " " + pixel(t.b) + " " + pixel(t.c) +
           "\" " + style + "/>\n";
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 "
      << options.width << " " << options.height << "\">\n";
  out << polygon(seed, "fill=\"none\" stroke=\"#202020\" stroke-width=\"1.5\"");
  for (std::size_t k = 0; k < stages.size(); ++k) {
    const unsigned hue = static_cast<unsigned>((47 * k) % 360);
    const std::string style = "fill=\"hsl(" + std::to_string(hue) +
                              ",70%,55%)\" fill-opacity=\"0.35\" stroke=\"hsl(" +
                              std::to_string(hue) + ",70%,35%)\" stroke-width=\"0.8\"";
    out << polygon(stages[k], style);
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace farey2d
