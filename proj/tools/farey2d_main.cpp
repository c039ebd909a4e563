#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "farey2d/trace_io.hpp"

namespace {

using namespace farey2d;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInternal = 3;
constexpr int kExitVerify = 4;

RatPoint2 parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw Error(ErrorCode::ParseError, "point '" + text + "' must be 'x,y'");
  }
  return RatPoint2{parse_rat(text.substr(0, comma)), parse_rat(text.substr(comma + 1))};
}

RatTriangle parse_triangle(const std::string& text) {
  std::istringstream in(text);
  std::vector<RatPoint2> pts;
  std::string token;
  while (in >> token) pts.push_back(parse_point(token));
  if (pts.size() != 3) {
    throw Error(ErrorCode::ParseError, "triangle needs exactly three 'x,y' points");
  }
  return RatTriangle(pts[0], pts[1], pts[2]);
}

QuadNum parse_quad(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw Error(ErrorCode::ParseError,
                "quadratic literal '" + text + "' must be 'a,b' for a + b*sqrt(5)");
  }
  return QuadNum(parse_rat(text.substr(0, comma)), parse_rat(text.substr(comma + 1)));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::InvariantViolation, "cannot write '" + path + "'");
  }
  out << content;
  if (!out) {
    throw Error(ErrorCode::InvariantViolation, "short write to '" + path + "'");
  }
}

ExpansionCaps caps_from_env() {
  ExpansionCaps caps;
  if (const char* env = std::getenv("FAREY2D_ITER_CAP")) {
    const long value = std::atol(env);
    if (value > 0) caps.step1_iteration_cap = static_cast<std::size_t>(value);
  }
  return caps;
}

int cmd_expand(const std::string& triangle_text, const std::string& theta_text,
               long stages, const std::string& out_path) {
  if (stages < 0) {
    std::cerr << "error: --stages must be >= 0\n";
    return kExitConfig;
  }
  AngleThreshold theta = AngleThreshold::third_pi();
  std::optional<RatTriangle> seed;
  try {
    seed = parse_triangle(triangle_text);
    cone_from_triangle(*seed);  // the seed must be a regular triangle
    const Rat theta_cos2 = parse_rat(theta_text);
    if (!(theta_cos2 > make_rat(1, 4) && theta_cos2 < make_rat(1, 2))) {
      throw Error(ErrorCode::InvalidTheta,
                  "--theta-cos2 must lie strictly between 1/4 and 1/2");
    }
    theta = AngleThreshold::from_cos2(theta_cos2);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  const ExpansionTrace trace =
      construct_expansion(*seed, theta, static_cast<std::size_t>(stages), caps_from_env());
  write_file(out_path, trace_to_jsonl(trace));

  std::cout << "stage  steps  max_den_digits  area~          min_angle_cos2~\n";
  for (const StageRecord& s : trace.stages) {
    const RatTriangle tri = triangle_of_cone(s.cone);
    Int max_den = s.cone.gen(0).r;
    for (std::size_t i = 1; i < 3; ++i) max_den = std::max(max_den, s.cone.gen(i).r);
    std::cout << s.avoided_line_index << "      " << s.steps.size() << "      "
              << max_den.get_str().size() << "      "
              << rat_to_decimal(area_regular(s.cone), 10) << "   "
              << rat_to_decimal(min_angle_cos2(tri), 6) << "\n";
  }
  std::cout << "wrote " << trace.stages.size() << " stages to " << out_path << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& trace_path, long depth_flag,
               const std::string& csv_path, const std::string& json_path) {
  ParsedTrace parsed;
  try {
    parsed = parse_trace_jsonl(read_file(trace_path));
  } catch (const Error& e) {
    std::cerr << "verify failed: " << e.what() << "\n";
    return kExitVerify;
  }
  const VerifyResult result = verify_parsed_trace(parsed);
  if (!result.ok) {
    std::cerr << "verify failed: " << result.message << "\n";
    return kExitVerify;
  }
  ConvergenceReport report;
  if (!parsed.stages.empty()) {
    std::size_t depth = parsed.stages.size() - 1;
    if (depth_flag >= 0) depth = static_cast<std::size_t>(depth_flag);
    if (depth >= parsed.stages.size()) {
      std::cerr << "error: --enclosure-depth must name an existing stage\n";
      return kExitConfig;
    }
    if (depth > 0) {
      try {
        report = convergence_report(cones_of_parsed_trace(parsed), depth);
      } catch (const Error& e) {
        std::cerr << "verify failed: " << e.what() << "\n";
        return kExitVerify;
      }
    }
  }
  if (!csv_path.empty()) write_file(csv_path, report_to_csv(report));
  if (!json_path.empty()) write_file(json_path, report_to_json(report));
  std::cout << "ok: " << parsed.stages.size() << " stages verified\n";
  return kExitOk;
}

int cmd_render(const std::string& trace_path, const std::string& out_path,
               unsigned width, unsigned height) {
  ParsedTrace parsed;
  try {
    parsed = parse_trace_jsonl(read_file(trace_path));
  } catch (const Error& e) {
    std::cerr << "render failed: " << e.what() << "\n";
    return kExitVerify;
  }
  const RatTriangle seed = seed_of_parsed_trace(parsed);
  std::vector<RatTriangle> stage_triangles;
  for (const RegularCone& c : cones_of_parsed_trace(parsed)) {
    stage_triangles.push_back(triangle_of_cone(c));
  }
  // Nesting must be visible: check with the exact predicate before any
  // coordinate is rounded.
  for (std::size_t k = 0; k < stage_triangles.size(); ++k) {
    const RatTriangle& outer = k == 0 ? seed : stage_triangles[k - 1];
    for (std::size_t i = 0; i < 3; ++i) {
      if (!strictly_inside(outer, stage_triangles[k].vertex(i))) {
        std::cerr << "render failed: stage " << k << " not nested\n";
        return kExitVerify;
      }
    }
  }
  write_file(out_path, render_svg(seed, stage_triangles, RenderOptions{width, height}));
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_baseline(const std::string& triangle_text, const std::string& target_x,
                 const std::string& target_y, long steps, const std::string& out_path,
                 const std::string& csv_path) {
  if (steps < 0) {
    std::cerr << "error: --steps must be >= 0\n";
    return kExitConfig;
  }
  std::optional<RatTriangle> seed;
  std::optional<QuadPoint2> target;
  try {
    seed = parse_triangle(triangle_text);
    cone_from_triangle(*seed);
    target = QuadPoint2{parse_quad(target_x), parse_quad(target_y)};
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  const BaselineResult result =
      baseline_expansion(*seed, *target, static_cast<std::size_t>(steps));
  write_file(out_path, baseline_trace_jsonl(*seed, *target, result));
  if (!csv_path.empty()) write_file(csv_path, baseline_csv(result));
  std::cout << "wrote " << result.cones.size() << " baseline steps to " << out_path
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"farey2d: exact two-dimensional continued fraction expansions"};
  app.require_subcommand(1);

  std::string triangle = "0/1,0/1 1/1,0/1 0/1,1/1";
  std::string theta_cos2 = "13/36";
  long stages = 10;
  std::string out_path;

  auto* expand = app.add_subcommand("expand", "construct an expansion trace");
  expand->add_option("--triangle", triangle, "seed triangle as 'x,y x,y x,y'");
  expand->add_option("--theta-cos2", theta_cos2, "cos^2 of the angle threshold");
  expand->add_option("--stages", stages, "number of stages");
  expand->add_option("--out", out_path, "trace output path (JSONL)")->required();

  std::string trace_path;
  long depth_flag = -1;
  std::string csv_path;
  std::string json_path;
  auto* verify = app.add_subcommand("verify", "re-validate a trace and report");
  verify->add_option("--trace", trace_path, "trace path")->required();
  verify->add_option("--enclosure-depth", depth_flag,
                     "stage whose triangle encloses the limit point");
  verify->add_option("--report-csv", csv_path, "convergence report CSV path");
  verify->add_option("--report-json", json_path, "convergence report JSON path");

  std::string svg_path;
  unsigned width = 800;
  unsigned height = 800;
  auto* render = app.add_subcommand("render", "render nested stage triangles as SVG");
  render->add_option("--trace", trace_path, "trace path")->required();
  render->add_option("--out", svg_path, "SVG output path")->required();
  render->add_option("--width", width, "canvas width");
  render->add_option("--height", height, "canvas height");

  std::string target_x = "-1/4,1/4";
  std::string target_y = "1/4,0/1";
  long steps = 50;
  auto* baseline = app.add_subcommand("baseline", "longest-edge contrast expansion");
  baseline->add_option("--triangle", triangle, "seed triangle as 'x,y x,y x,y'");
  baseline->add_option("--target-x", target_x, "target x as 'a,b' meaning a + b*sqrt(5)");
  baseline->add_option("--target-y", target_y, "target y as 'a,b' meaning a + b*sqrt(5)");
  baseline->add_option("--steps", steps, "number of starrings");
  baseline->add_option("--out", out_path, "trace output path (JSONL)")->required();
  baseline->add_option("--csv", csv_path, "min-angle series CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (expand->parsed()) return cmd_expand(triangle, theta_cos2, stages, out_path);
    if (verify->parsed()) return cmd_verify(trace_path, depth_flag, csv_path, json_path);
    if (render->parsed()) return cmd_render(trace_path, svg_path, width, height);
    if (baseline->parsed()) {
      return cmd_baseline(triangle, target_x, target_y, steps, out_path, csv_path);
    }
  } catch (const farey2d::Error& e) {
    if (e.code() == farey2d::ErrorCode::ParseError ||
        e.code() == farey2d::ErrorCode::InvalidTheta) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitConfig;
    }
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitConfig;
}
