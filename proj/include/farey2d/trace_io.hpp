#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "farey2d/metrics.hpp"

namespace farey2d {

// Trace files are JSON lines: one header object carrying the seed, theta
// and stage count, then one object per stage with fields k, cone, steps,
// avoided_line, zeta_cos2. All integers are decimal strings, all rationals
// "num/den" strings.
std::string trace_to_jsonl(const ExpansionTrace& trace);

struct ParsedStage {
  std::size_t k = 0;
  std::array<std::array<Int, 3>, 3> cone_rows;
  std::array<Int, 3> avoided_line;
  Rat zeta_cos2;
};

struct ParsedTrace {
  std::array<std::array<Rat, 2>, 3> seed_vertices;
  Rat theta_cos2;
  std::size_t declared_stages = 0;
  std::vector<ParsedStage> stages;
};

// Throws Error(ParseError) on malformed input.
ParsedTrace parse_trace_jsonl(const std::string& text);

struct VerifyResult {
  bool ok = true;
  std::string message;  // names the first violated invariant and its stage
};

// Re-validates every trace invariant from scratch: regularity, angle
// bounds, zeta consistency, per-stage and cumulative line avoidance,
// strict nesting, area decrease and denominator growth.
VerifyResult verify_parsed_trace(const ParsedTrace& trace);

// Stage cones of a parsed trace (throws if a cone fails validation).
std::vector<RegularCone> cones_of_parsed_trace(const ParsedTrace& trace);
RatTriangle seed_of_parsed_trace(const ParsedTrace& trace);

std::string report_to_csv(const ConvergenceReport& report);
std::string report_to_json(const ConvergenceReport& report);

std::string baseline_trace_jsonl(const RatTriangle& seed, const QuadPoint2& target,
                                 const BaselineResult& baseline);
std::string baseline_csv(const BaselineResult& baseline);

struct RenderOptions {
  unsigned width = 800;
  unsigned height = 800;
};

// Seed outline plus stage triangles on a stage-indexed color ramp.
// Coordinates stay exact until the final decimal formatting.
std::string render_svg(const RatTriangle& seed, const std::vector<RatTriangle>& stages,
                       const RenderOptions& options);

}  // namespace farey2d
