#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trajplan/mcda/json_io.hpp"
#include "trajplan/telemetry/frame.hpp"

namespace trajplan::sim {

// Per-criterion value model for unpinned cells. Final values are drawn
// uniformly from [draw_lo, draw_hi]; intermediate frames add uniform jitter
// of at most `jitter`, decaying to zero by the final frame, clamped to the
// plausible range [range_lo, range_hi].
struct NoiseModel {
    double draw_lo = 0.0;
    double draw_hi = 1.0;
    double jitter = 0.0;
    double range_lo = 0.0;
    double range_hi = 1.0;
};

struct PinnedRow {
    mcda::AlternativeId id = 0;
    std::map<std::string, double> values;  // criterion id -> exact value
};

struct Scenario {
    std::string name;
    std::vector<mcda::CriterionSpec> criteria;  // directions, priorities, default thresholds
    std::size_t alternative_count = 12;
    std::vector<PinnedRow> pinned;
    std::map<std::string, NoiseModel> noise;
    Timestamp frame_interval_ms = 500;
    // Pinned alternative the generator keeps on top (no row dominates it and
    // it ranks first on the final matrix).
    std::optional<mcda::AlternativeId> anchor;

    mcda::CriteriaSet criteria_set() const;
};

std::vector<std::string> builtin_scenario_names();

/// Built-in name ("whipple", "hepatectomy") or a path to a scenario file.
/// Throws UnknownScenario or InvalidScenarioFile.
Scenario load_scenario(std::string_view name_or_path);

Scenario scenario_from_json(const Json& j);
Json to_json(const Scenario& s);

/// Validates ranges, pinned rows and counts; throws InvalidScenarioFile.
void validate(const Scenario& s);

/// The matrix every stream for (scenario, seed) converges to.
mcda::DecisionMatrix final_matrix(const Scenario& scenario, std::uint64_t seed);

/// Deterministic stream for (scenario, seed): frame 0 is a full snapshot,
/// middle frames are jittered deltas, the last frame is an exact snapshot of
/// final_matrix(). With frame_count 1 the single frame is that snapshot.
std::vector<telemetry::TelemetryFrame> generate_stream(const Scenario& scenario,
                                                       std::uint64_t seed,
                                                       std::size_t frame_count,
                                                       const std::string& session_id,
                                                       Timestamp start_ts = 0);

}  // namespace trajplan::sim
