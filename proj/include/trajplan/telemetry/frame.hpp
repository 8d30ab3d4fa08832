#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trajplan/adaptive/types.hpp"

namespace trajplan::telemetry {

struct CellUpdate {
    mcda::AlternativeId alternative = 0;
    std::string criterion;
    double value = 0.0;

    bool operator==(const CellUpdate&) const = default;
};

// One delta from the robot. A full snapshot is a frame touching every cell.
struct TelemetryFrame {
    std::string session_id;
    std::optional<Revision> revision_hint;
    Timestamp timestamp = 0;
    std::vector<CellUpdate> updates;

    bool operator==(const TelemetryFrame&) const = default;
};

/// Parses one wire line:
///   {"session":"s1","ts":1000,"updates":[{"alt":1,"crit":"ebl","value":0.03}]}
/// with an optional integer "rev" hint. Total over arbitrary bytes: anything
/// that is not a well-formed frame raises MalformedFrame, and a value that
/// is not finite (including the strings "NaN"/"Infinity") raises
/// NonFiniteValue.
TelemetryFrame parse_frame(std::string_view line);

/// As above, then resolves criterion ids (UnknownCriterion).
TelemetryFrame parse_frame(std::string_view line, const mcda::CriteriaSet& criteria);

void resolve_criteria(const TelemetryFrame& frame, const mcda::CriteriaSet& criteria);

/// Splits newline-delimited input, skipping blank lines.
std::vector<TelemetryFrame> parse_frames(std::string_view text);

Json to_json(const TelemetryFrame& frame);
TelemetryFrame frame_from_json(const Json& j);
std::string serialize_frame(const TelemetryFrame& frame);

}  // namespace trajplan::telemetry
