#include "trajplan/telemetry/frame.hpp"

#include <cmath>

namespace trajplan::telemetry {

namespace {

[[noreturn]] void malformed(const std::string& what) {
    throw Error(ErrorCode::MalformedFrame, "malformed frame: " + what);
}

bool is_non_finite_literal(const std::string& s) {
    return s == "NaN" || s == "nan" || s == "-NaN" || s == "Infinity" || s == "-Infinity" ||
           s == "inf" || s == "-inf" || s == "Inf" || s == "-Inf";
}

double read_value(const Json& v) {
    if (v.is_string()) {
        if (is_non_finite_literal(v.get<std::string>()))
            throw Error(ErrorCode::NonFiniteValue, "update value is not finite");
        malformed("update value must be a number");
    }
    if (!v.is_number()) malformed("update value must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw Error(ErrorCode::NonFiniteValue, "update value is not finite");
    return x;
}

}  // namespace

TelemetryFrame frame_from_json(const Json& j) {
    if (!j.is_object()) malformed("expected an object");
    if (!j.contains("session") || !j["session"].is_string()) malformed("'session' must be a string");
    if (!j.contains("ts") || !j["ts"].is_number_integer()) malformed("'ts' must be an integer");
    if (!j.contains("updates") || !j["updates"].is_array()) malformed("'updates' must be an array");

    TelemetryFrame frame;
    frame.session_id = j["session"].get<std::string>();
    frame.timestamp = j["ts"].get<Timestamp>();
    if (j.contains("rev") && !j["rev"].is_null()) {
        if (!j["rev"].is_number_unsigned()) malformed("'rev' must be a nonnegative integer");
        frame.revision_hint = j["rev"].get<Revision>();
    }
    for (const auto& u : j["updates"]) {
        if (!u.is_object()) malformed("update must be an object");
        if (!u.contains("alt") || !u["alt"].is_number_integer()) malformed("'alt' must be an integer");
        if (!u.contains("crit") || !u["crit"].is_string()) malformed("'crit' must be a string");
        if (!u.contains("value")) malformed("update is missing 'value'");
        const auto alt = u["alt"].get<mcda::AlternativeId>();
        if (alt < 1) malformed("'alt' must be >= 1");
        frame.updates.push_back({alt, u["crit"].get<std::string>(), read_value(u["value"])});
    }
    if (frame.updates.empty()) malformed("frame carries no updates");
    return frame;
}

TelemetryFrame parse_frame(std::string_view line) {
    Json j;
    try {
        j = Json::parse(line.begin(), line.end());
    } catch (const Json::exception& e) {
        malformed(e.what());
    }
    try {
        return frame_from_json(j);
    } catch (const Json::exception& e) {
        malformed(e.what());
    }
}

void resolve_criteria(const TelemetryFrame& frame, const mcda::CriteriaSet& criteria) {
    for (const auto& u : frame.updates)
        if (!criteria.index_of(u.criterion))
            throw Error(ErrorCode::UnknownCriterion, "unknown criterion '" + u.criterion + "'");
}

TelemetryFrame parse_frame(std::string_view line, const mcda::CriteriaSet& criteria) {
    auto frame = parse_frame(line);
    resolve_criteria(frame, criteria);
    return frame;
}

std::vector<TelemetryFrame> parse_frames(std::string_view text) {
    std::vector<TelemetryFrame> frames;
    std::size_t start = 0;
    while (start < text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(start, nl - start);
        if (line.find_first_not_of(" \t\r") != std::string_view::npos)
            frames.push_back(parse_frame(line));
        start = nl + 1;
    }
    return frames;
}

Json to_json(const TelemetryFrame& frame) {
    Json j;
    j["session"] = frame.session_id;
    j["ts"] = frame.timestamp;
    if (frame.revision_hint) j["rev"] = *frame.revision_hint;
    Json updates = Json::array();
    for (const auto& u : frame.updates) {
        Json x;
        x["alt"] = u.alternative;
        x["crit"] = u.criterion;
        x["value"] = u.value;
        updates.push_back(std::move(x));
    }
    j["updates"] = std::move(updates);
    return j;
}

std::string serialize_frame(const TelemetryFrame& frame) { return to_json(frame).dump(); }

}  // namespace trajplan::telemetry
