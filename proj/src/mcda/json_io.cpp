#include "trajplan/mcda/json_io.hpp"

namespace trajplan::mcda {

namespace {

[[noreturn]] void bad_criteria(const std::string& what) {
    throw Error(ErrorCode::InvalidCriteria, what);
}

const Json& criteria_array(const Json& j) {
    if (j.is_object() && j.contains("criteria")) return j.at("criteria");
    return j;
}

double number_field(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
        bad_criteria(std::string("missing or non-numeric field '") + key + "'");
    return j.at(key).get<double>();
}

std::string string_field(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string())
        bad_criteria(std::string("missing or non-string field '") + key + "'");
    return j.at(key).get<std::string>();
}

std::optional<Threshold> optional_threshold(const Json& j) {
    if (!j.contains("threshold") || j.at("threshold").is_null()) return std::nullopt;
    return threshold_from_json(j.at("threshold"));
}

}  // namespace

Json to_json(const Threshold& t) {
    Json j;
    j["kind"] = to_string(t.kind);
    j["value"] = t.value;
    return j;
}

Json to_json(const Criterion& c) {
    Json j;
    j["id"] = c.id;
    j["name"] = c.name;
    j["direction"] = to_string(c.direction);
    j["weight"] = c.weight;
    if (c.threshold) j["threshold"] = to_json(*c.threshold);
    return j;
}

Json to_json(const CriteriaSet& set) {
    Json arr = Json::array();
    for (const auto& c : set.criteria()) arr.push_back(to_json(c));
    return arr;
}

Json to_json(const Violation& v) {
    Json j;
    j["criterion"] = v.criterion_id;
    j["measured"] = v.measured;
    j["kind"] = to_string(v.threshold.kind);
    j["threshold"] = v.threshold.value;
    return j;
}

Json to_json(const ViolationReport& r) {
    Json j;
    j["alternative"] = r.alternative;
    Json vs = Json::array();
    for (const auto& v : r.violations) vs.push_back(to_json(v));
    j["violations"] = std::move(vs);
    return j;
}

Json to_json(const std::vector<ViolationReport>& reports) {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return arr;
}

Json to_json(const Ranking& r) {
    Json j;
    Json alts = Json::array();
    for (std::size_t i = 0; i < r.ids.size(); ++i) {
        Json a;
        a["id"] = r.ids[i];
        a["score"] = r.scores[i];
        alts.push_back(std::move(a));
    }
    j["alternatives"] = std::move(alts);
    j["order"] = r.order;
    j["best_id"] = r.best_id;
    j["degenerate"] = r.degenerate;
    j["zero_columns"] = r.zero_columns;
    j["excluded"] = to_json(r.excluded);
    return j;
}

Threshold threshold_from_json(const Json& j) {
    if (!j.is_object()) bad_criteria("threshold must be an object {kind, value}");
    return {parse_bound_kind(string_field(j, "kind")), number_field(j, "value")};
}

CriteriaSet criteria_from_json(const Json& j) {
    const Json& arr = criteria_array(j);
    if (!arr.is_array()) bad_criteria("criteria must be an array");
    std::vector<Criterion> out;
    for (const auto& c : arr) {
        if (!c.is_object()) bad_criteria("criterion must be an object");
        out.push_back({string_field(c, "id"), c.value("name", std::string()),
                       parse_direction(string_field(c, "direction")), number_field(c, "weight"),
                       optional_threshold(c)});
    }
    return CriteriaSet(std::move(out));
}

std::vector<CriterionSpec> criterion_specs_from_json(const Json& j) {
    const Json& arr = criteria_array(j);
    if (!arr.is_array()) bad_criteria("criteria must be an array");
    std::vector<CriterionSpec> specs;
    for (const auto& c : arr) {
        if (!c.is_object()) bad_criteria("criterion must be an object");
        const char* key = c.contains("priority") ? "priority" : "weight";
        specs.push_back({string_field(c, "id"), c.value("name", std::string()),
                         parse_direction(string_field(c, "direction")), number_field(c, key),
                         optional_threshold(c)});
    }
    return specs;
}

CriteriaSet criteria_from_priorities_json(const Json& j, std::vector<std::string>* warnings) {
    auto specs = criterion_specs_from_json(j);
    return CriteriaSet::from_priorities(specs, warnings);
}

ViolationReport violation_report_from_json(const Json& j) {
    ViolationReport r{j.at("alternative").get<AlternativeId>(), {}};
    for (const auto& v : j.at("violations")) {
        r.violations.push_back({v.at("criterion").get<std::string>(), v.at("measured").get<double>(),
                                {parse_bound_kind(v.at("kind").get<std::string>()),
                                 v.at("threshold").get<double>()}});
    }
    return r;
}

std::vector<ViolationReport> violation_reports_from_json(const Json& j) {
    std::vector<ViolationReport> out;
    for (const auto& r : j) out.push_back(violation_report_from_json(r));
    return out;
}

Ranking ranking_from_json(const Json& j) {
    Ranking r;
    for (const auto& a : j.at("alternatives")) {
        r.ids.push_back(a.at("id").get<AlternativeId>());
        r.scores.push_back(a.at("score").get<double>());
    }
    r.order = j.at("order").get<std::vector<AlternativeId>>();
    r.best_id = j.at("best_id").get<AlternativeId>();
    r.degenerate = j.at("degenerate").get<bool>();
    r.zero_columns = j.at("zero_columns").get<std::vector<std::string>>();
    r.excluded = violation_reports_from_json(j.at("excluded"));
    return r;
}

}  // namespace trajplan::mcda
