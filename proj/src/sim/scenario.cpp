#include "trajplan/sim/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace trajplan::sim {

using mcda::BoundKind;
using mcda::CriterionSpec;
using mcda::Direction;
using mcda::Threshold;

namespace {

[[noreturn]] void invalid(const std::string& what) {
    throw Error(ErrorCode::InvalidScenarioFile, "invalid scenario: " + what);
}

Scenario whipple() {
    Scenario s;
    s.name = "whipple";
    s.criteria = {
        {"clarity", "3D visual clarity (%)", Direction::Benefit, 10, std::nullopt},
        {"liver_risk", "liver removal risk level (%)", Direction::Cost, 10, std::nullopt},
        {"vessel", "blood vessel exposure or reconstruction (%)", Direction::Cost, 20, std::nullopt},
        {"cancer", "cancerous spread level (%)", Direction::Cost, 60, Threshold{BoundKind::Max, 0.5}},
    };
    s.noise = {
        {"clarity", {0.55, 0.95, 0.02, 0.0, 1.0}},
        {"liver_risk", {0.05, 0.40, 0.02, 0.0, 1.0}},
        {"vessel", {0.12, 0.38, 0.02, 0.0, 1.0}},
        {"cancer", {0.14, 0.38, 0.02, 0.0, 1.0}},
    };
    s.pinned = {{1, {{"cancer", 0.07}, {"vessel", 0.05}}},
                {12, {{"cancer", 0.41}, {"vessel", 0.409}}}};
    s.anchor = 1;
    return s;
}

Scenario hepatectomy() {
    Scenario s;
    s.name = "hepatectomy";
    // Directions for jejunal mucosa and bile duct diameter are assumptions.
    s.criteria = {
        {"jejunal", "Jejunal mucosa (%)", Direction::Benefit, 10, std::nullopt},
        {"bile_duct", "bile duct diameter (mm)", Direction::Cost, 10, std::nullopt},
        {"ebl", "estimated blood loss (EBL) (ml)", Direction::Cost, 40, Threshold{BoundKind::Max, 0.5}},
        {"vc", "3D visualization clarity (%)", Direction::Benefit, 40, Threshold{BoundKind::Min, 0.05}},
    };
    s.noise = {
        {"jejunal", {0.4, 0.8, 0.02, 0.0, 1.0}},
        {"bile_duct", {4.0, 9.0, 0.5, 2.0, 12.0}},
        {"ebl", {0.06, 0.22, 0.02, 0.0, 1.0}},
        {"vc", {0.30, 0.50, 0.02, 0.0, 1.0}},
    };
    s.pinned = {{1, {{"ebl", 0.03}, {"vc", 0.52}}},
                {11, {{"ebl", 0.43}, {"vc", 0.06}}},
                {12, {{"ebl", 0.30}, {"vc", 0.22}}}};
    s.anchor = 1;
    return s;
}

std::pair<double, double> pair_field(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != 2)
        invalid(std::string("'") + key + "' must be [lo, hi]");
    return {j.at(key)[0].get<double>(), j.at(key)[1].get<double>()};
}

}  // namespace

mcda::CriteriaSet Scenario::criteria_set() const { return mcda::CriteriaSet::from_priorities(criteria); }

std::vector<std::string> builtin_scenario_names() { return {"whipple", "hepatectomy"}; }

void validate(const Scenario& s) {
    if (s.name.empty()) invalid("name is empty");
    try {
        s.criteria_set();
    } catch (const Error& e) {
        invalid(e.what());
    }
    for (const auto& c : s.criteria) {
        auto it = s.noise.find(c.id);
        if (it == s.noise.end()) invalid("criterion '" + c.id + "' has no noise model");
        const auto& n = it->second;
        if (!(n.range_lo <= n.draw_lo && n.draw_lo <= n.draw_hi && n.draw_hi <= n.range_hi))
            invalid("criterion '" + c.id + "' draw range is not inside its plausible range");
        if (!(n.jitter >= 0.0) || !std::isfinite(n.jitter))
            invalid("criterion '" + c.id + "' jitter must be finite and >= 0");
    }
    if (s.alternative_count < 1) invalid("alternative count must be >= 1");
    if (s.alternative_count < s.pinned.size()) invalid("more pinned rows than alternatives");
    std::set<mcda::AlternativeId> seen;
    for (const auto& row : s.pinned) {
        if (row.id < 1 || static_cast<std::size_t>(row.id) > s.alternative_count)
            invalid("pinned alternative " + std::to_string(row.id) + " is out of range");
        if (!seen.insert(row.id).second)
            invalid("alternative " + std::to_string(row.id) + " pinned twice");
        for (const auto& [crit, value] : row.values) {
            auto it = s.noise.find(crit);
            if (it == s.noise.end()) invalid("pinned value for unknown criterion '" + crit + "'");
            if (!(value >= it->second.range_lo && value <= it->second.range_hi))
                invalid("pinned value " + std::to_string(value) + " for '" + crit +
                        "' is outside its plausible range");
        }
    }
    if (s.anchor && !seen.contains(*s.anchor)) invalid("anchor must be a pinned alternative");
    if (s.frame_interval_ms < 0) invalid("frame interval must be >= 0");
}

Json to_json(const Scenario& s) {
    Json j;
    j["name"] = s.name;
    j["alternatives"] = s.alternative_count;
    j["frame_interval_ms"] = s.frame_interval_ms;
    j["anchor"] = s.anchor ? Json(*s.anchor) : Json();
    Json crits = Json::array();
    for (const auto& c : s.criteria) {
        Json cj;
        cj["id"] = c.id;
        cj["name"] = c.name;
        cj["direction"] = mcda::to_string(c.direction);
        cj["priority"] = c.priority;
        if (c.threshold) cj["threshold"] = mcda::to_json(*c.threshold);
        const auto& n = s.noise.at(c.id);
        Json nj;
        nj["draw"] = {n.draw_lo, n.draw_hi};
        nj["jitter"] = n.jitter;
        nj["range"] = {n.range_lo, n.range_hi};
        cj["noise"] = std::move(nj);
        crits.push_back(std::move(cj));
    }
    j["criteria"] = std::move(crits);
    Json pinned = Json::array();
    for (const auto& row : s.pinned) {
        Json pj;
        pj["alt"] = row.id;
        Json values = Json::object();
        for (const auto& [crit, value] : row.values) values[crit] = value;
        pj["values"] = std::move(values);
        pinned.push_back(std::move(pj));
    }
    j["pinned"] = std::move(pinned);
    return j;
}

Scenario scenario_from_json(const Json& j) {
    Scenario s;
    try {
        s.name = j.at("name").get<std::string>();
        s.alternative_count = j.value("alternatives", std::size_t{12});
        s.frame_interval_ms = j.value("frame_interval_ms", Timestamp{500});
        if (j.contains("anchor") && !j.at("anchor").is_null())
            s.anchor = j.at("anchor").get<mcda::AlternativeId>();
        s.criteria = mcda::criterion_specs_from_json(j.at("criteria"));
        for (const auto& c : j.at("criteria")) {
            const auto& nj = c.at("noise");
            auto [draw_lo, draw_hi] = pair_field(nj, "draw");
            auto [range_lo, range_hi] = pair_field(nj, "range");
            s.noise[c.at("id").get<std::string>()] = {draw_lo, draw_hi, nj.value("jitter", 0.0),
                                                       range_lo, range_hi};
        }
        for (const auto& p : j.value("pinned", Json::array())) {
            PinnedRow row{p.at("alt").get<mcda::AlternativeId>(), {}};
            for (const auto& [crit, value] : p.at("values").items())
                row.values[crit] = value.get<double>();
            s.pinned.push_back(std::move(row));
        }
        if (!s.anchor && !s.pinned.empty()) s.anchor = s.pinned.front().id;
    } catch (const Error& e) {
        invalid(e.what());
    } catch (const Json::exception& e) {
        invalid(e.what());
    }
    validate(s);
    return s;
}

Scenario load_scenario(std::string_view name_or_path) {
    if (name_or_path == "whipple") return whipple();
    if (name_or_path == "hepatectomy") return hepatectomy();

    const std::filesystem::path path(name_or_path);
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec))
        throw Error(ErrorCode::UnknownScenario, "unknown scenario '" + std::string(name_or_path) + "'");
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    Json j;
    try {
        j = Json::parse(buf.str());
    } catch (const Json::exception& e) {
        invalid(e.what());
    }
    return scenario_from_json(j);
}

}  // namespace trajplan::sim
