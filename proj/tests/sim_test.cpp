#include <algorithm>

#include "doctest.h"
#include "support/generators.hpp"
#include "support/sessions.hpp"
#include "support/temp_dir.hpp"
#include "trajplan/sim/scenario.hpp"

using namespace trajplan;
using namespace trajplan::sim;
using trajplan::testing::TempDir;

namespace {

std::string serialize(const std::vector<telemetry::TelemetryFrame>& frames) {
    std::string out;
    for (const auto& f : frames) out += telemetry::serialize_frame(f) + "\n";
    return out;
}

bool better_or_equal(mcda::Direction d, double a, double b) {
    return d == mcda::Direction::Benefit ? a >= b : a <= b;
}

bool dominates(const mcda::CriteriaSet& c, const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t j = 0; j < c.size(); ++j)
        if (!better_or_equal(c[j].direction, a[j], b[j])) return false;
    return a != b;
}

double value(const mcda::DecisionMatrix& m, mcda::AlternativeId id, const std::string& crit) {
    return m.find(id)->values[*m.criteria().index_of(crit)];
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::InvalidRequest;
}

}  // namespace

TEST_CASE("built-in scenarios") {
    auto whipple = load_scenario("whipple");
    CHECK(whipple.criteria_set().weights() == std::vector<double>{0.1, 0.1, 0.2, 0.6});
    CHECK(whipple.alternative_count == 12);
    auto hep = load_scenario("hepatectomy");
    CHECK(hep.criteria_set().weights() == std::vector<double>{0.1, 0.1, 0.4, 0.4});
    CHECK(hep.alternative_count == 12);

    auto m = final_matrix(hep, 1);
    CHECK(value(m, 1, "ebl") == 0.03);
    CHECK(value(m, 1, "vc") == 0.52);
    CHECK(value(m, 11, "ebl") == 0.43);
    CHECK(value(m, 11, "vc") == 0.06);
    CHECK(value(m, 12, "ebl") == 0.30);
    CHECK(value(m, 12, "vc") == 0.22);

    auto w = final_matrix(whipple, 1);
    CHECK(value(w, 1, "cancer") == 0.07);
    CHECK(value(w, 1, "vessel") == 0.05);
    CHECK(value(w, 12, "cancer") == 0.41);
    CHECK(value(w, 12, "vessel") == 0.409);

    CHECK(code_of([] { load_scenario("nope"); }) == ErrorCode::UnknownScenario);
    auto names = builtin_scenario_names();
    std::sort(names.begin(), names.end());
    CHECK(names == std::vector<std::string>{"hepatectomy", "whipple"});
}

TEST_CASE("scenario files round-trip and are validated") {
    TempDir dir;
    const auto hep = load_scenario("hepatectomy");
    testing::spit(dir / "h.json", to_json(hep).dump(2));
    auto loaded = load_scenario((dir / "h.json").string());
    CHECK(to_json(loaded).dump() == to_json(hep).dump());
    CHECK(final_matrix(loaded, 5) == final_matrix(hep, 5));

    testing::spit(dir / "bad.json", "{not json");
    CHECK(code_of([&] { load_scenario((dir / "bad.json").string()); }) ==
          ErrorCode::InvalidScenarioFile);

    auto j = to_json(hep);
    j["alternatives"] = 2;
    CHECK(code_of([&] { validate(scenario_from_json(j)); }) == ErrorCode::InvalidScenarioFile);
    j = to_json(hep);
    j["pinned"][0]["values"]["ebl"] = 1.5;
    CHECK(code_of([&] { validate(scenario_from_json(j)); }) == ErrorCode::InvalidScenarioFile);
    j = to_json(hep);
    j["pinned"][0]["values"]["pulse"] = 0.5;
    CHECK(code_of([&] { validate(scenario_from_json(j)); }) == ErrorCode::InvalidScenarioFile);
}

TEST_CASE("streams are deterministic per seed") {
    for (const auto& name : builtin_scenario_names()) {
        const auto s = load_scenario(name);
        CHECK(serialize(generate_stream(s, 42, 20, "x")) == serialize(generate_stream(s, 42, 20, "x")));
        CHECK(serialize(generate_stream(s, 42, 20, "x")) != serialize(generate_stream(s, 43, 20, "x")));
        CHECK(final_matrix(s, 9) == final_matrix(s, 9));
    }
}

TEST_CASE("a single frame is the full final snapshot") {
    const auto s = load_scenario("hepatectomy");
    auto frames = generate_stream(s, 42, 1, "x");
    REQUIRE(frames.size() == 1);
    const auto m = final_matrix(s, 42);
    CHECK(frames[0].updates.size() == m.alternatives().size() * m.criteria().size());
    for (const auto& u : frames[0].updates) CHECK(u.value == value(m, u.alternative, u.criterion));
}

TEST_CASE("streams converge to the final matrix") {
    for (const auto& name : builtin_scenario_names()) {
        const auto s = load_scenario(name);
        for (std::uint64_t seed : {1u, 42u, 777u}) {
            auto frames = generate_stream(s, seed, 20, "x", 1000);
            REQUIRE(frames.size() == 20);
            CHECK(frames.front().timestamp == 1000);
            CHECK(frames.back().timestamp == 1000 + 19 * s.frame_interval_ms);
            const auto m = final_matrix(s, seed);
            std::map<std::pair<mcda::AlternativeId, std::string>, double> cells;
            for (const auto& f : frames)
                for (const auto& u : f.updates) {
                    cells[{u.alternative, u.criterion}] = u.value;
                    const auto& noise = s.noise.at(u.criterion);
                    CHECK(u.value >= noise.range_lo);
                    CHECK(u.value <= noise.range_hi);
                }
            CHECK(cells.size() == m.alternatives().size() * m.criteria().size());
            for (const auto& [key, v] : cells) CHECK(v == value(m, key.first, key.second));
        }
    }
}

TEST_CASE("the anchor is undominated and ranked first for every seed") {
    for (const auto& name : builtin_scenario_names()) {
        const auto s = load_scenario(name);
        REQUIRE(s.anchor.has_value());
        for (std::uint64_t seed = 0; seed < 300; ++seed) {
            const auto m = final_matrix(s, seed);
            const auto& top = m.find(*s.anchor)->values;
            for (const auto& a : m.alternatives())
                if (a.id != *s.anchor) CHECK_FALSE(dominates(m.criteria(), a.values, top));
            CAPTURE(name);
            CAPTURE(seed);
            auto feasible = mcda::filter_feasible(m).matrix;
            auto ref = testing::reference_for(feasible);
            const auto best = std::max_element(ref.scores.begin(), ref.scores.end()) - ref.scores.begin();
            CHECK(feasible.alternatives()[best].id == *s.anchor);
        }
    }
}
