#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "support/generators.hpp"
#include "support/sessions.hpp"
#include "trajplan/adaptive/optimizer.hpp"
#include "trajplan/sim/scenario.hpp"

using namespace trajplan;
using namespace trajplan::mcda;
using namespace trajplan::adaptive;
using trajplan::testing::Rng;
using trajplan::testing::state_from;

namespace {

DecisionMatrix make(std::vector<Criterion> criteria, std::vector<std::vector<double>> rows) {
    std::vector<Alternative> alts;
    for (std::size_t i = 0; i < rows.size(); ++i)
        alts.push_back({static_cast<AlternativeId>(i + 1), std::nullopt, rows[i]});
    return DecisionMatrix(CriteriaSet(std::move(criteria)), std::move(alts));
}

Criterion crit(std::string id, Direction d, double w, std::optional<Threshold> t = std::nullopt) {
    return {id, id, d, w, t};
}

FeedbackEvent overridden(AlternativeId rec, AlternativeId chosen) {
    return make_feedback("t", rec, chosen, 0);
}

// Independent restatement of the boost rule on plain vectors.
std::vector<double> reference_update(const std::vector<double>& w, const DecisionMatrix& m,
                                     AlternativeId rec, AlternativeId chosen, double lr) {
    const std::size_t n = w.size();
    std::vector<double> next = w;
    bool boosted = false;
    for (std::size_t j = 0; j < n; ++j) {
        double sq = 0.0;
        for (const auto& a : m.alternatives()) sq += a.values[j] * a.values[j];
        const double len = std::sqrt(sq);
        auto v = [&](AlternativeId id) { return len > 0 ? w[j] * (m.find(id)->values[j] / len) : 0.0; };
        double best = v(m.alternatives()[0].id);
        for (const auto& a : m.alternatives()) {
            const double x = v(a.id);
            best = m.criteria()[j].direction == Direction::Benefit ? std::max(best, x) : std::min(best, x);
        }
        if (std::fabs(v(chosen) - best) < std::fabs(v(rec) - best)) {
            next[j] *= 1 + lr;
            boosted = true;
        }
    }
    const bool below = std::any_of(w.begin(), w.end(), [](double x) { return x < kWeightFloor; });
    if (!boosted && !below) return w;
    double s = std::accumulate(next.begin(), next.end(), 0.0);
    for (auto& x : next) x = std::max(x / s, kWeightFloor);
    s = std::accumulate(next.begin(), next.end(), 0.0);
    for (auto& x : next) x /= s;
    return next;
}

double closeness(const DecisionMatrix& m, AlternativeId id) { return topsis(m).score_of(id); }

mcda::DecisionMatrix reweighted(const DecisionMatrix& m, const std::vector<double>& w) {
    return m.with_criteria(m.criteria().with_weights(w));
}

}  // namespace

TEST_CASE("boost on a single criterion matches the hand computation") {
    // Alternative 2 is closer to the ideal only on the third criterion.
    auto m = make({crit("a", Direction::Benefit, 0.25), crit("b", Direction::Benefit, 0.25),
                   crit("c", Direction::Benefit, 0.25), crit("d", Direction::Benefit, 0.25)},
                  {{9, 9, 1, 9}, {1, 1, 9, 1}});
    auto w = update_weights(m.criteria().weights(), overridden(1, 2), m, 0.1);
    REQUIRE(w.size() == 4);
    CHECK(std::fabs(w[0] - 0.24390) < 1e-5);
    CHECK(std::fabs(w[1] - 0.24390) < 1e-5);
    CHECK(std::fabs(w[2] - 0.26829) < 1e-5);
    CHECK(std::fabs(w[3] - 0.24390) < 1e-5);
    CHECK(std::fabs(w[2] - 0.275 / 1.025) < 1e-15);
}

TEST_CASE("accepted feedback leaves weights bit-identical") {
    auto m = make({crit("a", Direction::Benefit, 0.3), crit("b", Direction::Cost, 0.7)},
                  {{1, 2}, {3, 4}, {5, 1}});
    const auto before = m.criteria().weights();
    auto fb = make_feedback("t", 3, 3, 0);
    CHECK(fb.verdict == Verdict::Accepted);
    CHECK(update_weights(before, fb, m, 0.1) == before);
}

TEST_CASE("override with nothing to boost is a no-op") {
    // Alternative 1 dominates 2, so 2 is never strictly closer to the ideal.
    auto m = make({crit("a", Direction::Benefit, 0.5), crit("b", Direction::Cost, 0.5)},
                  {{9, 1}, {1, 9}});
    const auto before = m.criteria().weights();
    CHECK(update_weights(before, overridden(1, 2), m, 0.1) == before);
}

TEST_CASE("weights below the floor are lifted") {
    auto m = make({crit("a", Direction::Benefit, 0.995), crit("b", Direction::Benefit, 0.005)},
                  {{9, 9}, {1, 1}});
    auto w = update_weights(m.criteria().weights(), overridden(1, 2), m, 0.1);
    CHECK(w[1] >= kWeightFloor / (1 + 2 * kWeightFloor));
    CHECK(std::fabs(w[0] + w[1] - 1.0) < 1e-12);
}

TEST_CASE("learning rate outside (0, 1] is rejected") {
    auto m = make({crit("a", Direction::Benefit, 1.0)}, {{1}, {2}});
    const auto w = m.criteria().weights();
    CHECK_THROWS_AS(update_weights(w, overridden(2, 1), m, 0.0), Error);
    CHECK_THROWS_AS(update_weights(w, overridden(2, 1), m, 1.5), Error);
    CHECK_NOTHROW(update_weights(w, overridden(2, 1), m, 1.0));
}

TEST_CASE("update matches the reference rule on random matrices") {
    Rng rng(71);
    for (int trial = 0; trial < 2000; ++trial) {
        auto m = testing::random_matrix(rng, {8, 5, 0.1, 0.1, 0.0});
        if (m.alternatives().size() < 2) continue;
        const auto rec = topsis(m).best_id;
        const auto chosen = m.alternatives()[rng.index(m.alternatives().size())].id;
        if (chosen == rec) continue;
        const double lr = rng.uniform(0.01, 1.0);
        const auto w = m.criteria().weights();
        auto got = update_weights(w, overridden(rec, chosen), m, lr);
        auto want = reference_update(w, m, rec, chosen, lr);
        for (std::size_t j = 0; j < w.size(); ++j) REQUIRE(std::fabs(got[j] - want[j]) < 1e-15);
    }
}

TEST_CASE("hepatectomy state recommends alternative 1") {
    const auto scenario = sim::load_scenario("hepatectomy");
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto state = state_from(sim::final_matrix(scenario, seed));
        auto rec = optimize_trajectory_plan(state, 5);
        CHECK(rec.recommended_id == 1);
        CHECK(rec.recommended_id == rec.ranking.best_id);
        CHECK(rec.matrix_revision == state.revision);
        CHECK(rec.generated_at == 5);
    }
}

TEST_CASE("choosing alternative 11 over the recommendation raises an alert") {
    const auto scenario = sim::load_scenario("hepatectomy");
    auto matrix = sim::final_matrix(scenario, 7);
    auto state = state_from(matrix);
    CHECK_FALSE(check_selection(state, 1).has_value());

    auto alert = check_selection(state, 11);
    REQUIRE(alert.has_value());
    auto feasible = filter_feasible(matrix).matrix;
    auto ref = testing::reference_for(feasible);
    auto index = [&](AlternativeId id) {
        for (std::size_t i = 0; i < feasible.alternatives().size(); ++i)
            if (feasible.alternatives()[i].id == id) return i;
        FAIL("missing alternative");
        return std::size_t{0};
    };
    const double gap = ref.scores[index(1)] - ref.scores[index(11)];
    CHECK(gap > 0);
    CHECK(std::fabs(alert->score_gap - gap) < 1e-9);
    CHECK(alert->recommended_id == 1);
    CHECK_FALSE(alert->violated_constraints.has_value());
    CHECK_THROWS_AS(check_selection(state, 99), Error);
}

TEST_CASE("choosing an alternative over a blood loss threshold carries the violation") {
    auto m = make({crit("ebl", Direction::Cost, 0.5, Threshold{BoundKind::Max, 0.5}),
                   crit("vc", Direction::Benefit, 0.5)},
                  {{0.1, 0.8}, {0.7, 0.9}});
    auto state = state_from(m);
    auto alert = check_selection(state, 2);
    REQUIRE(alert.has_value());
    REQUIRE(alert->violated_constraints.has_value());
    CHECK(alert->violated_constraints->alternative == 2);
    REQUIRE(alert->violated_constraints->violations.size() == 1);
    CHECK(alert->violated_constraints->violations[0].criterion_id == "ebl");
    // The infeasible choice is unscored, so the gap is the full closeness of the best.
    CHECK(alert->score_gap == closeness(filter_feasible(m).matrix, 1));
}

TEST_CASE("single alternative is recommended with the degenerate flag") {
    auto m = make({crit("a", Direction::Benefit, 0.5), crit("b", Direction::Cost, 0.5)}, {{3, 4}});
    auto rec = optimize_trajectory_plan(state_from(m), 0);
    CHECK(rec.recommended_id == 1);
    CHECK(rec.ranking.degenerate);
}

TEST_CASE("identical alternatives recommend the lower id") {
    auto m = make({crit("a", Direction::Benefit, 0.5), crit("b", Direction::Cost, 0.5)},
                  {{1, 9}, {5, 2}, {5, 2}});
    CHECK(optimize_trajectory_plan(state_from(m), 0).recommended_id == 2);
}

TEST_CASE("empty session is rejected") {
    SessionState s;
    s.id = "t";
    CHECK_THROWS_AS(optimize_trajectory_plan(s, 0), Error);
}

TEST_CASE("overrides never shrink the chosen alternative's margin on scenario fixtures") {
    for (const auto* name : {"whipple", "hepatectomy"}) {
        const auto scenario = sim::load_scenario(name);
        for (std::uint64_t seed = 1; seed <= 30; ++seed) {
            auto feasible = filter_feasible(sim::final_matrix(scenario, seed)).matrix;
            const auto rec = topsis(feasible).best_id;
            const auto w = feasible.criteria().weights();
            for (const auto& a : feasible.alternatives()) {
                if (a.id == rec) continue;
                auto next = update_weights(w, overridden(rec, a.id), feasible, 0.1);
                auto after = reweighted(feasible, next);
                const double before_margin = closeness(feasible, a.id) - closeness(feasible, rec);
                const double after_margin = closeness(after, a.id) - closeness(after, rec);
                CAPTURE(name);
                CAPTURE(seed);
                CAPTURE(a.id);
                CHECK(after_margin >= before_margin - 1e-12);
            }
        }
    }
}

TEST_CASE("random feedback sequences stay on the floored simplex") {
    Rng rng(2024);
    for (int seq = 0; seq < 2000; ++seq) {
        auto m = testing::random_matrix(rng, {6, 5, 0.1, 0.1, 0.0});
        if (m.alternatives().size() < 2) continue;
        const double n = static_cast<double>(m.criteria().size());
        auto w = m.criteria().weights();
        const int steps = 1 + static_cast<int>(rng.index(30));
        for (int k = 0; k < steps; ++k) {
            auto current = reweighted(m, w);
            const auto rec = topsis(current).best_id;
            const auto chosen = m.alternatives()[rng.index(m.alternatives().size())].id;
            w = update_weights(w, make_feedback("t", rec, chosen, k), current, rng.uniform(0.01, 1.0));
            if (chosen == rec) continue;
            REQUIRE(std::fabs(std::accumulate(w.begin(), w.end(), 0.0) - 1.0) <= 1e-12);
            for (double x : w) REQUIRE(x >= kWeightFloor / (1 + n * kWeightFloor));
        }
    }
}
