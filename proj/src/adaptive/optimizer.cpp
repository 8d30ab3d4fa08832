#include "trajplan/adaptive/optimizer.hpp"

namespace trajplan::adaptive {

Recommendation optimize_trajectory_plan(const SessionState& state, Timestamp now) {
    auto ranking = mcda::topsis(state.matrix());
    const auto best = ranking.best_id;
    return {state.id, std::move(ranking), best, now, state.revision};
}

std::optional<Alert> check_selection(const SessionState& state, AlternativeId chosen_id) {
    if (!state.cells.contains(chosen_id))
        throw Error(ErrorCode::UnknownAlternative,
                    "alternative " + std::to_string(chosen_id) + " is not in session '" +
                        state.id + "'");
    const auto matrix = state.matrix();
    const auto ranking = mcda::topsis(matrix);

    auto report = mcda::check_thresholds(matrix.criteria(), *matrix.find(chosen_id));
    if (chosen_id == ranking.best_id && report.feasible()) return std::nullopt;

    const double chosen_score = ranking.contains(chosen_id) ? ranking.score_of(chosen_id) : 0.0;
    Alert alert{state.id, chosen_id, ranking.best_id, ranking.score_of(ranking.best_id) - chosen_score,
                std::nullopt};
    if (!report.feasible()) alert.violated_constraints = std::move(report);
    return alert;
}

const std::vector<WeightEntry>& weight_history(const SessionState& state) {
    return state.weight_history;
}

}  // namespace trajplan::adaptive
