#include <cmath>

#include "trajplan/adaptive/optimizer.hpp"

namespace trajplan::adaptive {

namespace {

std::size_t row_of(const mcda::DecisionMatrix& matrix, AlternativeId id) {
    const auto& alts = matrix.alternatives();
    for (std::size_t i = 0; i < alts.size(); ++i)
        if (alts[i].id == id) return i;
    throw Error(ErrorCode::UnknownAlternative,
                "alternative " + std::to_string(id) + " is not in the matrix");
}

void renormalize(std::vector<double>& w) {
    double sum = 0.0;
    for (double x : w) sum += x;
    for (double& x : w) x /= sum;
}

}  // namespace

std::vector<double> update_weights(std::span<const double> weights, const FeedbackEvent& feedback,
                                   const mcda::DecisionMatrix& matrix, double learning_rate) {
    std::vector<double> out(weights.begin(), weights.end());
    if (feedback.verdict == Verdict::Accepted) return out;
    if (!(learning_rate > 0.0 && learning_rate <= 1.0))
        throw Error(ErrorCode::InvalidRequest, "learning rate must lie in (0, 1]");

    const auto criteria = matrix.criteria().with_weights(weights);
    const auto chosen = row_of(matrix, feedback.chosen_id);
    const auto recommended = row_of(matrix, feedback.recommended_id);

    const auto normalized = mcda::normalize(matrix);
    const auto v = mcda::apply_weights(normalized.values, criteria);
    const auto ideals = mcda::ideal_points(v, criteria);

    bool boosted = false;
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double chosen_gap = std::abs(v.values(chosen, j) - ideals.positive[j]);
        const double recommended_gap = std::abs(v.values(recommended, j) - ideals.positive[j]);
        if (chosen_gap < recommended_gap) {
            out[j] *= 1.0 + learning_rate;
            boosted = true;
        }
    }

    bool below_floor = false;
    for (double x : out) below_floor = below_floor || x < kWeightFloor;
    if (!boosted && !below_floor) return out;

    if (boosted) renormalize(out);
    bool clamped = false;
    for (double& x : out) {
        if (x < kWeightFloor) {
            x = kWeightFloor;
            clamped = true;
        }
    }
    if (clamped) renormalize(out);
    return out;
}

}  // namespace trajplan::adaptive
