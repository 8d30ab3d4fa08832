#pragma once

#include <optional>
#include <span>
#include <vector>

#include "trajplan/adaptive/session_state.hpp"

namespace trajplan::adaptive {

inline constexpr double kDefaultLearningRate = 0.1;
inline constexpr double kWeightFloor = 0.01;

/// Scores the session's current matrix and returns the best alternative.
/// Throws EmptySession when the session has no criteria or alternatives and
/// propagates AllInfeasibleError. Persisting the result is the caller's job.
Recommendation optimize_trajectory_plan(const SessionState& state, Timestamp now);

/// Compares the operator's choice with the current recommendation. No alert
/// when they agree; otherwise the alert carries the closeness gap and any
/// thresholds the chosen alternative violates. An infeasible choice is not
/// ranked and counts as closeness 0 for the gap.
std::optional<Alert> check_selection(const SessionState& state, AlternativeId chosen_id);

/// Multiplicative boost: every criterion on which the chosen alternative's
/// weighted-normalized value is strictly closer to the positive ideal than
/// the recommended one's is scaled by (1 + learning_rate). The result is
/// renormalized, floored at kWeightFloor and renormalized again. Accepted
/// feedback, or an override with nothing to boost and no weight below the
/// floor, returns `weights` unchanged.
std::vector<double> update_weights(std::span<const double> weights, const FeedbackEvent& feedback,
                                   const mcda::DecisionMatrix& matrix, double learning_rate);

const std::vector<WeightEntry>& weight_history(const SessionState& state);

}  // namespace trajplan::adaptive
