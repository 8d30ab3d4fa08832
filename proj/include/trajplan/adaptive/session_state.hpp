#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trajplan/adaptive/types.hpp"

namespace trajplan {

enum class SessionStatus { Open, Closed };

// What re-scoring produced for one revision: a recommendation, or the
// violation reports when every alternative was infeasible.
struct RevisionOutcome {
    std::optional<adaptive::Recommendation> recommendation;
    std::vector<mcda::ViolationReport> infeasible;

    bool operator==(const RevisionOutcome&) const = default;
};

struct WeightEntry {
    Revision revision = 0;
    std::vector<double> weights;

    bool operator==(const WeightEntry&) const = default;
};

/// Live state of one planning session. It is mutated only by folding event
/// records into it (see telemetry/session_log.hpp), so a replayed log and the
/// live session that wrote it hold equal states.
struct SessionState {
    std::string id;
    std::optional<std::string> scenario;
    Timestamp created_at = 0;
    SessionStatus status = SessionStatus::Open;
    double learning_rate = 0.1;

    std::optional<mcda::CriteriaSet> criteria;
    // alternative id -> raw values, columns in criteria order
    std::map<mcda::AlternativeId, std::vector<double>> cells;
    // last value written to each column by any alternative
    std::vector<std::optional<double>> column_last;

    Revision revision = 0;
    std::uint64_t last_sequence = 0;

    std::map<Revision, RevisionOutcome> outcomes;
    std::vector<WeightEntry> weight_history;
    std::vector<adaptive::FeedbackEvent> feedback;
    std::vector<adaptive::Alert> alerts;

    bool ready() const { return criteria.has_value() && !cells.empty(); }

    /// Materializes the current decision matrix (rows in ascending id).
    /// Throws EmptySession when there are no criteria or no alternatives.
    mcda::DecisionMatrix matrix() const;

    /// Replaces the criteria, reconciling existing columns by id: columns
    /// that disappear are dropped, new columns start at 0.
    void replace_criteria(mcda::CriteriaSet next);

    /// Adds an alternative. Columns not in `supplied` default to the
    /// column's last known value, or 0; each defaulted cell adds a line to
    /// `diagnostics`.
    void create_alternative(mcda::AlternativeId alt, const std::vector<bool>& supplied,
                            std::vector<std::string>* diagnostics = nullptr);

    void write_cell(mcda::AlternativeId alt, std::size_t column, double value);

    std::vector<adaptive::Recommendation> recommendation_history() const;
    const RevisionOutcome* outcome(Revision r) const;

    bool operator==(const SessionState&) const = default;
};

Json recommendation_history_json(const SessionState& state);
Json weight_history_json(const SessionState& state);

}  // namespace trajplan
