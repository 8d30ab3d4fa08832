#include "trajplan/adaptive/session_state.hpp"

#include "trajplan/error.hpp"

namespace trajplan {

namespace adaptive {

FeedbackEvent make_feedback(std::string session_id, AlternativeId recommended_id,
                            AlternativeId chosen_id, Timestamp timestamp) {
    return {std::move(session_id), recommended_id, chosen_id,
            chosen_id == recommended_id ? Verdict::Accepted : Verdict::Overridden, timestamp};
}

std::string_view to_string(Verdict v) { return v == Verdict::Accepted ? "Accepted" : "Overridden"; }

Verdict parse_verdict(std::string_view s) {
    if (s == "Accepted") return Verdict::Accepted;
    if (s == "Overridden") return Verdict::Overridden;
    throw Error(ErrorCode::InvalidRequest, "unknown verdict '" + std::string(s) + "'");
}

Json to_json(const Recommendation& r) {
    Json j;
    j["session"] = r.session_id;
    j["revision"] = r.matrix_revision;
    j["recommended_id"] = r.recommended_id;
    j["generated_at"] = r.generated_at;
    j["ranking"] = mcda::to_json(r.ranking);
    return j;
}

Json to_json(const FeedbackEvent& f) {
    Json j;
    j["session"] = f.session_id;
    j["recommended_id"] = f.recommended_id;
    j["chosen_id"] = f.chosen_id;
    j["verdict"] = to_string(f.verdict);
    j["ts"] = f.timestamp;
    return j;
}

Json to_json(const Alert& a) {
    Json j;
    j["session"] = a.session_id;
    j["chosen_id"] = a.chosen_id;
    j["recommended_id"] = a.recommended_id;
    j["score_gap"] = a.score_gap;
    j["violations"] = a.violated_constraints ? mcda::to_json(*a.violated_constraints) : Json();
    return j;
}

Recommendation recommendation_from_json(const Json& j) {
    return {j.at("session").get<std::string>(), mcda::ranking_from_json(j.at("ranking")),
            j.at("recommended_id").get<AlternativeId>(), j.at("generated_at").get<Timestamp>(),
            j.at("revision").get<Revision>()};
}

FeedbackEvent feedback_from_json(const Json& j) {
    return {j.at("session").get<std::string>(), j.at("recommended_id").get<AlternativeId>(),
            j.at("chosen_id").get<AlternativeId>(), parse_verdict(j.at("verdict").get<std::string>()),
            j.at("ts").get<Timestamp>()};
}

Alert alert_from_json(const Json& j) {
    Alert a{j.at("session").get<std::string>(), j.at("chosen_id").get<AlternativeId>(),
            j.at("recommended_id").get<AlternativeId>(), j.at("score_gap").get<double>(),
            std::nullopt};
    if (!j.at("violations").is_null())
        a.violated_constraints = mcda::violation_report_from_json(j.at("violations"));
    return a;
}

}  // namespace adaptive

mcda::DecisionMatrix SessionState::matrix() const {
    if (!criteria) throw Error(ErrorCode::EmptySession, "session '" + id + "' has no criteria yet");
    if (cells.empty())
        throw Error(ErrorCode::EmptySession, "session '" + id + "' has no alternatives yet");
    std::vector<mcda::Alternative> alts;
    alts.reserve(cells.size());
    for (const auto& [alt, values] : cells) alts.push_back({alt, std::nullopt, values});
    return mcda::DecisionMatrix(*criteria, std::move(alts));
}

void SessionState::replace_criteria(mcda::CriteriaSet next) {
    std::vector<std::optional<std::size_t>> source(next.size());
    for (std::size_t j = 0; j < next.size(); ++j)
        if (criteria) source[j] = criteria->index_of(next[j].id);

    for (auto& [alt, values] : cells) {
        std::vector<double> remapped(next.size(), 0.0);
        for (std::size_t j = 0; j < next.size(); ++j)
            if (source[j]) remapped[j] = values[*source[j]];
        values = std::move(remapped);
    }
    std::vector<std::optional<double>> last(next.size());
    for (std::size_t j = 0; j < next.size(); ++j)
        if (source[j]) last[j] = column_last[*source[j]];
    column_last = std::move(last);
    criteria = std::move(next);
}

void SessionState::create_alternative(mcda::AlternativeId alt, const std::vector<bool>& supplied,
                                      std::vector<std::string>* diagnostics) {
    const std::size_t n = criteria ? criteria->size() : 0;
    std::vector<double> values(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (supplied[j]) continue;
        values[j] = column_last[j].value_or(0.0);
        if (diagnostics) {
            diagnostics->push_back("alternative " + std::to_string(alt) + " has no value for '" +
                                   (*criteria)[j].id + "'; defaulted to " +
                                   (column_last[j] ? "the column's last value" : "0"));
        }
    }
    cells.emplace(alt, std::move(values));
}

void SessionState::write_cell(mcda::AlternativeId alt, std::size_t column, double value) {
    cells.at(alt).at(column) = value;
    column_last.at(column) = value;
}

std::vector<adaptive::Recommendation> SessionState::recommendation_history() const {
    std::vector<adaptive::Recommendation> out;
    for (const auto& [rev, outcome] : outcomes)
        if (outcome.recommendation) out.push_back(*outcome.recommendation);
    return out;
}

const RevisionOutcome* SessionState::outcome(Revision r) const {
    auto it = outcomes.find(r);
    return it == outcomes.end() ? nullptr : &it->second;
}

Json recommendation_history_json(const SessionState& state) {
    Json arr = Json::array();
    for (const auto& r : state.recommendation_history()) arr.push_back(adaptive::to_json(r));
    return arr;
}

Json weight_history_json(const SessionState& state) {
    Json arr = Json::array();
    for (const auto& e : state.weight_history) {
        Json j;
        j["revision"] = e.revision;
        j["weights"] = e.weights;
        arr.push_back(std::move(j));
    }
    return arr;
}

}  // namespace trajplan
