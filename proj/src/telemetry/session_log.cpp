#include "trajplan/telemetry/session_log.hpp"

#include <chrono>

namespace trajplan::telemetry {

using adaptive::FeedbackEvent;
using adaptive::Recommendation;

Timestamp system_clock_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

namespace {

Revision payload_revision(const Json& payload) { return payload.at("revision").get<Revision>(); }

void expect_revision(const EventRecord& r, Revision expected) {
    const auto got = payload_revision(r.payload);
    if (got != expected)
        throw CorruptLogError(r.seq, "revision " + std::to_string(got) + ", expected " +
                                         std::to_string(expected));
}

void apply_frame_record(SessionState& state, const EventRecord& r,
                        std::vector<std::string>* diagnostics) {
    if (!state.criteria) throw CorruptLogError(r.seq, "frame before any criteria");
    expect_revision(r, state.revision + 1);
    const auto frame = frame_from_json(r.payload.at("frame"));
    resolve_criteria(frame, *state.criteria);

    const std::size_t n = state.criteria->size();
    for (std::size_t k = 0; k < frame.updates.size(); ++k) {
        const auto& u = frame.updates[k];
        if (!state.cells.contains(u.alternative)) {
            std::vector<bool> supplied(n, false);
            for (std::size_t q = k; q < frame.updates.size(); ++q)
                if (frame.updates[q].alternative == u.alternative)
                    supplied[*state.criteria->index_of(frame.updates[q].criterion)] = true;
            state.create_alternative(u.alternative, supplied, diagnostics);
        }
        state.write_cell(u.alternative, *state.criteria->index_of(u.criterion), u.value);
    }
    state.revision += 1;
}

void apply_recommendation(SessionState& state, const EventRecord& r, ApplyMode mode) {
    expect_revision(r, state.revision);
    if (mode == ApplyMode::Verify) {
        Recommendation expected;
        try {
            expected = adaptive::optimize_trajectory_plan(state, r.ts);
        } catch (const Error& e) {
            throw CorruptLogError(r.seq, std::string("recommendation cannot be reproduced: ") + e.what());
        }
        if (adaptive::to_json(expected).dump() != r.payload.dump())
            throw CorruptLogError(r.seq, "recommendation differs from a fresh evaluation");
    }
    state.outcomes[state.revision].recommendation = adaptive::recommendation_from_json(r.payload);
}

void apply_alert(SessionState& state, const EventRecord& r, ApplyMode mode) {
    expect_revision(r, state.revision);
    const auto type = r.payload.at("type").get<std::string>();
    if (type == "all_infeasible") {
        auto reports = mcda::violation_reports_from_json(r.payload.at("violations"));
        if (mode == ApplyMode::Verify) {
            try {
                adaptive::optimize_trajectory_plan(state, r.ts);
                throw CorruptLogError(r.seq, "logged as infeasible but a recommendation exists");
            } catch (const mcda::AllInfeasibleError& e) {
                if (e.reports() != reports)
                    throw CorruptLogError(r.seq, "violation reports differ from a fresh evaluation");
            }
        }
        state.outcomes[state.revision] = RevisionOutcome{std::nullopt, std::move(reports)};
    } else if (type == "selection") {
        state.alerts.push_back(adaptive::alert_from_json(r.payload.at("alert")));
    } else {
        throw CorruptLogError(r.seq, "unknown alert type '" + type + "'");
    }
}

void apply_weights_updated(SessionState& state, const EventRecord& r, ApplyMode mode) {
    if (!state.criteria) throw CorruptLogError(r.seq, "weights before any criteria");
    expect_revision(r, state.revision + 1);
    const auto weights = r.payload.at("weights").get<std::vector<double>>();
    if (mode == ApplyMode::Verify) {
        if (state.feedback.empty()) throw CorruptLogError(r.seq, "weight update without feedback");
        auto expected = adapted_weights(state, state.feedback.back());
        if (!expected || Json(*expected).dump() != r.payload.at("weights").dump())
            throw CorruptLogError(r.seq, "weight update differs from a fresh evaluation");
    }
    state.criteria = state.criteria->with_weights(weights);
    state.revision += 1;
    state.weight_history.push_back({state.revision, weights});
}

}  // namespace

void apply_event(SessionState& state, const EventRecord& r, ApplyMode mode,
                 std::vector<std::string>* diagnostics) {
    if (r.seq != state.last_sequence + 1)
        throw CorruptLogError(state.last_sequence + 1, "found sequence " + std::to_string(r.seq));
    if (r.kind != EventKind::SessionCreated && state.id.empty())
        throw CorruptLogError(r.seq, "log does not start with SessionCreated");
    if (state.status == SessionStatus::Closed)
        throw CorruptLogError(r.seq, "event after SessionClosed");

    try {
        const Json& p = r.payload;
        switch (r.kind) {
            case EventKind::SessionCreated:
                if (!state.id.empty()) throw CorruptLogError(r.seq, "duplicate SessionCreated");
                state.id = p.at("session").get<std::string>();
                if (!p.at("scenario").is_null()) state.scenario = p.at("scenario").get<std::string>();
                state.created_at = p.at("created_at").get<Timestamp>();
                state.learning_rate = p.at("learning_rate").get<double>();
                break;
            case EventKind::CriteriaSet: {
                const bool initial = p.at("initial").get<bool>();
                expect_revision(r, initial ? state.revision : state.revision + 1);
                state.replace_criteria(mcda::criteria_from_json(p.at("criteria")));
                state.revision = payload_revision(p);
                state.weight_history.push_back({state.revision, state.criteria->weights()});
                break;
            }
            case EventKind::Frame:
                apply_frame_record(state, r, diagnostics);
                break;
            case EventKind::Recommendation:
                apply_recommendation(state, r, mode);
                break;
            case EventKind::Feedback:
                expect_revision(r, state.revision);
                state.feedback.push_back(adaptive::feedback_from_json(p.at("feedback")));
                break;
            case EventKind::Alert:
                apply_alert(state, r, mode);
                break;
            case EventKind::WeightsUpdated:
                apply_weights_updated(state, r, mode);
                break;
            case EventKind::SessionClosed:
                expect_revision(r, state.revision);
                state.status = SessionStatus::Closed;
                break;
        }
    } catch (const CorruptLogError&) {
        throw;
    } catch (const std::exception& e) {
        throw CorruptLogError(r.seq, e.what());
    }
    state.last_sequence = r.seq;
}

SessionState replay(std::span<const EventRecord> records) {
    SessionState state;
    for (const auto& r : records) apply_event(state, r, ApplyMode::Verify);
    return state;
}

SessionState replay(const std::filesystem::path& log_path) { return replay(read_log(log_path)); }

std::optional<std::vector<double>> adapted_weights(const SessionState& state,
                                                   const FeedbackEvent& feedback) {
    if (feedback.verdict == adaptive::Verdict::Accepted) return std::nullopt;
    const auto feasible = mcda::filter_feasible(state.matrix());
    if (!feasible.matrix.find(feedback.chosen_id)) return std::nullopt;
    const auto before = state.criteria->weights();
    auto after = adaptive::update_weights(before, feedback, feasible.matrix, state.learning_rate);
    if (after == before) return std::nullopt;
    return after;
}

// --- SessionJournal -------------------------------------------------------

SessionJournal SessionJournal::create(std::string id, Options options, Clock clock) {
    SessionJournal j(std::move(clock));
    if (options.log_path) j.log_ = EventLog(*options.log_path);

    Json created;
    created["session"] = id;
    created["scenario"] = options.scenario ? Json(*options.scenario) : Json();
    created["created_at"] = j.clock_();
    created["learning_rate"] = options.learning_rate;
    j.append(EventKind::SessionCreated, std::move(created));

    if (options.criteria) {
        Json set;
        set["revision"] = j.state_.revision;
        set["initial"] = true;
        set["criteria"] = mcda::to_json(*options.criteria);
        j.append(EventKind::CriteriaSet, std::move(set));
    }
    return j;
}

SessionJournal SessionJournal::restore(const std::filesystem::path& log_path, Clock clock) {
    SessionJournal j(std::move(clock));
    j.events_ = read_log(log_path);
    j.state_ = replay(j.events_);
    j.log_ = EventLog(log_path);
    return j;
}

std::vector<EventRecord> SessionJournal::events_after(std::uint64_t seq) const {
    if (seq >= events_.size()) return {};
    return {events_.begin() + static_cast<std::ptrdiff_t>(seq), events_.end()};
}

const EventRecord& SessionJournal::append(EventKind kind, Json payload) {
    EventRecord record{state_.last_sequence + 1, kind, clock_(), std::move(payload)};
    if (kind == EventKind::Recommendation) record.ts = record.payload.at("generated_at").get<Timestamp>();
    apply_event(state_, record, ApplyMode::Live);
    log_.append(record);
    events_.push_back(std::move(record));
    return events_.back();
}

void SessionJournal::rescore() {
    if (!state_.ready()) return;
    const Timestamp now = clock_();
    try {
        auto rec = adaptive::optimize_trajectory_plan(state_, now);
        append(EventKind::Recommendation, adaptive::to_json(rec));
    } catch (const mcda::AllInfeasibleError& e) {
        Json alert;
        alert["type"] = "all_infeasible";
        alert["revision"] = state_.revision;
        alert["violations"] = mcda::to_json(e.reports());
        append(EventKind::Alert, std::move(alert));
    }
}

void SessionJournal::require_open() const {
    if (state_.status != SessionStatus::Open)
        throw Error(ErrorCode::SessionNotFound, "session '" + state_.id + "' is closed");
}

Revision SessionJournal::apply_frame(const TelemetryFrame& frame,
                                     std::vector<std::string>* diagnostics) {
    require_open();
    if (frame.session_id != state_.id)
        throw Error(ErrorCode::SessionNotFound,
                    "frame addressed to session '" + frame.session_id + "'");
    if (!state_.criteria)
        throw Error(ErrorCode::UnknownCriterion, "session '" + state_.id + "' has no criteria yet");
    resolve_criteria(frame, *state_.criteria);

    Json payload;
    payload["revision"] = state_.revision + 1;
    payload["frame"] = to_json(frame);
    EventRecord record{state_.last_sequence + 1, EventKind::Frame, clock_(), std::move(payload)};
    apply_event(state_, record, ApplyMode::Live, diagnostics);
    log_.append(record);
    events_.push_back(std::move(record));
    rescore();
    return state_.revision;
}

Revision SessionJournal::set_criteria(mcda::CriteriaSet criteria) {
    require_open();
    Json payload;
    payload["revision"] = state_.revision + 1;
    payload["initial"] = false;
    payload["criteria"] = mcda::to_json(criteria);
    append(EventKind::CriteriaSet, std::move(payload));
    rescore();
    return state_.revision;
}

const Recommendation& SessionJournal::current_recommendation() const {
    const auto* outcome = state_.outcome(state_.revision);
    if (!outcome)
        throw Error(ErrorCode::NotReady,
                    "session '" + state_.id + "' has no ranking at revision " +
                        std::to_string(state_.revision));
    if (!outcome->recommendation) throw mcda::AllInfeasibleError(outcome->infeasible);
    return *outcome->recommendation;
}

SelectionResult SessionJournal::record_feedback(FeedbackEvent fb, std::optional<adaptive::Alert> alert) {
    Json payload;
    payload["revision"] = state_.revision;
    payload["feedback"] = adaptive::to_json(fb);
    append(EventKind::Feedback, std::move(payload));

    if (alert) {
        Json a;
        a["type"] = "selection";
        a["revision"] = state_.revision;
        a["alert"] = adaptive::to_json(*alert);
        append(EventKind::Alert, std::move(a));
    }

    SelectionResult result{fb, std::move(alert), {}, 0, false};
    if (auto weights = adapted_weights(state_, fb)) {
        Json w;
        w["revision"] = state_.revision + 1;
        w["weights"] = *weights;
        w["learning_rate"] = state_.learning_rate;
        append(EventKind::WeightsUpdated, std::move(w));
        result.weights_changed = true;
        rescore();
    }
    result.weights = state_.criteria->weights();
    result.revision = state_.revision;
    return result;
}

SelectionResult SessionJournal::select(mcda::AlternativeId chosen_id) {
    require_open();
    if (!state_.cells.contains(chosen_id))
        throw Error(ErrorCode::UnknownAlternative,
                    "alternative " + std::to_string(chosen_id) + " is not in session '" +
                        state_.id + "'");
    const auto& rec = current_recommendation();
    auto alert = adaptive::check_selection(state_, chosen_id);
    auto fb = adaptive::make_feedback(state_.id, rec.recommended_id, chosen_id, clock_());
    return record_feedback(std::move(fb), std::move(alert));
}

SelectionResult SessionJournal::feedback(mcda::AlternativeId chosen_id,
                                         std::optional<adaptive::Verdict> verdict) {
    require_open();
    if (!state_.cells.contains(chosen_id))
        throw Error(ErrorCode::UnknownAlternative,
                    "alternative " + std::to_string(chosen_id) + " is not in session '" +
                        state_.id + "'");
    const auto& rec = current_recommendation();
    auto fb = adaptive::make_feedback(state_.id, rec.recommended_id, chosen_id, clock_());
    if (verdict && *verdict != fb.verdict)
        throw Error(ErrorCode::InvalidRequest,
                    "verdict " + std::string(adaptive::to_string(*verdict)) +
                        " contradicts chosen " + std::to_string(chosen_id) + " vs recommended " +
                        std::to_string(rec.recommended_id));
    return record_feedback(std::move(fb), std::nullopt);
}

void SessionJournal::close() {
    require_open();
    Json payload;
    payload["revision"] = state_.revision;
    append(EventKind::SessionClosed, std::move(payload));
}

}  // namespace trajplan::telemetry
