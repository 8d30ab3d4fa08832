#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trajplan/adaptive/optimizer.hpp"
#include "trajplan/adaptive/session_state.hpp"
#include "trajplan/telemetry/event_log.hpp"
#include "trajplan/telemetry/frame.hpp"

namespace trajplan::telemetry {

using Clock = std::function<Timestamp()>;

Timestamp system_clock_ms();

enum class ApplyMode {
    Live,    // trust derived events
    Verify,  // recompute derived events and reject the log if they differ
};

/// Folds one record into `state`. This is the only way state changes, for
/// live sessions and replays alike. Sequence and revision continuity are
/// checked; violations raise CorruptLogError.
void apply_event(SessionState& state, const EventRecord& record, ApplyMode mode = ApplyMode::Live,
                 std::vector<std::string>* diagnostics = nullptr);

SessionState replay(std::span<const EventRecord> records);

/// Rebuilds a session from its log file. An empty file yields an empty
/// state; a gap or unreadable record raises CorruptLogError(k).
SessionState replay(const std::filesystem::path& log_path);

struct SelectionResult {
    adaptive::FeedbackEvent feedback;
    std::optional<adaptive::Alert> alert;
    std::vector<double> weights;
    Revision revision = 0;
    bool weights_changed = false;
};

/// Command side of one session: every mutation becomes an event that is
/// folded into the state, appended to the in-memory feed and written to the
/// session's log file. Re-scoring follows every frame, criteria change and
/// weight change. Not thread-safe; callers serialize commands per session.
class SessionJournal {
public:
    struct Options {
        std::optional<std::string> scenario;
        std::optional<mcda::CriteriaSet> criteria;
        double learning_rate = adaptive::kDefaultLearningRate;
        std::optional<std::filesystem::path> log_path;
    };

    static SessionJournal create(std::string id, Options options, Clock clock);
    static SessionJournal restore(const std::filesystem::path& log_path, Clock clock);

    const SessionState& state() const { return state_; }
    const std::vector<EventRecord>& events() const { return events_; }
    std::vector<EventRecord> events_after(std::uint64_t seq) const;

    /// Applies a resolved frame; returns the new revision.
    Revision apply_frame(const TelemetryFrame& frame, std::vector<std::string>* diagnostics = nullptr);
    Revision set_criteria(mcda::CriteriaSet criteria);

    /// Operator picked `chosen_id` at the console: alert check, feedback and
    /// weight adaptation.
    SelectionResult select(mcda::AlternativeId chosen_id);

    /// Explicit accept/override signal without the alert check. A supplied
    /// verdict must agree with the chosen/recommended pair.
    SelectionResult feedback(mcda::AlternativeId chosen_id,
                             std::optional<adaptive::Verdict> verdict = std::nullopt);

    void close();

private:
    SessionJournal(Clock clock) : clock_(std::move(clock)) {}

    const EventRecord& append(EventKind kind, Json payload);
    void rescore();
    void require_open() const;
    const adaptive::Recommendation& current_recommendation() const;
    SelectionResult record_feedback(adaptive::FeedbackEvent fb, std::optional<adaptive::Alert> alert);

    Clock clock_;
    SessionState state_;
    std::vector<EventRecord> events_;
    EventLog log_;
};

/// Weights the session should move to after `feedback`, or nullopt when the
/// update leaves them unchanged (accepted, infeasible choice, nothing to
/// boost).
std::optional<std::vector<double>> adapted_weights(const SessionState& state,
                                                   const adaptive::FeedbackEvent& feedback);

}  // namespace trajplan::telemetry
