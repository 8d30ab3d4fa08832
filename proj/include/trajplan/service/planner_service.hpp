#pragma once

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "trajplan/telemetry/session_log.hpp"

namespace trajplan::service {

struct SessionDescriptor {
    std::string id;
    std::optional<std::string> scenario;
    Timestamp created_at = 0;
    Revision revision = 0;
    SessionStatus status = SessionStatus::Open;
};

Json to_json(const SessionDescriptor& d);

struct ServiceConfig {
    // One `<session id>.log` per session; sessions are in-memory only when unset.
    std::optional<std::filesystem::path> log_dir;
    telemetry::Clock clock = telemetry::system_clock_ms;
    double learning_rate = adaptive::kDefaultLearningRate;
};

/// The process manager: owns all sessions and routes commands to them.
///
/// Requests for different sessions run in parallel. Within a session every
/// mutation is serialized by the session mutex, and readers copy out a
/// consistent snapshot of some revision.
class PlannerService {
public:
    explicit PlannerService(ServiceConfig config);

    /// Rebuilds every session found in the log directory. Throws
    /// CorruptLogError (naming the file) if any log fails to replay.
    std::size_t restore();

    SessionDescriptor create_session(std::optional<std::string> scenario,
                                     std::optional<std::string> id = std::nullopt);
    SessionDescriptor describe(const std::string& id) const;
    std::vector<SessionDescriptor> list() const;
    void close_session(const std::string& id);

    Revision set_criteria(const std::string& id, mcda::CriteriaSet criteria);

    /// Applies frames in order; all frames are validated before the first is
    /// applied. Returns the latest revision.
    Revision ingest(const std::string& id, std::span<const telemetry::TelemetryFrame> frames,
                    std::vector<std::string>* diagnostics = nullptr);

    /// Recommendation at `revision` (default: latest). NotReady when that
    /// revision has not been scored, AllInfeasible when it had no feasible
    /// alternative.
    adaptive::Recommendation get_ranking(const std::string& id,
                                         std::optional<Revision> revision = std::nullopt) const;

    telemetry::SelectionResult post_selection(const std::string& id, mcda::AlternativeId chosen);
    telemetry::SelectionResult post_feedback(const std::string& id, mcda::AlternativeId chosen,
                                             std::optional<adaptive::Verdict> verdict);

    /// Events with sequence > `from`. With a nonzero `wait`, blocks until at
    /// least one such event exists or the wait expires.
    std::vector<telemetry::EventRecord> event_feed(const std::string& id, std::uint64_t from,
                                                   std::chrono::milliseconds wait = {}) const;

    SessionState snapshot(const std::string& id) const;

private:
    struct Session {
        explicit Session(telemetry::SessionJournal j) : journal(std::move(j)) {}
        mutable std::mutex mu;
        mutable std::condition_variable changed;
        telemetry::SessionJournal journal;
    };

    std::shared_ptr<Session> find(const std::string& id) const;
    std::optional<std::filesystem::path> log_path(const std::string& id) const;
    std::string next_id();

    ServiceConfig config_;
    mutable std::shared_mutex mu_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t id_counter_ = 0;
};

bool valid_session_id(std::string_view id);

}  // namespace trajplan::service
