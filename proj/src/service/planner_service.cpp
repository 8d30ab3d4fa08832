#include "trajplan/service/planner_service.hpp"

#include <algorithm>

#include "trajplan/sim/scenario.hpp"

namespace trajplan::service {

using telemetry::SessionJournal;

Json to_json(const SessionDescriptor& d) {
    Json j;
    j["id"] = d.id;
    j["scenario"] = d.scenario ? Json(*d.scenario) : Json();
    j["created_at"] = d.created_at;
    j["revision"] = d.revision;
    j["status"] = d.status == SessionStatus::Open ? "Open" : "Closed";
    return j;
}

bool valid_session_id(std::string_view id) {
    if (id.empty() || id.size() > 64) return false;
    return std::all_of(id.begin(), id.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '-' || c == '_';
    });
}

namespace {

SessionDescriptor describe_state(const SessionState& s) {
    return {s.id, s.scenario, s.created_at, s.revision, s.status};
}

}  // namespace

PlannerService::PlannerService(ServiceConfig config) : config_(std::move(config)) {
    if (config_.log_dir) std::filesystem::create_directories(*config_.log_dir);
}

std::size_t PlannerService::restore() {
    if (!config_.log_dir) return 0;
    std::vector<std::filesystem::path> logs;
    for (const auto& entry : std::filesystem::directory_iterator(*config_.log_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".log") logs.push_back(entry.path());
    std::sort(logs.begin(), logs.end());

    std::unique_lock lock(mu_);
    std::size_t restored = 0;
    for (const auto& path : logs) {
        try {
            auto journal = SessionJournal::restore(path, config_.clock);
            const auto id = journal.state().id;
            if (id.empty()) continue;
            if (id != path.stem().string())
                throw CorruptLogError(1, "log " + path.filename().string() + " belongs to session '" +
                                             id + "'");
            sessions_[id] = std::make_shared<Session>(std::move(journal));
            ++restored;
        } catch (const CorruptLogError& e) {
            throw CorruptLogError(e.sequence(), path.string() + ": " + e.what());
        }
    }
    return restored;
}

std::optional<std::filesystem::path> PlannerService::log_path(const std::string& id) const {
    if (!config_.log_dir) return std::nullopt;
    return *config_.log_dir / (id + ".log");
}

std::string PlannerService::next_id() {
    while (true) {
        auto id = "s" + std::to_string(++id_counter_);
        if (!sessions_.contains(id)) return id;
    }
}

SessionDescriptor PlannerService::create_session(std::optional<std::string> scenario,
                                                 std::optional<std::string> id) {
    SessionJournal::Options options;
    options.learning_rate = config_.learning_rate;
    if (scenario) {
        auto s = sim::load_scenario(*scenario);
        options.scenario = s.name;
        options.criteria = s.criteria_set();
    }

    std::unique_lock lock(mu_);
    if (id) {
        if (!valid_session_id(*id))
            throw Error(ErrorCode::InvalidRequest, "session id must match [A-Za-z0-9_-]{1,64}");
        if (sessions_.contains(*id))
            throw Error(ErrorCode::InvalidRequest, "session '" + *id + "' already exists");
    } else {
        id = next_id();
    }
    options.log_path = log_path(*id);
    if (options.log_path && std::filesystem::exists(*options.log_path))
        throw Error(ErrorCode::InvalidRequest, "a log for session '" + *id + "' already exists");

    auto journal = SessionJournal::create(*id, std::move(options), config_.clock);
    auto session = std::make_shared<Session>(std::move(journal));
    auto descriptor = describe_state(session->journal.state());
    sessions_.emplace(*id, std::move(session));
    return descriptor;
}

std::shared_ptr<PlannerService::Session> PlannerService::find(const std::string& id) const {
    std::shared_lock lock(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorCode::SessionNotFound, "no session '" + id + "'");
    return it->second;
}

SessionDescriptor PlannerService::describe(const std::string& id) const {
    auto s = find(id);
    std::lock_guard lock(s->mu);
    return describe_state(s->journal.state());
}

std::vector<SessionDescriptor> PlannerService::list() const {
    std::vector<std::shared_ptr<Session>> all;
    {
        std::shared_lock lock(mu_);
        for (const auto& [id, s] : sessions_) all.push_back(s);
    }
    std::vector<SessionDescriptor> out;
    for (const auto& s : all) {
        std::lock_guard lock(s->mu);
        out.push_back(describe_state(s->journal.state()));
    }
    return out;
}

void PlannerService::close_session(const std::string& id) {
    auto s = find(id);
    std::lock_guard lock(s->mu);
    s->journal.close();
    s->changed.notify_all();
}

Revision PlannerService::set_criteria(const std::string& id, mcda::CriteriaSet criteria) {
    auto s = find(id);
    std::lock_guard lock(s->mu);
    auto rev = s->journal.set_criteria(std::move(criteria));
    s->changed.notify_all();
    return rev;
}

Revision PlannerService::ingest(const std::string& id,
                                std::span<const telemetry::TelemetryFrame> frames,
                                std::vector<std::string>* diagnostics) {
    auto s = find(id);
    std::lock_guard lock(s->mu);
    const auto& state = s->journal.state();
    if (state.status != SessionStatus::Open)
        throw Error(ErrorCode::SessionNotFound, "session '" + id + "' is closed");
    if (frames.empty()) throw Error(ErrorCode::MalformedFrame, "request carries no frames");
    if (!state.criteria)
        throw Error(ErrorCode::UnknownCriterion, "session '" + id + "' has no criteria yet");
    for (const auto& f : frames) {
        if (f.session_id != id)
            throw Error(ErrorCode::MalformedFrame,
                        "frame for session '" + f.session_id + "' posted to '" + id + "'");
        telemetry::resolve_criteria(f, *state.criteria);
    }
    Revision rev = state.revision;
    for (const auto& f : frames) rev = s->journal.apply_frame(f, diagnostics);
    s->changed.notify_all();
    return rev;
}

adaptive::Recommendation PlannerService::get_ranking(const std::string& id,
                                                     std::optional<Revision> revision) const {
    auto s = find(id);
    std::lock_guard lock(s->mu);
    const auto& state = s->journal.state();
    const Revision rev = revision.value_or(state.revision);
    const auto* outcome = state.outcome(rev);
    if (!outcome)
        throw Error(ErrorCode::NotReady,
                    "session '" + id + "' has no ranking at revision " + std::to_string(rev));
    if (!outcome->recommendation) throw mcda::AllInfeasibleError(outcome->infeasible);
    return *outcome->recommendation;
}

telemetry::SelectionResult PlannerService::post_selection(const std::string& id,
                                                          mcda::AlternativeId chosen) {
    auto s = find(id);
    std::lock_guard lock(s->mu);
    auto result = s->journal.select(chosen);
    s->changed.notify_all();
    return result;
}

telemetry::SelectionResult PlannerService::post_feedback(const std::string& id,
                                                         mcda::AlternativeId chosen,
                                                         std::optional<adaptive::Verdict> verdict) {
    auto s = find(id);
    std::lock_guard lock(s->mu);
    auto result = s->journal.feedback(chosen, verdict);
    s->changed.notify_all();
    return result;
}

std::vector<telemetry::EventRecord> PlannerService::event_feed(const std::string& id,
                                                               std::uint64_t from,
                                                               std::chrono::milliseconds wait) const {
    auto s = find(id);
    std::unique_lock lock(s->mu);
    if (wait.count() > 0) {
        s->changed.wait_for(lock, wait, [&] { return s->journal.events().size() > from; });
    }
    return s->journal.events_after(from);
}

SessionState PlannerService::snapshot(const std::string& id) const {
    auto s = find(id);
    std::lock_guard lock(s->mu);
    return s->journal.state();
}

}  // namespace trajplan::service
