#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "trajplan/adaptive/types.hpp"

namespace trajplan::telemetry {

enum class EventKind {
    SessionCreated,
    CriteriaSet,
    Frame,
    Recommendation,
    Feedback,
    Alert,
    WeightsUpdated,
    SessionClosed,
};

std::string_view to_string(EventKind kind);
EventKind parse_event_kind(std::string_view s);

struct EventRecord {
    std::uint64_t seq = 0;
    EventKind kind = EventKind::SessionCreated;
    Timestamp ts = 0;
    Json payload;

    bool operator==(const EventRecord& other) const;
};

// One line, no trailing newline: {"seq":..,"kind":..,"ts":..,"payload":{..}}.
std::string serialize_record(const EventRecord& record);

/// Inverse of serialize_record; serialize(parse(line)) == line for any line
/// serialize produced. Throws CorruptLogError tagged with `expected_seq`.
EventRecord parse_record(std::string_view line, std::uint64_t expected_seq);

/// Reads a whole log, enforcing sequence numbers contiguous from 1.
std::vector<EventRecord> read_log(const std::filesystem::path& path);
std::vector<EventRecord> read_log_text(std::string_view text);

// Append-only line writer. Every append is flushed before returning.
class EventLog {
public:
    EventLog() = default;
    explicit EventLog(std::filesystem::path path);

    bool enabled() const { return out_.is_open(); }
    const std::filesystem::path& path() const { return path_; }
    void append(const EventRecord& record);

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

}  // namespace trajplan::telemetry
