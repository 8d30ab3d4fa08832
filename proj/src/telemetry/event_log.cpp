#include "trajplan/telemetry/event_log.hpp"

#include <sstream>

namespace trajplan::telemetry {

namespace {

constexpr EventKind kAllKinds[] = {
    EventKind::SessionCreated, EventKind::CriteriaSet, EventKind::Frame,
    EventKind::Recommendation, EventKind::Feedback,    EventKind::Alert,
    EventKind::WeightsUpdated, EventKind::SessionClosed,
};

}  // namespace

std::string_view to_string(EventKind kind) {
    switch (kind) {
        case EventKind::SessionCreated: return "SessionCreated";
        case EventKind::CriteriaSet: return "CriteriaSet";
        case EventKind::Frame: return "Frame";
        case EventKind::Recommendation: return "Recommendation";
        case EventKind::Feedback: return "Feedback";
        case EventKind::Alert: return "Alert";
        case EventKind::WeightsUpdated: return "WeightsUpdated";
        case EventKind::SessionClosed: return "SessionClosed";
    }
    return "?";
}

EventKind parse_event_kind(std::string_view s) {
    for (auto k : kAllKinds)
        if (to_string(k) == s) return k;
    throw Error(ErrorCode::CorruptLog, "unknown event kind '" + std::string(s) + "'");
}

bool EventRecord::operator==(const EventRecord& other) const {
    return seq == other.seq && kind == other.kind && ts == other.ts &&
           payload.dump() == other.payload.dump();
}

std::string serialize_record(const EventRecord& record) {
    Json j;
    j["seq"] = record.seq;
    j["kind"] = to_string(record.kind);
    j["ts"] = record.ts;
    j["payload"] = record.payload;
    return j.dump();
}

EventRecord parse_record(std::string_view line, std::uint64_t expected_seq) {
    Json j;
    try {
        j = Json::parse(line.begin(), line.end());
    } catch (const Json::exception& e) {
        throw CorruptLogError(expected_seq, e.what());
    }
    try {
        if (!j.is_object() || j.size() != 4 || !j.contains("payload"))
            throw CorruptLogError(expected_seq, "record must be {seq, kind, ts, payload}");
        EventRecord r;
        r.seq = j.at("seq").get<std::uint64_t>();
        r.kind = parse_event_kind(j.at("kind").get<std::string>());
        r.ts = j.at("ts").get<Timestamp>();
        r.payload = j.at("payload");
        return r;
    } catch (const CorruptLogError&) {
        throw;
    } catch (const std::exception& e) {
        throw CorruptLogError(expected_seq, e.what());
    }
}

std::vector<EventRecord> read_log_text(std::string_view text) {
    std::vector<EventRecord> records;
    std::size_t start = 0;
    while (start < text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(start, nl - start);
        start = nl + 1;
        if (line.empty()) continue;
        const std::uint64_t expected = records.size() + 1;
        auto record = parse_record(line, expected);
        if (record.seq != expected)
            throw CorruptLogError(expected, "found sequence " + std::to_string(record.seq));
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<EventRecord> read_log(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::CorruptLog, "cannot open log " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_log_text(buf.str());
}

EventLog::EventLog(std::filesystem::path path) : path_(std::move(path)) {
    out_.open(path_, std::ios::binary | std::ios::app);
    if (!out_) throw Error(ErrorCode::InvalidRequest, "cannot open log " + path_.string());
}

void EventLog::append(const EventRecord& record) {
    if (!out_.is_open()) return;
    out_ << serialize_record(record) << '\n';
    out_.flush();
}

}  // namespace trajplan::telemetry
