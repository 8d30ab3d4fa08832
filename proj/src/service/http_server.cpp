#include "trajplan/service/http_server.hpp"

#include <charconv>

#include "httplib.h"
#include "trajplan/mcda/csv.hpp"

namespace trajplan::service {

namespace {

constexpr auto kJson = "application/json";
constexpr std::int64_t kMaxWaitMs = 30000;

std::uint64_t query_u64(const httplib::Request& req, const char* key, std::uint64_t fallback) {
    if (!req.has_param(key)) return fallback;
    const auto text = req.get_param_value(key);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw Error(ErrorCode::InvalidRequest,
                    std::string("query parameter '") + key + "' must be a nonnegative integer");
    return v;
}

Json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return Json::object();
    try {
        return Json::parse(req.body);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidRequest, std::string("request body is not valid JSON: ") + e.what());
    }
}

mcda::AlternativeId chosen_from(const Json& body) {
    if (!body.is_object() || !body.contains("chosen_id") || !body["chosen_id"].is_number_integer())
        throw Error(ErrorCode::InvalidRequest, "body must carry an integer 'chosen_id'");
    return body["chosen_id"].get<mcda::AlternativeId>();
}

Json selection_json(const telemetry::SelectionResult& r) {
    Json j;
    j["feedback"] = adaptive::to_json(r.feedback);
    j["alert"] = r.alert ? adaptive::to_json(*r.alert) : Json();
    j["weights_changed"] = r.weights_changed;
    j["weights"] = r.weights;
    j["revision"] = r.revision;
    return j;
}

void send(httplib::Response& res, int status, const Json& body) {
    res.status = status;
    res.set_content(body.dump(), kJson);
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
        try {
            handler(req, res);
        } catch (const mcda::AllInfeasibleError& e) {
            auto body = Json::parse(error_body(e.code(), e.what()));
            body["error"]["violations"] = mcda::to_json(e.reports());
            send(res, http_status(e.code()), body);
        } catch (const Error& e) {
            res.status = http_status(e.code());
            res.set_content(error_body(e.code(), e.what()), kJson);
        } catch (const std::exception& e) {
            res.status = 500;
            res.set_content(error_body(ErrorCode::InvalidRequest, e.what()), kJson);
        }
    };
}

}  // namespace

int http_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::SessionNotFound:
        case ErrorCode::UnknownAlternative:
        case ErrorCode::UnknownScenario:
            return 404;
        case ErrorCode::NotReady:
        case ErrorCode::EmptySession:
            return 409;
        case ErrorCode::AllInfeasible:
            return 422;
        case ErrorCode::CorruptLog:
            return 500;
        default:
            return 400;
    }
}

std::string error_body(ErrorCode code, const std::string& message) {
    Json j;
    j["error"]["code"] = to_string(code);
    j["error"]["message"] = message;
    return j.dump();
}

HttpServer::HttpServer(PlannerService& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
    install_routes();
}

HttpServer::~HttpServer() { stop(); }

bool HttpServer::bind(const std::string& host, int port) { return server_->bind_to_port(host, port); }

int HttpServer::bind_any_port(const std::string& host) { return server_->bind_to_any_port(host); }

bool HttpServer::listen_after_bind() { return server_->listen_after_bind(); }

void HttpServer::stop() {
    if (server_) server_->stop();
}

bool HttpServer::running() const { return server_->is_running(); }

void HttpServer::install_routes() {
    auto& s = *server_;
    const std::string session = R"(/sessions/([A-Za-z0-9_-]+))";

    s.Post("/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto body = parse_body(req);
        std::optional<std::string> scenario, id;
        if (body.contains("scenario") && !body["scenario"].is_null())
            scenario = body["scenario"].get<std::string>();
        if (body.contains("id") && !body["id"].is_null()) id = body["id"].get<std::string>();
        send(res, 201, to_json(service_.create_session(scenario, id)));
    }));

    s.Get("/sessions", guarded([this](const httplib::Request&, httplib::Response& res) {
        Json arr = Json::array();
        for (const auto& d : service_.list()) arr.push_back(to_json(d));
        send(res, 200, arr);
    }));

    s.Get(session, guarded([this](const httplib::Request& req, httplib::Response& res) {
        send(res, 200, to_json(service_.describe(req.matches[1])));
    }));

    s.Delete(session, guarded([this](const httplib::Request& req, httplib::Response& res) {
        service_.close_session(req.matches[1]);
        send(res, 200, to_json(service_.describe(req.matches[1])));
    }));

    s.Put(session + "/criteria", guarded([this](const httplib::Request& req, httplib::Response& res) {
        std::vector<std::string> warnings;
        auto criteria = mcda::criteria_from_priorities_json(parse_body(req), &warnings);
        Json j;
        j["revision"] = service_.set_criteria(req.matches[1], criteria);
        j["criteria"] = mcda::to_json(criteria);
        j["warnings"] = warnings;
        send(res, 200, j);
    }));

    s.Get(session + "/criteria", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto state = service_.snapshot(req.matches[1]);
        send(res, 200, state.criteria ? mcda::to_json(*state.criteria) : Json::array());
    }));

    s.Post(session + "/telemetry", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto frames = telemetry::parse_frames(req.body);
        std::vector<std::string> diagnostics;
        Json j;
        j["revision"] = service_.ingest(req.matches[1], frames, &diagnostics);
        j["applied"] = frames.size();
        j["diagnostics"] = diagnostics;
        send(res, 200, j);
    }));

    s.Get(session + "/ranking", guarded([this](const httplib::Request& req, httplib::Response& res) {
        std::optional<Revision> rev;
        if (req.has_param("revision")) rev = query_u64(req, "revision", 0);
        send(res, 200, adaptive::to_json(service_.get_ranking(req.matches[1], rev)));
    }));

    s.Post(session + "/selection", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto chosen = chosen_from(parse_body(req));
        send(res, 200, selection_json(service_.post_selection(req.matches[1], chosen)));
    }));

    s.Post(session + "/feedback", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto body = parse_body(req);
        std::optional<adaptive::Verdict> verdict;
        if (body.contains("verdict") && !body["verdict"].is_null())
            verdict = adaptive::parse_verdict(body["verdict"].get<std::string>());
        send(res, 200,
             selection_json(service_.post_feedback(req.matches[1], chosen_from(body), verdict)));
    }));

    s.Get(session + "/events", guarded([this](const httplib::Request& req, httplib::Response& res) {
        const auto from = query_u64(req, "from", 0);
        const auto wait = std::min<std::int64_t>(
            static_cast<std::int64_t>(query_u64(req, "wait_ms", 0)), kMaxWaitMs);
        auto events = service_.event_feed(req.matches[1], from, std::chrono::milliseconds(wait));
        Json arr = Json::array();
        for (const auto& e : events) arr.push_back(Json::parse(telemetry::serialize_record(e)));
        Json j;
        j["events"] = std::move(arr);
        j["next"] = events.empty() ? from : events.back().seq;
        send(res, 200, j);
    }));

    s.Get(session + "/matrix", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto state = service_.snapshot(req.matches[1]);
        res.status = 200;
        res.set_content(mcda::write_matrix_csv(state.matrix()), "text/csv");
    }));
}

}  // namespace trajplan::service
