#pragma once

#include <memory>
#include <string>

#include "trajplan/service/planner_service.hpp"

namespace httplib {
class Server;
}

namespace trajplan::service {

int http_status(ErrorCode code);
std::string error_body(ErrorCode code, const std::string& message);

/// HTTP binding of PlannerService:
///
///   POST   /sessions                      {"scenario"?, "id"?}
///   GET    /sessions, /sessions/{id}
///   DELETE /sessions/{id}
///   PUT    /sessions/{id}/criteria        criteria with percent priorities
///   POST   /sessions/{id}/telemetry       newline-delimited frames
///   GET    /sessions/{id}/ranking?revision=
///   POST   /sessions/{id}/selection       {"chosen_id"}
///   POST   /sessions/{id}/feedback        {"chosen_id", "verdict"?}
///   GET    /sessions/{id}/events?from=&wait_ms=
///   GET    /sessions/{id}/matrix          current matrix as CSV
///   GET    /sessions/{id}/criteria        current criteria
///
/// Error responses carry {"error": {"code", "message"}} with the code named
/// after the failing contract (SessionNotFound, NotReady, ...).
class HttpServer {
public:
    explicit HttpServer(PlannerService& service);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    bool bind(const std::string& host, int port);
    // Binds an ephemeral port and returns it, or -1.
    int bind_any_port(const std::string& host);
    // Blocks until stop().
    bool listen_after_bind();
    void stop();
    bool running() const;

private:
    void install_routes();

    PlannerService& service_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace trajplan::service
