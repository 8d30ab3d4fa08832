#pragma once

#include <chrono>
#include <stdexcept>
#include <thread>

#include "httplib.h"
#include "trajplan/service/http_server.hpp"

namespace trajplan::testing {

// An HTTP front end on an ephemeral loopback port, served from a thread.
class LiveServer {
public:
    explicit LiveServer(service::PlannerService& planner) : http_(planner) {
        port_ = http_.bind_any_port("127.0.0.1");
        if (port_ < 0) throw std::runtime_error("cannot bind loopback port");
        thread_ = std::thread([this] { http_.listen_after_bind(); });
        while (!http_.running()) std::this_thread::sleep_for(std::chrono::milliseconds(1));
    }
    ~LiveServer() {
        http_.stop();
        thread_.join();
    }

    int port() const { return port_; }
    httplib::Client client() const {
        httplib::Client c("127.0.0.1", port_);
        c.set_read_timeout(10, 0);
        return c;
    }

private:
    service::HttpServer http_;
    int port_ = -1;
    std::thread thread_;
};

}  // namespace trajplan::testing
