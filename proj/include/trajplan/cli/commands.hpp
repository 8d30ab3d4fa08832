#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trajplan/mcda/topsis.hpp"
#include "trajplan/service/http_server.hpp"

namespace trajplan::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitAllInfeasible = 2;

struct Address {
    std::string host;
    int port = 0;
};

/// Parses "host:port" (port 0 picks an ephemeral port). Throws InvalidRequest.
Address parse_address(const std::string& text);

/// Criteria file: an array (or {"criteria": [...]}) of entries with id,
/// direction, priority and an optional threshold. Entries that carry
/// "weight" and no "priority" are taken as exact weights.
mcda::CriteriaSet load_criteria_file(const std::filesystem::path& path,
                                     std::vector<std::string>* warnings = nullptr);

struct RankOptions {
    std::filesystem::path matrix;
    std::filesystem::path criteria;
    bool json = false;
};

int cmd_rank(const RankOptions& options, std::ostream& out, std::ostream& err);

struct ServeOptions {
    std::string addr = "127.0.0.1:8080";
    std::optional<std::filesystem::path> log_dir;
    bool handle_signals = false;
    // Called once the socket is bound, before the accept loop starts.
    std::function<void(service::HttpServer&, int port)> on_ready;
    // Called after the accept loop returns, while the server still exists.
    std::function<void()> on_stopped;
};

int cmd_serve(const ServeOptions& options, std::ostream& out, std::ostream& err);

struct SimulateOptions {
    std::string scenario;
    std::uint64_t seed = 0;
    std::size_t frames = 20;
    std::optional<std::string> to_addr;
    std::optional<std::filesystem::path> to_file;
    std::optional<std::string> session;
    bool realtime = false;
};

int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);

struct ReplayOptions {
    std::filesystem::path log;
    std::optional<std::filesystem::path> matrix_out;
    std::optional<std::filesystem::path> criteria_out;
    bool json = false;
};

int cmd_replay(const ReplayOptions& options, std::ostream& out, std::ostream& err);

int cmd_scenario(const std::string& name, std::ostream& out, std::ostream& err);

/// Parses a full command line (args[0] is the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trajplan::cli
