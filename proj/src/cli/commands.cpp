#include "trajplan/cli/commands.hpp"

#include <pthread.h>

#include <cerrno>
#include <charconv>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "httplib.h"
#include "trajplan/mcda/csv.hpp"
#include "trajplan/mcda/json_io.hpp"
#include "trajplan/sim/scenario.hpp"
#include "trajplan/telemetry/session_log.hpp"

namespace trajplan::cli {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidRequest, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidRequest, "cannot write " + path.string());
    out << text;
    if (!out.flush()) throw Error(ErrorCode::InvalidRequest, "cannot write " + path.string());
}

std::string describe(const mcda::Violation& v) {
    std::ostringstream s;
    s << v.criterion_id << " = " << mcda::format_double(v.measured)
      << (v.threshold.kind == mcda::BoundKind::Max ? " exceeds max " : " below min ")
      << mcda::format_double(v.threshold.value);
    return s.str();
}

void print_reports(const std::vector<mcda::ViolationReport>& reports, std::ostream& out) {
    for (const auto& r : reports) {
        out << "  alternative " << r.alternative << ":";
        for (std::size_t k = 0; k < r.violations.size(); ++k)
            out << (k == 0 ? " " : "; ") << describe(r.violations[k]);
        out << '\n';
    }
}

void print_ranking(const mcda::Ranking& r, std::ostream& out) {
    out << "best " << r.best_id << '\n';
    out << "rank  id  score\n";
    for (std::size_t k = 0; k < r.order.size(); ++k)
        out << k + 1 << "  " << r.order[k] << "  " << mcda::format_double(r.score_of(r.order[k]))
            << '\n';
    if (r.degenerate) out << "degenerate: separations vanished, affected scores set to 1\n";
    if (!r.zero_columns.empty()) {
        out << "zero columns:";
        for (const auto& c : r.zero_columns) out << ' ' << c;
        out << '\n';
    }
    if (!r.excluded.empty()) {
        out << "excluded:\n";
        print_reports(r.excluded, out);
    }
}

std::string ndjson(const std::vector<telemetry::TelemetryFrame>& frames) {
    std::string text;
    for (const auto& f : frames) {
        text += telemetry::serialize_frame(f);
        text += '\n';
    }
    return text;
}

std::string response_error(const httplib::Result& res) {
    if (!res) return "request failed: " + httplib::to_string(res.error());
    return "HTTP " + std::to_string(res->status) + ": " + res->body;
}

// Blocks SIGINT/SIGTERM in the calling thread (and threads it spawns) and
// stops `server` when one arrives.
class SignalStopper {
public:
    explicit SignalStopper(service::HttpServer& server) {
        sigemptyset(&set_);
        sigaddset(&set_, SIGINT);
        sigaddset(&set_, SIGTERM);
        sigaddset(&set_, SIGUSR1);
        pthread_sigmask(SIG_BLOCK, &set_, &previous_);
        thread_ = std::thread([this, &server] {
            int sig = 0;
            sigwait(&set_, &sig);
            if (sig != SIGUSR1) server.stop();
        });
    }
    ~SignalStopper() {
        pthread_kill(thread_.native_handle(), SIGUSR1);
        thread_.join();
        pthread_sigmask(SIG_SETMASK, &previous_, nullptr);
    }

private:
    sigset_t set_{};
    sigset_t previous_{};
    std::thread thread_;
};

}  // namespace

Address parse_address(const std::string& text) {
    const auto colon = text.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == text.size())
        throw Error(ErrorCode::InvalidRequest, "address must be host:port, got '" + text + "'");
    Address a;
    a.host = text.substr(0, colon);
    const auto port = std::string_view(text).substr(colon + 1);
    auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), a.port);
    if (ec != std::errc() || ptr != port.data() + port.size() || a.port < 0 || a.port > 65535)
        throw Error(ErrorCode::InvalidRequest, "invalid port in address '" + text + "'");
    return a;
}

mcda::CriteriaSet load_criteria_file(const std::filesystem::path& path,
                                     std::vector<std::string>* warnings) {
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidCriteria, path.string() + ": " + e.what());
    }
    const Json& entries = j.is_object() && j.contains("criteria") ? j["criteria"] : j;
    bool exact = entries.is_array() && !entries.empty();
    for (const auto& e : entries)
        if (!e.is_object() || e.contains("priority") || !e.contains("weight")) exact = false;
    return exact ? mcda::criteria_from_json(j) : mcda::criteria_from_priorities_json(j, warnings);
}

int cmd_rank(const RankOptions& options, std::ostream& out, std::ostream& err) {
    try {
        std::vector<std::string> warnings;
        auto criteria = load_criteria_file(options.criteria, &warnings);
        for (const auto& w : warnings) err << "warning: " << w << '\n';
        auto matrix = mcda::read_matrix_csv(read_file(options.matrix), criteria);
        auto ranking = mcda::topsis(matrix);
        if (options.json)
            out << mcda::to_json(ranking).dump() << '\n';
        else
            print_ranking(ranking, out);
        return kExitOk;
    } catch (const mcda::AllInfeasibleError& e) {
        if (options.json) {
            Json j;
            j["error"] = to_string(e.code());
            j["violations"] = mcda::to_json(e.reports());
            out << j.dump() << '\n';
        } else {
            out << "all alternatives infeasible:\n";
            print_reports(e.reports(), out);
        }
        err << "error: " << e.what() << '\n';
        return kExitAllInfeasible;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

int cmd_serve(const ServeOptions& options, std::ostream& out, std::ostream& err) {
    try {
        const auto addr = parse_address(options.addr);
        service::ServiceConfig config;
        config.log_dir = options.log_dir;
        service::PlannerService planner(config);
        const auto restored = planner.restore();

        service::HttpServer server(planner);
        int port = addr.port;
        if (port == 0) {
            port = server.bind_any_port(addr.host);
            if (port < 0) throw Error(ErrorCode::InvalidRequest, "cannot bind " + options.addr);
        } else if (!server.bind(addr.host, port)) {
            throw Error(ErrorCode::InvalidRequest, "cannot bind " + options.addr);
        }
        out << "listening on " << addr.host << ':' << port << ", " << restored
            << " session(s) restored" << std::endl;

        std::optional<SignalStopper> stopper;
        if (options.handle_signals) stopper.emplace(server);
        if (options.on_ready) options.on_ready(server, port);
        server.listen_after_bind();
        if (options.on_stopped) options.on_stopped();
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
    try {
        if (options.to_addr.has_value() == options.to_file.has_value())
            throw Error(ErrorCode::InvalidRequest, "exactly one of --to-addr and --to-file is required");
        if (options.frames == 0) throw Error(ErrorCode::InvalidRequest, "--frames must be at least 1");
        const auto scenario = sim::load_scenario(options.scenario);

        if (options.to_file) {
            const auto id = options.session.value_or("sim");
            const auto frames = sim::generate_stream(scenario, options.seed, options.frames, id);
            write_file(*options.to_file, ndjson(frames));
            out << "wrote " << frames.size() << " frame(s) for session " << id << " to "
                << options.to_file->string() << '\n';
            return kExitOk;
        }

        const auto addr = parse_address(*options.to_addr);
        httplib::Client client(addr.host, addr.port);
        client.set_read_timeout(30, 0);

        Json create;
        create["scenario"] = options.scenario;
        if (options.session) create["id"] = *options.session;
        auto res = client.Post("/sessions", create.dump(), "application/json");
        if (!res || res->status != 201) throw Error(ErrorCode::InvalidRequest, response_error(res));
        const auto id = Json::parse(res->body)["id"].get<std::string>();

        const auto frames = sim::generate_stream(scenario, options.seed, options.frames, id);
        for (std::size_t k = 0; k < frames.size(); ++k) {
            if (options.realtime && k > 0)
                std::this_thread::sleep_for(std::chrono::milliseconds(scenario.frame_interval_ms));
            res = client.Post("/sessions/" + id + "/telemetry",
                              telemetry::serialize_frame(frames[k]) + "\n", "application/x-ndjson");
            if (!res || res->status != 200) throw Error(ErrorCode::InvalidRequest, response_error(res));
        }

        res = client.Get("/sessions/" + id + "/ranking");
        if (!res) throw Error(ErrorCode::InvalidRequest, response_error(res));
        out << res->body << '\n';
        if (res->status == 422) return kExitAllInfeasible;
        if (res->status != 200) throw Error(ErrorCode::InvalidRequest, response_error(res));
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

int cmd_replay(const ReplayOptions& options, std::ostream& out, std::ostream& err) {
    try {
        const auto state = telemetry::replay(options.log);
        if (options.matrix_out) write_file(*options.matrix_out, mcda::write_matrix_csv(state.matrix()));
        if (options.criteria_out) {
            if (!state.criteria) throw Error(ErrorCode::EmptySession, "log defines no criteria");
            write_file(*options.criteria_out, mcda::to_json(*state.criteria).dump(2) + "\n");
        }

        const auto history = state.recommendation_history();
        if (options.json) {
            Json j;
            j["session"] = state.id;
            j["scenario"] = state.scenario ? Json(*state.scenario) : Json();
            j["status"] = state.status == SessionStatus::Open ? "Open" : "Closed";
            j["revision"] = state.revision;
            j["events"] = state.last_sequence;
            j["criteria"] = state.criteria ? mcda::to_json(*state.criteria) : Json::array();
            j["recommendation"] = history.empty() ? Json() : adaptive::to_json(history.back());
            j["recommendations"] = history.size();
            j["feedback"] = state.feedback.size();
            j["alerts"] = state.alerts.size();
            out << j.dump() << '\n';
            return kExitOk;
        }

        out << "session " << state.id << (state.status == SessionStatus::Open ? " (open)" : " (closed)")
            << '\n';
        if (state.scenario) out << "scenario " << *state.scenario << '\n';
        out << "events " << state.last_sequence << ", revision " << state.revision << ", alternatives "
            << state.cells.size() << '\n';
        if (state.criteria) {
            out << "weights";
            for (const auto& c : state.criteria->criteria())
                out << ' ' << c.id << '=' << mcda::format_double(c.weight);
            out << '\n';
        }
        out << "recommendations " << history.size() << ", feedback " << state.feedback.size()
            << ", alerts " << state.alerts.size() << '\n';
        if (!history.empty()) {
            const auto& last = history.back();
            out << "final recommendation at revision " << last.matrix_revision << ":\n";
            print_ranking(last.ranking, out);
        } else if (const auto* o = state.outcome(state.revision); o && !o->infeasible.empty()) {
            out << "all alternatives infeasible at revision " << state.revision << ":\n";
            print_reports(o->infeasible, out);
        }
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

int cmd_scenario(const std::string& name, std::ostream& out, std::ostream& err) {
    try {
        out << sim::to_json(sim::load_scenario(name)).dump(2) << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Trajectory planning decision support"};
    app.require_subcommand(1);

    RankOptions rank;
    auto* rank_cmd = app.add_subcommand("rank", "Rank the alternatives of a CSV decision matrix");
    rank_cmd->add_option("--matrix", rank.matrix, "CSV matrix: id column, then criterion ids")->required();
    rank_cmd->add_option("--criteria", rank.criteria, "criteria JSON")->required();
    rank_cmd->add_flag("--json", rank.json, "emit the ranking as JSON");

    ServeOptions serve;
    serve.handle_signals = true;
    std::string log_dir;
    auto* serve_cmd = app.add_subcommand("serve", "Run the planner service");
    serve_cmd->add_option("--addr", serve.addr, "host:port")->envname("TRAJPLAN_ADDR")->capture_default_str();
    serve_cmd->add_option("--log-dir", log_dir, "event log directory")->envname("TRAJPLAN_LOG_DIR");

    SimulateOptions simulate;
    std::string to_file;
    std::string session;
    auto* sim_cmd = app.add_subcommand("simulate", "Stream a simulated telemetry scenario");
    sim_cmd->add_option("--scenario", simulate.scenario, "built-in name or scenario file")->required();
    sim_cmd->add_option("--seed", simulate.seed, "stream seed")->capture_default_str();
    sim_cmd->add_option("--frames", simulate.frames, "number of frames")->capture_default_str();
    auto* to_addr_opt = sim_cmd->add_option("--to-addr", "send to a running service at host:port");
    auto* to_file_opt = sim_cmd->add_option("--to-file", to_file, "write newline-delimited frames");
    to_addr_opt->excludes(to_file_opt);
    sim_cmd->add_option("--session", session, "session id");
    sim_cmd->add_flag("--realtime", simulate.realtime, "pace frames at the scenario interval");

    ReplayOptions replay;
    std::string matrix_out, criteria_out;
    auto* replay_cmd = app.add_subcommand("replay", "Rebuild a session from its event log");
    replay_cmd->add_option("--log", replay.log, "event log file")->required();
    replay_cmd->add_option("--matrix-out", matrix_out, "write the final matrix as CSV");
    replay_cmd->add_option("--criteria-out", criteria_out, "write the final criteria as JSON");
    replay_cmd->add_flag("--json", replay.json, "emit the report as JSON");

    std::string scenario_name;
    auto* scenario_cmd = app.add_subcommand("scenario", "Print a scenario definition");
    scenario_cmd->add_option("name", scenario_name, "built-in name or scenario file")->required();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    if (*rank_cmd) return cmd_rank(rank, out, err);
    if (*serve_cmd) {
        if (!log_dir.empty()) serve.log_dir = log_dir;
        return cmd_serve(serve, out, err);
    }
    if (*sim_cmd) {
        if (*to_addr_opt) simulate.to_addr = to_addr_opt->as<std::string>();
        if (*to_file_opt) simulate.to_file = to_file;
        if (!session.empty()) simulate.session = session;
        return cmd_simulate(simulate, out, err);
    }
    if (*replay_cmd) {
        if (!matrix_out.empty()) replay.matrix_out = matrix_out;
        if (!criteria_out.empty()) replay.criteria_out = criteria_out;
        return cmd_replay(replay, out, err);
    }
    return cmd_scenario(scenario_name, out, err);
}

}  // namespace trajplan::cli
