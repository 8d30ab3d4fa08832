#include <sstream>

#include "doctest.h"
#include "support/live_server.hpp"
#include "support/temp_dir.hpp"
#include "trajplan/cli/commands.hpp"
#include "trajplan/mcda/csv.hpp"
#include "trajplan/sim/scenario.hpp"

using namespace trajplan;
using trajplan::testing::TempDir;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "trajplan");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const char* kHepatectomyCriteria = R"([
  {"id": "jejunal", "direction": "benefit", "priority": 10},
  {"id": "bile_duct", "direction": "cost", "priority": 10},
  {"id": "ebl", "direction": "cost", "priority": 40, "threshold": {"kind": "max", "value": 0.5}},
  {"id": "vc", "direction": "benefit", "priority": 40, "threshold": {"kind": "min", "value": 0.05}}
])";

}  // namespace

TEST_CASE("rank examples") {
    TempDir dir;
    testing::spit(dir / "criteria.json", kHepatectomyCriteria);
    const auto matrix = sim::final_matrix(sim::load_scenario("hepatectomy"), 42);
    testing::spit(dir / "m.csv", mcda::write_matrix_csv(matrix));

    auto r = run({"rank", "--matrix", (dir / "m.csv").string(), "--criteria", (dir / "criteria.json").string()});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("best 1\n", 0) == 0);

    r = run({"rank", "--matrix", (dir / "m.csv").string(), "--criteria", (dir / "criteria.json").string(),
             "--json"});
    CHECK(r.code == 0);
    CHECK(r.out == mcda::to_json(mcda::topsis(matrix)).dump() + "\n");

    testing::spit(dir / "one.csv", "id,jejunal,bile_duct,ebl,vc\n1,0.5,5,0.1,0.4\n");
    r = run({"rank", "--matrix", (dir / "one.csv").string(), "--criteria", (dir / "criteria.json").string()});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("best 1\n", 0) == 0);
    CHECK(r.out.find("degenerate") != std::string::npos);

    testing::spit(dir / "short.csv", "id,jejunal,bile_duct,ebl\n1,0.5,5,0.1\n");
    r = run({"rank", "--matrix", (dir / "short.csv").string(), "--criteria", (dir / "criteria.json").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("vc") != std::string::npos);

    testing::spit(dir / "bad.csv", "id,jejunal,bile_duct,ebl,vc\n1,0.5,5,0.9,0.4\n2,0.5,5,0.1,0.01\n");
    r = run({"rank", "--matrix", (dir / "bad.csv").string(), "--criteria", (dir / "criteria.json").string()});
    CHECK(r.code == 2);
    CHECK(r.out.find("alternative 1: ebl") != std::string::npos);
    CHECK(r.out.find("alternative 2: vc") != std::string::npos);

    r = run({"rank", "--matrix", (dir / "missing.csv").string(), "--criteria",
             (dir / "criteria.json").string()});
    CHECK(r.code == 1);
}

TEST_CASE("criteria files with exact weights are taken as given") {
    TempDir dir;
    testing::spit(dir / "w.json", R"([{"id":"a","direction":"cost","weight":0.3},
                                      {"id":"b","direction":"benefit","weight":0.7}])");
    auto c = cli::load_criteria_file(dir / "w.json");
    CHECK(c.weights() == std::vector<double>{0.3, 0.7});
    testing::spit(dir / "p.json", R"([{"id":"a","direction":"cost","priority":30},
                                      {"id":"b","direction":"benefit","priority":70}])");
    CHECK(cli::load_criteria_file(dir / "p.json").weights() == c.weights());
}

TEST_CASE("simulate to a file is deterministic") {
    TempDir dir;
    auto a = run({"simulate", "--scenario", "hepatectomy", "--seed", "42", "--frames", "20", "--to-file",
                  (dir / "a.ndjson").string()});
    auto b = run({"simulate", "--scenario", "hepatectomy", "--seed", "42", "--frames", "20", "--to-file",
                  (dir / "b.ndjson").string()});
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    const auto text = testing::slurp(dir / "a.ndjson");
    CHECK(text == testing::slurp(dir / "b.ndjson"));
    std::string expected;
    for (const auto& f : sim::generate_stream(sim::load_scenario("hepatectomy"), 42, 20, "sim"))
        expected += telemetry::serialize_frame(f) + "\n";
    CHECK(text == expected);

    auto r = run({"simulate", "--scenario", "nope", "--seed", "1", "--to-file", (dir / "x").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("nope") != std::string::npos);
    CHECK(run({"simulate", "--scenario", "whipple"}).code == 1);
}

TEST_CASE("simulate to a live server matches offline ranking") {
    TempDir dir;
    service::ServiceConfig config;
    config.log_dir = dir / "logs";
    service::PlannerService planner(config);
    testing::LiveServer server(planner);

    auto r = run({"simulate", "--scenario", "hepatectomy", "--seed", "42", "--frames", "20", "--to-addr",
                  "127.0.0.1:" + std::to_string(server.port()), "--session", "live"});
    REQUIRE(r.code == 0);
    const auto live = planner.get_ranking("live");
    CHECK(r.out == adaptive::to_json(live).dump() + "\n");
    CHECK(live.recommended_id == 1);

    testing::spit(dir / "m.csv", mcda::write_matrix_csv(planner.snapshot("live").matrix()));
    testing::spit(dir / "c.json", kHepatectomyCriteria);
    auto offline = run({"rank", "--matrix", (dir / "m.csv").string(), "--criteria", (dir / "c.json").string(),
                        "--json"});
    CHECK(offline.code == 0);
    CHECK(offline.out == mcda::to_json(live.ranking).dump() + "\n");

    auto dup = run({"simulate", "--scenario", "hepatectomy", "--to-addr",
                    "127.0.0.1:" + std::to_string(server.port()), "--session", "live"});
    CHECK(dup.code == 1);
}

TEST_CASE("replay reports the final state") {
    TempDir dir;
    {
        service::ServiceConfig config;
        config.log_dir = dir.path();
        service::PlannerService planner(config);
        auto id = planner.create_session("hepatectomy", "r1").id;
        planner.ingest(id, sim::generate_stream(sim::load_scenario("hepatectomy"), 42, 20, id));
        planner.post_selection(id, 3);
    }
    const auto log = (dir / "r1.log").string();
    auto r = run({"replay", "--log", log, "--matrix-out", (dir / "m.csv").string(), "--criteria-out",
                  (dir / "c.json").string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("session r1 (open)") != std::string::npos);
    CHECK(r.out.find("final recommendation at revision 21") != std::string::npos);

    auto j = run({"replay", "--log", log, "--json"});
    CHECK(j.code == 0);
    const auto report = Json::parse(j.out);
    CHECK(report["revision"] == 21);
    CHECK(report["feedback"] == 1);

    auto offline = run({"rank", "--matrix", (dir / "m.csv").string(), "--criteria", (dir / "c.json").string(),
                        "--json"});
    CHECK(offline.code == 0);
    CHECK(Json::parse(offline.out) == report["recommendation"]["ranking"]);

    testing::spit(dir / "gap.log", testing::slurp(log) + "{\"seq\":99,\"kind\":\"Frame\"}\n");
    auto bad = run({"replay", "--log", (dir / "gap.log").string()});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("error") != std::string::npos);
    CHECK(run({"replay", "--log", (dir / "none.log").string()}).code == 1);
}

TEST_CASE("serve") {
    CHECK(run({"serve", "--addr", "not-an-address"}).code == 1);
    CHECK(run({"serve", "--addr", "127.0.0.1:99999"}).code == 1);

    TempDir dir;
    {
        service::ServiceConfig config;
        config.log_dir = dir.path();
        service::PlannerService planner(config);
        planner.create_session("whipple", "kept");
    }
    auto boot = [&](const std::filesystem::path& logs) {
        cli::ServeOptions options;
        options.addr = "127.0.0.1:0";
        options.log_dir = logs;
        int seen_port = -1;
        std::string listed;
        std::thread probe;
        options.on_ready = [&](service::HttpServer& http, int port) {
            seen_port = port;
            probe = std::thread([&http, port, &listed] {
                httplib::Client c("127.0.0.1", port);
                for (int k = 0; k < 200 && !http.running(); ++k)
                    std::this_thread::sleep_for(std::chrono::milliseconds(5));
                if (auto res = c.Get("/sessions")) listed = res->body;
                http.stop();
            });
        };
        options.on_stopped = [&] { probe.join(); };
        std::ostringstream out, err;
        const int code = cli::cmd_serve(options, out, err);
        CHECK(seen_port > 0);
        return std::make_pair(code, listed);
    };
    auto [code, listed] = boot(dir.path());
    CHECK(code == 0);
    CHECK(Json::parse(listed).size() == 1);
    CHECK(Json::parse(listed)[0]["id"] == "kept");

    TempDir empty;
    auto [code2, listed2] = boot(empty.path());
    CHECK(code2 == 0);
    CHECK(Json::parse(listed2).empty());
}

TEST_CASE("scenario and usage") {
    auto r = run({"scenario", "whipple"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["name"] == "whipple");
    CHECK(run({"scenario", "nope"}).code == 1);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({}).code != 0);
    CHECK(run({"rank"}).code != 0);
}
