#include "catch_amalgamated.hpp"
#include "epiplan/bench/matrix.hpp"
#include "epiplan/bench/report.hpp"

using namespace epiplan;
using namespace epiplan::bench;
using domains::CommModel;
using domains::Scenario;

namespace {

MatrixConfig tiny_config() {
    MatrixConfig c;
    c.domains = {"gridworld"};
    c.gridworld_setups = {{"3x3", 3}};
    c.scenarios = {Scenario::NonEpistemicGoal};
    c.models = {CommModel::Selective};
    c.concurrency = 1;
    return c;
}

BenchRecord stub_record(const std::string& domain, CommModel model, double time_ms,
                        long actions, long comms) {
    BenchRecord r;
    r.at = {domain, "3x3", 3, Scenario::EpistemicGoal, model};
    r.outcome = BenchRecord::Outcome::Solved;
    r.planning_ms = time_ms;
    r.metrics.total_actions = actions;
    r.metrics.total_communications = comms;
    r.metrics.raw_plan_length = actions;
    r.plan_validated = true;
    return r;
}

}  // namespace

TEST_CASE("a one-coordinate config yields one solved record") {
    auto records = run_matrix(tiny_config());
    REQUIRE(records.size() == 1);
    CHECK(records[0].outcome == BenchRecord::Outcome::Solved);
    CHECK(records[0].plan_validated);
    CHECK(records[0].metrics.total_actions > 0);
}

TEST_CASE("default matrix enumerates 60 coordinates") {
    MatrixConfig c;
    CHECK(enumerate_coordinates(c).size() == 60);
}

TEST_CASE("percentage change follows the reporting convention") {
    std::vector<BenchRecord> records = {
        stub_record("gridworld", CommModel::Selective, 100.0, 100, 5),
        stub_record("gridworld", CommModel::NoComm, 119.0, 119, 0),
        stub_record("gridworld", CommModel::CommAll, 100.0, 100, 20),
    };
    Summary s = summarize(records);
    const auto& ds = s.domains_.at("gridworld");
    auto nocomm_time = ds.change.at(CommModel::NoComm).at("completion_time_ms");
    REQUIRE(nocomm_time.has_value());
    CHECK_THAT(*nocomm_time, Catch::Matchers::WithinAbs(19.0, 1e-9));
    auto commall_actions = ds.change.at(CommModel::CommAll).at("total_actions");
    REQUIRE(commall_actions.has_value());
    CHECK_THAT(*commall_actions, Catch::Matchers::WithinAbs(0.0, 1e-9));
}

TEST_CASE("a zero selective average reports undefined, not infinity") {
    std::vector<BenchRecord> records = {
        stub_record("gridworld", CommModel::Selective, 10.0, 10, 0),
        stub_record("gridworld", CommModel::NoComm, 12.0, 12, 0),
    };
    Summary s = summarize(records);
    auto change = s.domains_.at("gridworld").change.at(CommModel::NoComm);
    CHECK_FALSE(change.at("total_communications").has_value());
    nlohmann::json j = summary_to_json(s);
    CHECK(j["domains"]["gridworld"]["pct_change_vs_selective"]["nocomm"]
           ["total_communications"]
               .is_null());
}

TEST_CASE("records survive the JSON round trip") {
    auto records = run_matrix(tiny_config());
    auto restored = records_from_json(records_to_json(records));
    REQUIRE(restored.size() == records.size());
    CHECK(restored[0].plan == records[0].plan);
    CHECK(restored[0].metrics.total_actions == records[0].metrics.total_actions);
    CHECK(restored[0].metrics.sharedness_percent == records[0].metrics.sharedness_percent);
    CHECK(outcome_text(restored[0].outcome) == std::string("solved"));
}

TEST_CASE("csv has the documented column order and one row per record") {
    auto records = run_matrix(tiny_config());
    std::string csv = records_to_csv(records);
    auto first_line = csv.substr(0, csv.find('\n'));
    CHECK(first_line ==
          "schema,domain,map,team,scenario,model,seed,outcome,strategy,expansions,"
          "planning_ms,raw_plan_length,total_actions,noop_actions,total_communications,"
          "sharedness_percent,plan_validated");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + static_cast<long>(records.size()));
}

TEST_CASE("repeat runs with one seed agree except for wall-clock fields") {
    MatrixConfig c = tiny_config();
    c.scenarios = {Scenario::EpistemicGoal, Scenario::CommanderBroadcast};
    c.models = {CommModel::Selective, CommModel::NoComm, CommModel::CommAll};
    c.concurrency = 2;
    auto first = run_matrix(c);
    auto second = run_matrix(c);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        CAPTURE(first[i].at.label());
        CHECK(first[i].plan == second[i].plan);
        CHECK(first[i].expansions == second[i].expansions);
        CHECK(first[i].metrics.total_actions == second[i].metrics.total_actions);
        CHECK(first[i].metrics.total_communications ==
              second[i].metrics.total_communications);
        CHECK(first[i].metrics.sharedness_percent == second[i].metrics.sharedness_percent);
        CHECK(first[i].metrics.sharedness_trajectory ==
              second[i].metrics.sharedness_trajectory);
    }
}

TEST_CASE("matrix invariants hold on a reduced gridworld matrix") {
    MatrixConfig c = tiny_config();
    c.scenarios = {Scenario::EpistemicGoal, Scenario::NonEpistemicGoal,
                   Scenario::BlockedCells};
    c.models = {CommModel::Selective, CommModel::NoComm, CommModel::CommAll};
    c.concurrency = 2;
    auto records = run_matrix(c);
    REQUIRE(records.size() == 9);
    std::map<std::string, const BenchRecord*> by_label;
    for (const auto& r : records) {
        CHECK(r.outcome == BenchRecord::Outcome::Solved);
        CHECK(r.plan_validated);
        by_label[r.at.label()] = &r;
        if (r.at.model == CommModel::NoComm) {
            CHECK(r.metrics.total_communications == 0);  // action removed outright
        }
    }
    for (const auto& [label, r] : by_label) {
        if (r->at.model != CommModel::Selective) continue;
        std::string commall_label = label;
        commall_label.replace(commall_label.rfind("selective"), 9, "commall");
        const BenchRecord* commall = by_label.at(commall_label);
        CHECK(commall->metrics.total_communications >= r->metrics.total_communications);
    }
}
