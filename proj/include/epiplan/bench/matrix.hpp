// The evaluation harness: enumerates the matrix of (domain, map+team,
// scenario, model) coordinates, runs generate -> compile -> solve ->
// simulate -> measure for each, and collects one record per coordinate.
// Coordinates are independent and may run on several worker threads;
// record order follows coordinate order, not completion time.

#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "epiplan/domains/defaults.hpp"
#include "epiplan/execution/metrics.hpp"
#include "epiplan/execution/simulate.hpp"
#include "epiplan/search/solve.hpp"
#include "epiplan/search/validate_plan.hpp"

namespace epiplan::bench {

struct MapTeam {
    std::string map;  // 3x3 | 4x3 | rooms3 | rooms6
    int team = 3;
};

struct MatrixConfig {
    std::vector<std::string> domains = {"gridworld", "bw4t"};
    std::vector<MapTeam> gridworld_setups = {{"3x3", 3}, {"4x3", 4}};
    std::vector<MapTeam> bw4t_setups = {{"rooms3", 3}, {"rooms6", 4}};
    std::vector<domains::Scenario> scenarios = {
        domains::Scenario::EpistemicGoal, domains::Scenario::NonEpistemicGoal,
        domains::Scenario::CommanderBroadcast, domains::Scenario::CommanderNonBroadcast,
        domains::Scenario::BlockedCells};
    std::vector<domains::CommModel> models = {domains::CommModel::Selective,
                                              domains::CommModel::NoComm,
                                              domains::CommModel::CommAll};
    std::uint64_t seed = 7;
    search::Strategy strategy = search::Strategy::GBFS;
    search::Limits limits;  // 60 s wall clock, 5e6 expansions
    int depth = kDefaultDepth;
    bool turn_taking = true;
    int concurrency = 0;  // 0 = hardware
};

struct Coordinate {
    std::string domain;
    std::string map;
    int team = 0;
    domains::Scenario scenario = domains::Scenario::EpistemicGoal;
    domains::CommModel model = domains::CommModel::Selective;

    std::string label() const {
        return domain + ":" + map + ":" + std::to_string(team) + ":" +
               domains::scenario_token(scenario) + ":" + domains::comm_model_token(model);
    }
};

struct BenchRecord {
    Coordinate at;
    std::uint64_t seed = 0;
    enum class Outcome { Solved, Unsolvable, Limit, Error } outcome = Outcome::Error;
    std::string note;
    std::string strategy;
    std::int64_t expansions = 0;
    std::int64_t generated = 0;
    double planning_ms = 0.0;
    std::vector<std::string> plan;  // ground signatures, no-ops included
    execution::MetricsRecord metrics;
    bool plan_validated = false;
};

inline const char* outcome_text(BenchRecord::Outcome o) {
    switch (o) {
        case BenchRecord::Outcome::Solved: return "solved";
        case BenchRecord::Outcome::Unsolvable: return "unsolvable";
        case BenchRecord::Outcome::Limit: return "limit";
        case BenchRecord::Outcome::Error: return "error";
    }
    return "?";
}

inline BenchRecord::Outcome outcome_from_text(const std::string& s) {
    if (s == "solved") return BenchRecord::Outcome::Solved;
    if (s == "unsolvable") return BenchRecord::Outcome::Unsolvable;
    if (s == "limit") return BenchRecord::Outcome::Limit;
    if (s == "error") return BenchRecord::Outcome::Error;
    throw std::invalid_argument("unknown outcome '" + s + "'");
}

inline std::vector<Coordinate> enumerate_coordinates(const MatrixConfig& c) {
    std::vector<Coordinate> out;
    for (const auto& domain : c.domains) {
        const auto& setups = domain == "gridworld" ? c.gridworld_setups : c.bw4t_setups;
        for (const auto& setup : setups) {
            for (auto scenario : c.scenarios) {
                for (auto model : c.models) {
                    out.push_back({domain, setup.map, setup.team, scenario, model});
                }
            }
        }
    }
    return out;
}

inline domains::GeneratedTask generate_coordinate(const Coordinate& at,
                                                  std::uint64_t seed) {
    if (at.domain == "gridworld") {
        int w, h;
        if (at.map == "3x3") {
            w = 3;
            h = 3;
        } else if (at.map == "4x3") {
            w = 4;
            h = 3;
        } else {
            throw std::invalid_argument("unknown gridworld map '" + at.map + "'");
        }
        return domains::generate(
            domains::default_gridworld_config(w, h, at.team, at.scenario, at.model, seed));
    }
    if (at.domain == "bw4t") {
        int rooms;
        if (at.map == "rooms3") {
            rooms = 3;
        } else if (at.map == "rooms6") {
            rooms = 6;
        } else {
            throw std::invalid_argument("unknown bw4t map '" + at.map + "'");
        }
        return domains::generate(
            domains::default_bw4t_config(rooms, at.team, at.scenario, at.model, seed));
    }
    throw std::invalid_argument("unknown domain '" + at.domain + "'");
}

inline BenchRecord run_coordinate(const Coordinate& at, const MatrixConfig& c) {
    BenchRecord rec;
    rec.at = at;
    rec.seed = c.seed;
    rec.strategy = search::to_string(c.strategy);
    try {
        domains::GeneratedTask g = generate_coordinate(at, c.seed);
        compiler::CompileOptions copts{c.depth, c.turn_taking};
        compiler::ClassicalTask task = compiler::compile(g.domain, g.problem, copts);
        search::SolveResult res = search::solve(task, {c.strategy, c.limits, true});
        rec.expansions = res.expansions;
        rec.generated = res.generated;
        rec.planning_ms = res.planning_ms;
        switch (res.status) {
            case search::SolveResult::Status::Unsolvable:
                rec.outcome = BenchRecord::Outcome::Unsolvable;
                return rec;
            case search::SolveResult::Status::LimitExceeded:
                rec.outcome = BenchRecord::Outcome::Limit;
                return rec;
            case search::SolveResult::Status::Solved:
                break;
        }
        rec.outcome = BenchRecord::Outcome::Solved;
        for (int ai : res.plan->actions) rec.plan.push_back(task.actions[ai].signature());
        rec.plan_validated = search::validate_plan(task, *res.plan).accepted;
        execution::Trace trace = execution::simulate(*res.plan, g.ground_truth, g.domain,
                                                     g.problem, copts);
        auto queries = execution::build_query_set(g.problem, g.domain);
        rec.metrics = execution::metrics(*res.plan, trace, queries,
                                         domains::is_commander_scenario(at.scenario));
    } catch (const std::exception& e) {
        rec.outcome = BenchRecord::Outcome::Error;
        rec.note = e.what();
    }
    return rec;
}

// Runs every coordinate; partial failures land in their records and never
// abort the matrix. Deterministic output order given a fixed seed.
inline std::vector<BenchRecord> run_matrix(const MatrixConfig& c) {
    std::vector<Coordinate> coords = enumerate_coordinates(c);
    std::vector<BenchRecord> records(coords.size());
    int workers = c.concurrency > 0
                      ? c.concurrency
                      : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min<int>(workers, static_cast<int>(coords.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < coords.size(); ++i) {
            records[i] = run_coordinate(coords[i], c);
        }
        return records;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= coords.size()) return;
                records[i] = run_coordinate(coords[i], c);
            }
        });
    }
    for (auto& t : pool) t.join();
    return records;
}

}  // namespace epiplan::bench
