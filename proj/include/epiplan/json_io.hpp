// JSON forms of the artifacts the CLI reads and writes: compiled tasks,
// plans, traces, metric records, ground truth, and bench records. All
// documents carry "schema": 1.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "epiplan/compiler/compile.hpp"
#include "epiplan/execution/metrics.hpp"
#include "epiplan/execution/simulate.hpp"
#include "epiplan/search/solve.hpp"

namespace epiplan::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json task_to_json(const compiler::ClassicalTask& t) {
    json j;
    j["schema"] = kSchemaVersion;
    j["depth"] = t.depth_bound;
    j["agents"] = t.agents;
    json fluents = json::array();
    for (const auto& f : t.fluents) fluents.push_back(to_text(f));
    j["fluents"] = fluents;
    j["turn_fluents"] = t.turn_fluents;
    j["init"] = t.init;
    j["goal"] = t.goal;
    json actions = json::array();
    for (const auto& a : t.actions) {
        json ja;
        ja["name"] = a.name;
        ja["args"] = a.args;
        ja["actor"] = a.actor;
        if (a.turn_noop) ja["turn_noop"] = true;
        ja["pre"] = a.pre;
        json effects = json::array();
        for (const auto& e : a.effects) {
            effects.push_back({{"guard", e.guard}, {"add", e.adds}, {"del", e.dels}});
        }
        ja["effects"] = effects;
        actions.push_back(std::move(ja));
    }
    j["actions"] = actions;
    return j;
}

struct PlanFile {
    std::string status;  // solved | unsolvable | limit
    int depth = kDefaultDepth;
    bool turns = false;
    search::Plan plan;  // meaningful when status == solved
    std::vector<std::string> signatures;
};

inline const char* status_text(search::SolveResult::Status s) {
    switch (s) {
        case search::SolveResult::Status::Solved: return "solved";
        case search::SolveResult::Status::Unsolvable: return "unsolvable";
        case search::SolveResult::Status::LimitExceeded: return "limit";
    }
    return "?";
}

inline json plan_to_json(const search::SolveResult& res, const compiler::ClassicalTask& t,
                         int depth, bool turns) {
    json j;
    j["schema"] = kSchemaVersion;
    j["status"] = status_text(res.status);
    j["depth"] = depth;
    j["turns"] = turns;
    j["expansions"] = res.expansions;
    j["generated"] = res.generated;
    j["planning_ms"] = res.planning_ms;
    json actions = json::array();
    if (res.plan) {
        j["strategy"] = res.plan->strategy;
        for (int ai : res.plan->actions) {
            const auto& a = t.actions[ai];
            actions.push_back({{"name", a.name}, {"args", a.args}});
        }
    }
    j["actions"] = actions;
    return j;
}

// Rebuilds a Plan against `t` by signature lookup.
inline PlanFile plan_from_json(const json& j, const compiler::ClassicalTask& t) {
    PlanFile out;
    out.status = j.at("status").get<std::string>();
    out.depth = j.value("depth", kDefaultDepth);
    out.turns = j.value("turns", false);
    out.plan.strategy = j.value("strategy", "unknown");
    out.plan.expansions = j.value("expansions", 0);
    out.plan.generated = j.value("generated", 0);
    out.plan.planning_ms = j.value("planning_ms", 0.0);
    for (const auto& ja : j.at("actions")) {
        compiler::CompiledAction probe;
        probe.name = ja.at("name").get<std::string>();
        probe.args = ja.at("args").get<std::vector<std::string>>();
        std::string signature = probe.signature();
        int idx = -1;
        for (std::size_t i = 0; i < t.actions.size(); ++i) {
            if (t.actions[i].signature() == signature) {
                idx = static_cast<int>(i);
                break;
            }
        }
        if (idx < 0) {
            throw std::invalid_argument("plan action " + signature +
                                        " does not exist in the compiled task");
        }
        out.plan.actions.push_back(idx);
        out.signatures.push_back(std::move(signature));
    }
    return out;
}

inline json belief_state_to_json(const BeliefState& s) {
    json out = json::array();
    for (const auto& l : s.literals()) out.push_back(to_text(l));
    return out;
}

inline json trace_to_json(const execution::Trace& trace) {
    json j;
    j["schema"] = kSchemaVersion;
    json steps = json::array();
    for (const auto& s : trace.steps) {
        json js;
        js["actor"] = s.actor;
        js["action"] = s.action;
        js["noop"] = s.is_noop;
        js["comm"] = s.is_comm_action;
        js["broadcast"] = s.fired_broadcast;
        js["world"] = belief_state_to_json(s.world);
        json stores;
        for (const auto& [agent, store] : s.stores) {
            stores[agent] = belief_state_to_json(store);
        }
        js["stores"] = stores;
        steps.push_back(std::move(js));
    }
    j["steps"] = steps;
    return j;
}

inline json metrics_to_json(const execution::MetricsRecord& m) {
    json j;
    j["schema"] = kSchemaVersion;
    j["completion_time_ms"] = m.completion_time_ms;
    j["total_actions"] = m.total_actions;
    j["raw_plan_length"] = m.raw_plan_length;
    j["noop_actions"] = m.noop_actions;
    j["total_communications"] = m.total_communications;
    j["sharedness_percent"] = m.sharedness_percent;
    j["sharedness_trajectory"] = m.sharedness_trajectory;
    if (!m.pairwise_sharedness.empty()) j["pairwise_sharedness"] = m.pairwise_sharedness;
    return j;
}

inline execution::MetricsRecord metrics_from_json(const json& j) {
    execution::MetricsRecord m;
    m.completion_time_ms = j.value("completion_time_ms", 0.0);
    m.total_actions = j.value("total_actions", 0L);
    m.raw_plan_length = j.value("raw_plan_length", 0L);
    m.noop_actions = j.value("noop_actions", 0L);
    m.total_communications = j.value("total_communications", 0L);
    m.sharedness_percent = j.value("sharedness_percent", 0.0);
    if (j.contains("sharedness_trajectory")) {
        m.sharedness_trajectory = j["sharedness_trajectory"].get<std::vector<double>>();
    }
    if (j.contains("pairwise_sharedness")) {
        m.pairwise_sharedness =
            j["pairwise_sharedness"].get<std::map<std::string, double>>();
    }
    return m;
}

}  // namespace epiplan::io
