// Per-run metric extraction: completion time (planner wall-clock), total
// actions (turn-filler no-ops excluded, raw length kept), total
// communications, and the sharedness of mental models over the trace.
//
// Communication counting: one message per executed communication action;
// under CommAll, one message per observe step that fired at least one
// broadcast effect (a belief add landing in a non-actor store).

#pragma once

#include <map>
#include <string>
#include <vector>

#include "epiplan/execution/queries.hpp"
#include "epiplan/execution/simulate.hpp"
#include "epiplan/search/solve.hpp"

namespace epiplan::execution {

struct MetricsRecord {
    double completion_time_ms = 0.0;
    long total_actions = 0;  // no-ops excluded
    long raw_plan_length = 0;
    long noop_actions = 0;
    long total_communications = 0;
    double sharedness_percent = 0.0;
    std::vector<double> sharedness_trajectory;  // one entry per trace step
    std::map<std::string, double> pairwise_sharedness;  // "a1|a2" -> percent
};

inline MetricsRecord metrics(const search::Plan& plan, const Trace& trace,
                             const std::vector<Query>& queries, bool pairwise = false) {
    MetricsRecord out;
    out.completion_time_ms = plan.planning_ms;
    out.raw_plan_length = static_cast<long>(plan.actions.size());
    for (std::size_t i = 1; i < trace.steps.size(); ++i) {
        const TraceStep& s = trace.steps[i];
        if (s.is_noop) {
            ++out.noop_actions;
        } else {
            ++out.total_actions;
        }
        if (s.is_comm_action || (!s.is_comm_action && !s.is_noop && s.fired_broadcast)) {
            ++out.total_communications;
        }
    }
    for (const TraceStep& s : trace.steps) {
        out.sharedness_trajectory.push_back(smm_overlap(s.stores, queries));
    }
    out.sharedness_percent = out.sharedness_trajectory.back();
    if (pairwise) {
        const auto& stores = trace.final_step().stores;
        for (auto a = stores.begin(); a != stores.end(); ++a) {
            for (auto b = std::next(a); b != stores.end(); ++b) {
                std::map<std::string, BeliefState> pair = {{a->first, a->second},
                                                           {b->first, b->second}};
                out.pairwise_sharedness[a->first + "|" + b->first] =
                    smm_overlap(pair, queries);
            }
        }
    }
    return out;
}

}  // namespace epiplan::execution
