// Plan checker written independently of the search code path: states are
// sorted index vectors, subset tests use std::includes, and effects apply
// through set arithmetic. Replays step by step and reports the first
// failure instead of throwing.

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "epiplan/compiler/compile.hpp"
#include "epiplan/search/solve.hpp"

namespace epiplan::search {

struct ValidationReport {
    bool accepted = false;
    int failed_step = -1;  // -1 when no step failed
    std::vector<std::string> missing;  // unsatisfied literals at the failure
    bool goal_satisfied = false;
    std::string message;
};

namespace detail {

inline bool subset(const std::vector<int>& sub, const std::vector<int>& super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

inline std::vector<int> replay_action(const std::vector<int>& state,
                                      const CompiledAction& a) {
    std::vector<int> out = state;
    for (const auto& item : a.effects) {
        if (!subset(item.guard, state)) continue;  // guards read the pre-state
        std::vector<int> next;
        std::set_difference(out.begin(), out.end(), item.dels.begin(), item.dels.end(),
                            std::back_inserter(next));
        std::vector<int> merged;
        std::set_union(next.begin(), next.end(), item.adds.begin(), item.adds.end(),
                       std::back_inserter(merged));
        out = std::move(merged);
    }
    return out;
}

}  // namespace detail

inline ValidationReport validate_plan(const ClassicalTask& t, const Plan& plan) {
    ValidationReport report;
    std::vector<int> state = t.init;  // already sorted
    for (std::size_t step = 0; step < plan.actions.size(); ++step) {
        int ai = plan.actions[step];
        if (ai < 0 || ai >= static_cast<int>(t.actions.size())) {
            report.failed_step = static_cast<int>(step);
            report.message = "action index " + std::to_string(ai) + " out of range";
            return report;
        }
        const CompiledAction& a = t.actions[ai];
        if (!detail::subset(a.pre, state)) {
            report.failed_step = static_cast<int>(step);
            for (int f : a.pre) {
                if (!std::binary_search(state.begin(), state.end(), f)) {
                    report.missing.push_back(t.fluent_text(f));
                }
            }
            report.message = "precondition of " + a.signature() + " unsatisfied at step " +
                             std::to_string(step);
            return report;
        }
        state = detail::replay_action(state, a);
    }
    report.goal_satisfied = detail::subset(t.goal, state);
    if (!report.goal_satisfied) {
        for (int f : t.goal) {
            if (!std::binary_search(state.begin(), state.end(), f)) {
                report.missing.push_back(t.fluent_text(f));
            }
        }
        report.message = "goal unsatisfied after final step";
        return report;
    }
    report.accepted = true;
    return report;
}

}  // namespace epiplan::search
