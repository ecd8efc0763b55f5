// Plan replay against ground truth. Each step applies one compiled action
// and splits its fired effects by modal prefix: depth-0 literals update the
// world snapshot, [a]-prefixed literals update agent a's belief store via
// the belief algebra. Co-observation and broadcast effects land in several
// stores in one step.

#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "epiplan/belief.hpp"
#include "epiplan/compiler/compile.hpp"
#include "epiplan/domains/comm_model.hpp"
#include "epiplan/domains/gridworld.hpp"
#include "epiplan/search/solve.hpp"

namespace epiplan::execution {

struct TraceStep {
    std::string actor;       // empty on the initial step
    std::string action;      // ground signature; empty on the initial step
    int action_index = -1;
    bool is_noop = false;
    bool is_comm_action = false;
    bool fired_broadcast = false;  // a belief literal reached a non-actor store
    BeliefState world;             // depth-0 literals only
    std::map<std::string, BeliefState> stores;
};

struct Trace {
    std::vector<TraceStep> steps;  // steps[0] = initial configuration

    const TraceStep& final_step() const { return steps.back(); }
};

struct SimulateError : std::runtime_error {
    SimulateError(int step, const std::string& message)
        : std::runtime_error("simulation failed at step " + std::to_string(step) + ": " +
                             message),
          step(step) {}
    int step;
};

// Replays `plan` over the task compiled from (d, p) with `opts`, starting
// from init overridden by the ground-truth literals. Throws SimulateError
// when a precondition fails during replay (plan/ground-truth mismatch).
inline Trace simulate(const search::Plan& plan, const domains::GroundTruth& gt,
                      const epddl::DomainSpec& d, const epddl::ProblemSpec& p,
                      const compiler::CompileOptions& opts = {}) {
    compiler::ClassicalTask task = compiler::compile(d, p, opts);

    // classical replay state with the ground truth folded in
    std::set<int> state(task.init.begin(), task.init.end());
    for (const auto& l : gt.literals) {
        int idx = task.index_of(l);
        if (idx < 0) {
            throw SimulateError(0, "ground-truth literal " + to_text(l) +
                                       " is not part of the compiled task");
        }
        for (const auto& rival : conflicting_literals(l)) {
            int ridx = task.index_of(rival);
            if (ridx >= 0) state.erase(ridx);
        }
        state.insert(idx);
    }

    const int table_size = static_cast<int>(task.fluents.size());

    Trace trace;
    {
        TraceStep initial;
        std::vector<Rml> world;
        for (const auto& agent : task.agents) initial.stores[agent] = BeliefState{};
        for (int f : state) {
            if (f >= table_size) continue;
            const Rml& l = task.fluents[f];
            if (l.chain.empty()) {
                world.push_back(l);
            } else {
                auto& store = initial.stores[l.chain.front().agent];
                store = apply_effects(store, {l}, {});
            }
        }
        initial.world = BeliefState::from_literals(world);
        trace.steps.push_back(std::move(initial));
    }

    for (std::size_t step = 0; step < plan.actions.size(); ++step) {
        int ai = plan.actions[step];
        if (ai < 0 || ai >= static_cast<int>(task.actions.size())) {
            throw SimulateError(static_cast<int>(step + 1),
                                "action index " + std::to_string(ai) + " out of range");
        }
        const compiler::CompiledAction& a = task.actions[ai];
        for (int f : a.pre) {
            if (!state.count(f)) {
                throw SimulateError(static_cast<int>(step + 1),
                                    "precondition " + task.fluent_text(f) + " of " +
                                        a.signature() + " does not hold");
            }
        }

        TraceStep next = trace.steps.back();
        next.actor = a.actor;
        next.action = a.signature();
        next.action_index = ai;
        next.is_noop = a.turn_noop;
        next.is_comm_action = domains::is_communication_action(a.name);
        next.fired_broadcast = false;

        // guards read the pre-state; items apply in declaration order
        std::vector<const compiler::CompiledEffect*> fired;
        for (const auto& item : a.effects) {
            bool fires = true;
            for (int g : item.guard) {
                if (!state.count(g)) fires = false;
            }
            if (fires) fired.push_back(&item);
        }
        for (const compiler::CompiledEffect* item : fired) {
            std::vector<Rml> world_adds, world_dels;
            std::map<std::string, std::pair<std::vector<Rml>, std::vector<Rml>>> per_agent;
            for (int f : item->adds) {
                if (f >= table_size) continue;  // turn token
                const Rml& l = task.fluents[f];
                if (l.chain.empty()) {
                    world_adds.push_back(l);
                } else {
                    per_agent[l.chain.front().agent].first.push_back(l);
                    if (l.chain.front().agent != a.actor) next.fired_broadcast = true;
                }
            }
            for (int f : item->dels) {
                if (f >= table_size) continue;
                const Rml& l = task.fluents[f];
                if (l.chain.empty()) {
                    world_dels.push_back(l);
                } else {
                    per_agent[l.chain.front().agent].second.push_back(l);
                }
            }
            next.world = apply_effects(next.world, world_adds, world_dels);
            for (auto& [agent, eff] : per_agent) {
                next.stores[agent] = apply_effects(next.stores[agent], eff.first, eff.second);
            }
        }

        std::set<int> advanced = state;
        for (const compiler::CompiledEffect* item : fired) {
            for (int f : item->dels) advanced.erase(f);
            for (int f : item->adds) advanced.insert(f);
        }
        state = std::move(advanced);
        trace.steps.push_back(std::move(next));
    }
    return trace;
}

}  // namespace epiplan::execution
