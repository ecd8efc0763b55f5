// Compilation of a validated epistemic task to a classical propositional
// task with conditional effects. One classical fluent per enumerated RML;
// conflict eviction is baked into each effect as static deletes so that
// classical successor states stay conflict-free without consulting the
// belief algebra during search.

#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "epiplan/compiler/enumerate.hpp"
#include "epiplan/compiler/ground.hpp"
#include "epiplan/epddl/validate.hpp"

namespace epiplan::compiler {

struct CompiledEffect {
    std::vector<int> guard;  // sorted fluent indices
    std::vector<int> adds;
    std::vector<int> dels;
};

struct CompiledAction {
    std::string name;
    std::vector<std::string> args;
    std::string actor;
    bool turn_noop = false;
    std::vector<int> pre;  // sorted
    std::vector<CompiledEffect> effects;

    std::string signature() const {
        std::string out = "(" + name;
        for (const auto& a : args) out += " " + a;
        out += ")";
        return out;
    }
};

struct ClassicalTask {
    std::vector<Rml> fluents;               // table index -> RML
    std::map<Rml, int> fluent_index;        // inverse bijection
    std::vector<std::string> turn_fluents;  // appended after the RML table
    std::vector<int> init;                  // sorted
    std::vector<int> goal;                  // sorted
    std::vector<CompiledAction> actions;
    std::vector<std::string> agents;  // roster in object-declaration order
    int depth_bound = kDefaultDepth;

    int num_fluents() const {
        return static_cast<int>(fluents.size() + turn_fluents.size());
    }

    // Text for any fluent index, turn tokens included.
    std::string fluent_text(int idx) const {
        if (idx < static_cast<int>(fluents.size())) return to_text(fluents[idx]);
        return turn_fluents[idx - fluents.size()];
    }

    int index_of(const Rml& l) const {
        auto it = fluent_index.find(l);
        return it == fluent_index.end() ? -1 : it->second;
    }
};

struct CompileOptions {
    int depth = kDefaultDepth;
    bool turn_taking = false;
};

namespace detail {

inline std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline int require_index(const ClassicalTask& t, const Rml& l, const std::string& where) {
    int idx = t.index_of(l);
    if (idx < 0) {
        throw std::invalid_argument(where + " literal " + to_text(l) +
                                    " is outside the enumerated fluent table (depth " +
                                    std::to_string(t.depth_bound) + ")");
    }
    return idx;
}

}  // namespace detail

// Appends round-robin turn tokens: every action gains a turn(actor)
// precondition and hands the token to the next agent; one no-op per agent
// keeps the cycle alive when an agent has nothing useful to do.
inline ClassicalTask add_turn_constraint(ClassicalTask t) {
    if (!t.turn_fluents.empty()) {
        throw std::invalid_argument("task already has a turn constraint");
    }
    if (t.agents.empty()) {
        throw std::invalid_argument("turn constraint needs a nonempty agent roster");
    }
    const int base = static_cast<int>(t.fluents.size());
    std::map<std::string, int> turn_of;
    for (std::size_t i = 0; i < t.agents.size(); ++i) {
        t.turn_fluents.push_back("(turn " + t.agents[i] + ")");
        turn_of[t.agents[i]] = base + static_cast<int>(i);
    }
    auto next_turn = [&](const std::string& agent) {
        for (std::size_t i = 0; i < t.agents.size(); ++i) {
            if (t.agents[i] == agent) return turn_of[t.agents[(i + 1) % t.agents.size()]];
        }
        throw std::invalid_argument("unknown agent " + agent);
    };
    for (auto& a : t.actions) {
        if (a.actor.empty()) {
            throw std::invalid_argument("action " + a.signature() +
                                        " has no agent-typed argument to attribute a turn");
        }
        int mine = turn_of.at(a.actor);
        a.pre.push_back(mine);
        a.pre = detail::sorted_unique(std::move(a.pre));
        a.effects.push_back({{}, {next_turn(a.actor)}, {mine}});
    }
    for (const auto& agent : t.agents) {
        CompiledAction noop;
        noop.name = "noop";
        noop.args = {agent};
        noop.actor = agent;
        noop.turn_noop = true;
        noop.pre = {turn_of.at(agent)};
        noop.effects.push_back({{}, {next_turn(agent)}, {turn_of.at(agent)}});
        t.actions.push_back(std::move(noop));
    }
    t.init.push_back(turn_of.at(t.agents.front()));
    t.init = detail::sorted_unique(std::move(t.init));
    return t;
}

inline ClassicalTask compile(const epddl::DomainSpec& d, const epddl::ProblemSpec& p,
                             const CompileOptions& opts = {}) {
    auto diags = epddl::validate(d, p, opts.depth);
    if (!diags.empty()) {
        throw std::invalid_argument("cannot compile, validation failed: [" +
                                    diags.front().category + "] " + diags.front().message);
    }

    ClassicalTask t;
    t.depth_bound = opts.depth;
    t.agents = p.objects_of_type(d, "agent");
    t.fluents = enumerate_rmls(ground_fluents(d, p), t.agents, opts.depth);
    for (std::size_t i = 0; i < t.fluents.size(); ++i) {
        t.fluent_index[t.fluents[i]] = static_cast<int>(i);
    }

    for (const auto& l : p.init) {
        t.init.push_back(detail::require_index(t, l, "init"));
    }
    t.init = detail::sorted_unique(std::move(t.init));
    for (const auto& l : p.goal.conjuncts) {
        t.goal.push_back(detail::require_index(t, l, "goal"));
    }
    t.goal = detail::sorted_unique(std::move(t.goal));

    for (const auto& ga : ground(d, p)) {
        CompiledAction ca;
        ca.name = ga.name;
        ca.args = ga.args;
        ca.actor = ga.actor;
        for (const auto& l : ga.precondition) {
            ca.pre.push_back(detail::require_index(t, l, "precondition"));
        }
        ca.pre = detail::sorted_unique(std::move(ca.pre));
        for (const auto& item : ga.effects) {
            CompiledEffect ce;
            for (const auto& l : item.guard) {
                ce.guard.push_back(detail::require_index(t, l, "guard"));
            }
            ce.guard = detail::sorted_unique(std::move(ce.guard));
            for (const auto& l : item.adds) {
                ce.adds.push_back(detail::require_index(t, l, "effect"));
                // eviction: adding l deletes everything that conflicts with l
                for (const auto& rival : conflicting_literals(l)) {
                    int idx = t.index_of(rival);
                    if (idx >= 0) ce.dels.push_back(idx);
                }
            }
            ce.adds = detail::sorted_unique(std::move(ce.adds));
            for (const auto& l : item.dels) {
                ce.dels.push_back(detail::require_index(t, l, "effect"));
            }
            ce.dels = detail::sorted_unique(std::move(ce.dels));
            ca.effects.push_back(std::move(ce));
        }
        t.actions.push_back(std::move(ca));
    }

    if (opts.turn_taking) t = add_turn_constraint(std::move(t));
    return t;
}

struct PrunedTask {
    ClassicalTask task;
    std::vector<int> original_action_index;  // kept action -> index in the input task
};

// Relaxed-reachability pass: drops actions whose preconditions and effect
// items whose guards can never hold. Keeps the fluent table and indices
// intact, so plans and states are interchangeable with the unpruned task.
inline PrunedTask prune_unreachable_mapped(const ClassicalTask& t) {
    std::vector<bool> reachable(t.num_fluents(), false);
    for (int f : t.init) reachable[f] = true;
    bool changed = true;
    auto all_reachable = [&](const std::vector<int>& fs) {
        for (int f : fs) {
            if (!reachable[f]) return false;
        }
        return true;
    };
    while (changed) {
        changed = false;
        for (const auto& a : t.actions) {
            if (!all_reachable(a.pre)) continue;
            for (const auto& e : a.effects) {
                if (!all_reachable(e.guard)) continue;
                for (int f : e.adds) {
                    if (!reachable[f]) {
                        reachable[f] = true;
                        changed = true;
                    }
                }
            }
        }
    }
    PrunedTask out{t, {}};
    out.task.actions.clear();
    for (std::size_t i = 0; i < t.actions.size(); ++i) {
        const auto& a = t.actions[i];
        if (!all_reachable(a.pre)) continue;
        CompiledAction kept = a;
        kept.effects.clear();
        for (const auto& e : a.effects) {
            if (all_reachable(e.guard)) kept.effects.push_back(e);
        }
        out.task.actions.push_back(std::move(kept));
        out.original_action_index.push_back(static_cast<int>(i));
    }
    return out;
}

inline ClassicalTask prune_unreachable(const ClassicalTask& t) {
    return prune_unreachable_mapped(t).task;
}

}  // namespace epiplan::compiler
