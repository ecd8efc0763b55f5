// Forward state-space search over compiled tasks: successor generation
// with conditional effects, the additive delete-relaxation heuristic, and
// three strategies. BFS is the optimality reference; GBFS (eager, every
// generated state scored by its own h) is the satisficing default; ASTAR
// uses h_add as-is and is bounded-suboptimal when the estimate overshoots.
//
// Tie-breaking everywhere: lower action index first, FIFO within equal
// priority. Duplicate detection on generation; unit action costs.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "epiplan/compiler/compile.hpp"
#include "epiplan/search/bitset.hpp"

namespace epiplan::search {

using compiler::ClassicalTask;
using compiler::CompiledAction;

enum class Strategy { BFS, ASTAR, GBFS };

inline const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::BFS: return "bfs";
        case Strategy::ASTAR: return "astar";
        case Strategy::GBFS: return "gbfs";
    }
    return "?";
}

inline Strategy strategy_from_string(const std::string& s) {
    if (s == "bfs") return Strategy::BFS;
    if (s == "astar") return Strategy::ASTAR;
    if (s == "gbfs") return Strategy::GBFS;
    throw std::invalid_argument("unknown strategy '" + s + "'");
}

struct Limits {
    std::int64_t max_expansions = 5'000'000;
    double wall_clock_ms = 60'000.0;
};

struct Plan {
    std::vector<int> actions;  // indices into the task's action list
    std::string strategy;
    std::int64_t expansions = 0;
    std::int64_t generated = 0;
    double planning_ms = 0.0;
};

struct SolveResult {
    enum class Status { Solved, Unsolvable, LimitExceeded };
    Status status = Status::Unsolvable;
    std::optional<Plan> plan;
    std::int64_t expansions = 0;
    std::int64_t generated = 0;
    double planning_ms = 0.0;

    bool solved() const { return status == Status::Solved; }
};

inline Bitset initial_state(const ClassicalTask& t) {
    Bitset s(t.num_fluents());
    s.set_all(t.init);
    return s;
}

// Applies one action: every effect item whose guard holds in `s` fires;
// items run in declaration order, deletes before adds within an item.
inline Bitset apply_action(const Bitset& s, const CompiledAction& a) {
    Bitset out = s;
    std::vector<bool> fires(a.effects.size());
    for (std::size_t i = 0; i < a.effects.size(); ++i) {
        fires[i] = s.contains_all(a.effects[i].guard);
    }
    for (std::size_t i = 0; i < a.effects.size(); ++i) {
        if (!fires[i]) continue;
        out.reset_all(a.effects[i].dels);
        out.set_all(a.effects[i].adds);
    }
    return out;
}

inline std::vector<std::pair<int, Bitset>> successors(const Bitset& s,
                                                      const ClassicalTask& t) {
    std::vector<std::pair<int, Bitset>> out;
    for (std::size_t i = 0; i < t.actions.size(); ++i) {
        if (s.contains_all(t.actions[i].pre)) {
            out.emplace_back(static_cast<int>(i), apply_action(s, t.actions[i]));
        }
    }
    return out;
}

inline constexpr int kInfiniteCost = 1 << 29;

// Additive delete-relaxation estimate. Each (action, effect item) pair
// becomes a relaxed operator with precondition pre(action) + guard(item)
// and unit cost; fluent costs propagate Dijkstra-style with early exit
// once every goal fluent is settled. Goal-aware (0 iff the goal holds)
// and safe (infinite only when relaxed-unreachable).
class HAddEvaluator {
public:
    explicit HAddEvaluator(const ClassicalTask& t) : task_(&t) {
        for (const auto& a : t.actions) {
            for (const auto& e : a.effects) {
                RelaxedOp op;
                op.pre = a.pre;
                op.pre.insert(op.pre.end(), e.guard.begin(), e.guard.end());
                op.pre = compiler::detail::sorted_unique(std::move(op.pre));
                op.adds = e.adds;
                ops_.push_back(std::move(op));
            }
        }
        consumers_.resize(t.num_fluents());
        for (std::size_t i = 0; i < ops_.size(); ++i) {
            for (int f : ops_[i].pre) consumers_[f].push_back(static_cast<int>(i));
        }
        cost_.resize(t.num_fluents());
        settled_.resize(t.num_fluents());
        unsatisfied_.resize(ops_.size());
    }

    int evaluate(const Bitset& s) {
        std::fill(cost_.begin(), cost_.end(), kInfiniteCost);
        std::fill(settled_.begin(), settled_.end(), false);
        for (std::size_t i = 0; i < ops_.size(); ++i) {
            unsatisfied_[i] = static_cast<int>(ops_[i].pre.size());
        }
        while (!open_.empty()) open_.pop();
        int goals_left = 0;
        for (int g : task_->goal) {
            if (!s.test(g)) ++goals_left;
        }
        for (int f = 0; f < task_->num_fluents(); ++f) {
            if (s.test(f)) {
                cost_[f] = 0;
                open_.emplace(0, f);
            }
        }
        for (std::size_t i = 0; i < ops_.size(); ++i) {
            if (ops_[i].pre.empty()) trigger(static_cast<int>(i));
        }
        while (!open_.empty() && goals_left > 0) {
            auto [c, f] = open_.top();
            open_.pop();
            if (settled_[f] || c > cost_[f]) continue;
            settled_[f] = true;
            if (!s.test(f) && std::binary_search(task_->goal.begin(), task_->goal.end(), f)) {
                --goals_left;
            }
            for (int op : consumers_[f]) {
                if (--unsatisfied_[op] == 0) trigger(op);
            }
        }
        long long total = 0;
        for (int g : task_->goal) {
            if (cost_[g] >= kInfiniteCost) return kInfiniteCost;
            total += cost_[g];
        }
        return total >= kInfiniteCost ? kInfiniteCost : static_cast<int>(total);
    }

private:
    struct RelaxedOp {
        std::vector<int> pre;
        std::vector<int> adds;
    };

    void trigger(int op) {
        long long c = 1;
        for (int f : ops_[op].pre) c += cost_[f];
        if (c > kInfiniteCost) c = kInfiniteCost;
        for (int f : ops_[op].adds) {
            if (c < cost_[f]) {
                cost_[f] = static_cast<int>(c);
                open_.emplace(cost_[f], f);
            }
        }
    }

    const ClassicalTask* task_;
    std::vector<RelaxedOp> ops_;
    std::vector<std::vector<int>> consumers_;
    std::vector<int> cost_;
    std::vector<bool> settled_;
    std::vector<int> unsatisfied_;
    std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>, std::greater<>>
        open_;
};

inline int h_add(const Bitset& s, const ClassicalTask& t) {
    return HAddEvaluator(t).evaluate(s);
}

namespace detail {

struct Node {
    Bitset state;
    int parent = -1;
    int action = -1;  // action taken to reach this node
};

// Deduplication set over node ids, hashing the state stored in the node
// arena; avoids keeping a second copy of every state.
struct NodeSet {
    const std::vector<Node>* nodes;

    struct Hash {
        const std::vector<Node>* nodes;
        std::size_t operator()(int id) const { return Bitset::Hash{}((*nodes)[id].state); }
    };
    struct Eq {
        const std::vector<Node>* nodes;
        bool operator()(int a, int b) const { return (*nodes)[a].state == (*nodes)[b].state; }
    };
    std::unordered_set<int, Hash, Eq> set;

    explicit NodeSet(const std::vector<Node>* n)
        : nodes(n), set(64, Hash{n}, Eq{n}) {}
};

// Partitions actions by turn token when the task is turn-constrained,
// cutting applicability tests to the agent to move.
class ActionIndex {
public:
    explicit ActionIndex(const ClassicalTask& t) : task_(&t) {
        if (t.turn_fluents.empty()) return;
        const int base = static_cast<int>(t.fluents.size());
        by_turn_.assign(t.turn_fluents.size(), {});
        for (std::size_t i = 0; i < t.actions.size(); ++i) {
            int token = -1;
            for (int f : t.actions[i].pre) {
                if (f >= base) {
                    token = f - base;
                    break;
                }
            }
            if (token < 0) {
                by_turn_.clear();  // some action ignores turns; fall back
                return;
            }
            by_turn_[token].push_back(static_cast<int>(i));
        }
    }

    // Visits applicable actions in ascending action-index order.
    template <typename Fn>
    void for_applicable(const Bitset& s, Fn&& fn) const {
        if (by_turn_.empty()) {
            for (std::size_t i = 0; i < task_->actions.size(); ++i) {
                if (s.contains_all(task_->actions[i].pre)) fn(static_cast<int>(i));
            }
            return;
        }
        const int base = static_cast<int>(task_->fluents.size());
        for (std::size_t tok = 0; tok < by_turn_.size(); ++tok) {
            if (!s.test(base + static_cast<int>(tok))) continue;
            for (int i : by_turn_[tok]) {
                if (s.contains_all(task_->actions[i].pre)) fn(i);
            }
        }
    }

private:
    const ClassicalTask* task_;
    std::vector<std::vector<int>> by_turn_;  // token order == roster order;
                                             // within a token, action order
};

inline std::vector<int> extract_plan(const std::vector<Node>& nodes, int leaf) {
    std::vector<int> actions;
    for (int n = leaf; nodes[n].parent >= 0; n = nodes[n].parent) {
        actions.push_back(nodes[n].action);
    }
    std::reverse(actions.begin(), actions.end());
    return actions;
}

}  // namespace detail

struct SolveOptions {
    Strategy strategy = Strategy::GBFS;
    Limits limits;
    bool prune = true;  // relaxed-reachability preprocessing, output-equivalent
};

inline SolveResult solve(const ClassicalTask& task, const SolveOptions& opts = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed_ms = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    compiler::PrunedTask pruned;
    if (opts.prune) {
        pruned = compiler::prune_unreachable_mapped(task);
    } else {
        pruned.task = task;
        for (std::size_t i = 0; i < task.actions.size(); ++i) {
            pruned.original_action_index.push_back(static_cast<int>(i));
        }
    }
    const ClassicalTask& t = pruned.task;

    SolveResult res;
    auto finish = [&](SolveResult::Status st, std::optional<std::vector<int>> actions) {
        res.status = st;
        res.planning_ms = elapsed_ms();
        if (actions) {
            Plan plan;
            for (int a : *actions) plan.actions.push_back(pruned.original_action_index[a]);
            plan.strategy = to_string(opts.strategy);
            plan.expansions = res.expansions;
            plan.generated = res.generated;
            plan.planning_ms = res.planning_ms;
            res.plan = std::move(plan);
        }
        return res;
    };

    std::vector<detail::Node> nodes;
    nodes.push_back({initial_state(t), -1, -1});
    detail::NodeSet seen(&nodes);
    seen.set.insert(0);

    detail::ActionIndex action_index(t);
    std::optional<HAddEvaluator> h;
    if (opts.strategy != Strategy::BFS) h.emplace(t);

    // ((priority, insertion sequence), node); FIFO inside equal priority
    using Entry = std::pair<std::pair<std::int64_t, std::int64_t>, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    std::vector<std::int64_t> g_cost;
    std::int64_t seq = 0;

    if (opts.strategy != Strategy::BFS && h->evaluate(nodes[0].state) >= kInfiniteCost) {
        return finish(SolveResult::Status::Unsolvable, std::nullopt);
    }
    open.push({{0, seq++}, 0});
    g_cost.push_back(0);

    while (!open.empty()) {
        const int node_id = open.top().second;
        open.pop();
        // copy: pushing successors may reallocate the node arena
        const Bitset state = nodes[node_id].state;

        if (state.contains_all(t.goal)) {
            return finish(SolveResult::Status::Solved, detail::extract_plan(nodes, node_id));
        }
        if (res.expansions >= opts.limits.max_expansions ||
            elapsed_ms() > opts.limits.wall_clock_ms) {
            return finish(SolveResult::Status::LimitExceeded, std::nullopt);
        }
        ++res.expansions;

        action_index.for_applicable(state, [&](int ai) {
            ++res.generated;
            Bitset succ = apply_action(state, t.actions[ai]);
            nodes.push_back({std::move(succ), node_id, ai});
            const int child = static_cast<int>(nodes.size()) - 1;
            if (!seen.set.insert(child).second) {
                nodes.pop_back();  // duplicate state
                return;
            }
            g_cost.push_back(g_cost[node_id] + 1);
            std::int64_t prio = 0;
            switch (opts.strategy) {
                case Strategy::BFS:
                    break;  // FIFO via seq
                case Strategy::GBFS: {
                    int hv = h->evaluate(nodes[child].state);
                    if (hv >= kInfiniteCost) return;  // relaxed dead end
                    prio = hv;
                    break;
                }
                case Strategy::ASTAR: {
                    int hv = h->evaluate(nodes[child].state);
                    if (hv >= kInfiniteCost) return;  // relaxed dead end
                    prio = g_cost[child] + hv;
                    break;
                }
            }
            open.push({{prio, seq++}, child});
        });
    }
    return finish(SolveResult::Status::Unsolvable, std::nullopt);
}

}  // namespace epiplan::search
