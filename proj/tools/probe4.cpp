// scratch: watch the GBFS h profile on the bw4t S1 team-3 turn task
#include <cstdio>
#include <queue>
#include <unordered_set>

#include "epiplan/bench/matrix.hpp"

using namespace epiplan;
using search::Bitset;

int main() {
    auto c = domains::default_bw4t_config(3, 3, domains::Scenario::EpistemicGoal,
                                          domains::CommModel::Selective, 7);
    auto g = domains::generate(c);
    auto task0 = compiler::compile(g.domain, g.problem, {1, true});
    auto pruned = compiler::prune_unreachable_mapped(task0);
    const auto& t = pruned.task;
    search::HAddEvaluator h(t);

    struct Node { Bitset s; int d; };
    std::vector<Node> nodes;
    nodes.push_back({search::initial_state(t), 0});
    using Entry = std::pair<std::pair<long, long>, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    std::unordered_map<Bitset, int, Bitset::Hash> seen;
    seen.emplace(nodes[0].s, 0);
    open.push({{h.evaluate(nodes[0].s), 0}, 0});
    long seq = 1, exp = 0, min_h = 1 << 20;
    while (!open.empty() && exp < 400000) {
        auto [pr, id] = open.top();
        open.pop();
        Bitset s = nodes[id].s;
        int hv = h.evaluate(s);
        if (hv < min_h) {
            min_h = hv;
            std::printf("exp=%-8ld depth=%-4d h=%d\n", exp, nodes[id].d, hv);
        }
        if (s.contains_all(t.goal)) {
            std::printf("GOAL at exp=%ld depth=%d\n", exp, nodes[id].d);
            return 0;
        }
        ++exp;
        for (std::size_t ai = 0; ai < t.actions.size(); ++ai) {
            if (!s.contains_all(t.actions[ai].pre)) continue;
            Bitset succ = search::apply_action(s, t.actions[ai]);
            nodes.push_back({succ, nodes[id].d + 1});
            int child = static_cast<int>(nodes.size()) - 1;
            if (!seen.emplace(succ, child).second) {
                nodes.pop_back();
                continue;
            }
            open.push({{hv, seq++}, child});
        }
    }
    std::printf("stopped exp=%ld min_h=%ld open=%zu\n", exp, min_h, open.size());
    return 0;
}
