// scratch: bw4t S1 diagnosis
#include <cstdio>

#include "epiplan/bench/matrix.hpp"
#include "epiplan/epddl/render.hpp"
#include "epiplan/search/validate_plan.hpp"

using namespace epiplan;

static void try_solve(const compiler::ClassicalTask& task, search::Strategy st,
                      const char* name) {
    search::SolveOptions opts;
    opts.strategy = st;
    opts.limits.max_expansions = 300000;
    opts.limits.wall_clock_ms = 30000;
    auto res = search::solve(task, opts);
    std::printf("  %-6s status=%d exp=%lld ms=%.0f len=%zu\n", name,
                static_cast<int>(res.status), static_cast<long long>(res.expansions),
                res.planning_ms, res.plan ? res.plan->actions.size() : 0);
}

int main() {
    for (int team : {1, 2, 3}) {
        auto c = domains::default_bw4t_config(3, team, domains::Scenario::EpistemicGoal,
                                              domains::CommModel::Selective, 7);
        auto g = domains::generate(c);
        std::printf("team=%d blocks:", team);
        for (auto& [b, info] : c.block_placement) {
            std::printf(" %s@r%d(%s)", b.c_str(), info.room, info.color.c_str());
        }
        std::printf("\n");
        for (bool turns : {false, true}) {
            auto task = compiler::compile(g.domain, g.problem, {1, turns});
            std::printf(" turns=%d fluents=%zu actions=%zu\n", turns, task.fluents.size(),
                        task.actions.size());
            std::printf("  h(init)=%d\n",
                        search::h_add(search::initial_state(task), task));
            try_solve(task, search::Strategy::GBFS, "gbfs");
            try_solve(task, search::Strategy::ASTAR, "astar");
        }
    }
    return 0;
}
