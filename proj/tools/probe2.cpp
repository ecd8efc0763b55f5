// scratch: dump an S5 instance and try small variants
#include <cstdio>

#include "epiplan/bench/matrix.hpp"
#include "epiplan/epddl/render.hpp"
#include "epiplan/search/validate_plan.hpp"

using namespace epiplan;

int main() {
    auto c = domains::default_gridworld_config(3, 3, 3, domains::Scenario::BlockedCells,
                                               domains::CommModel::CommAll, 7);
    std::printf("starts:");
    for (auto& [a, p] : c.agent_starts) std::printf(" %s@%d", a.c_str(), p);
    std::printf("\nsurvivor:");
    for (auto& [s, p] : c.survivor_positions) std::printf(" %s@%d", s.c_str(), p);
    std::printf("\ntarget: %d blocked:", *c.target_position);
    for (int b : c.blocked_cells) std::printf(" %d", b);
    std::printf("\nliaison: %s\n", c.liaison_agent->c_str());

    auto g = domains::generate(c);
    std::printf("%s\n", epddl::render(g.problem).c_str());

    auto task = compiler::compile(g.domain, g.problem, {1, false});
    std::printf("turns OFF: ");
    auto res = search::solve(task, {search::Strategy::GBFS, {50000, 20000}, true});
    std::printf("status=%d exp=%lld\n", static_cast<int>(res.status),
                static_cast<long long>(res.expansions));
    return 0;
}
