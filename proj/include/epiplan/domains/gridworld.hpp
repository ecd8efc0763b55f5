// Gridworld search-and-rescue generator. Agents move on a 4-neighbor grid
// with single-occupancy cells, observe their own cell (learning presence
// and absence of each survivor), and broadcast believed survivor positions
// with the commsurvivor action. Five scenarios vary the goal and the
// communication structure; the world-level survivor/blocked placements are
// the hidden ground truth.

#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "epiplan/domains/build_util.hpp"
#include "epiplan/domains/scenario.hpp"
#include "epiplan/epddl/ast.hpp"

namespace epiplan::domains {

struct GridworldConfig {
    int width = 3;
    int height = 3;
    std::map<std::string, int> agent_starts;        // agent -> cell index, row-major
    std::map<std::string, int> survivor_positions;  // survivor -> cell index
    std::set<int> blocked_cells;                    // BlockedCells scenario only
    Scenario scenario = Scenario::EpistemicGoal;
    CommModel comm_model = CommModel::Selective;
    std::optional<std::string> commander_agent;
    std::optional<std::string> liaison_agent;  // S4 sender; S5 designated agent
    std::optional<int> target_position;        // S5

    int cells() const { return width * height; }
};

struct GroundTruth {
    std::vector<Rml> literals;

    bool contains(const Rml& l) const {
        return std::find(literals.begin(), literals.end(), l) != literals.end();
    }
};

struct GeneratedTask {
    epddl::DomainSpec domain;
    epddl::ProblemSpec problem;
    GroundTruth ground_truth;
};

inline std::string pos_name(int cell) { return "p" + std::to_string(cell + 1); }

namespace detail {

inline std::vector<int> grid_neighbors(int cell, int width, int height) {
    std::vector<int> out;
    int x = cell % width;
    int y = cell / width;
    if (y > 0) out.push_back(cell - width);
    if (x > 0) out.push_back(cell - 1);
    if (x + 1 < width) out.push_back(cell + 1);
    if (y + 1 < height) out.push_back(cell + width);
    return out;
}

// True iff the unblocked cells form one connected region with no dead
// ends (every free cell keeps >= 2 free neighbors). On such a map agents
// can rotate along cycles, so single-occupancy never traps anyone; on a
// corridor two agents cannot swap and goals behind a teammate die.
inline bool grid_supports_shuffling(int width, int height, const std::set<int>& blocked) {
    int total = width * height;
    std::vector<int> free_cells;
    for (int cell = 0; cell < total; ++cell) {
        if (!blocked.count(cell)) free_cells.push_back(cell);
    }
    if (free_cells.empty()) return false;
    std::set<int> seen{free_cells.front()};
    std::deque<int> frontier{free_cells.front()};
    while (!frontier.empty()) {
        int cell = frontier.front();
        frontier.pop_front();
        for (int n : grid_neighbors(cell, width, height)) {
            if (!blocked.count(n) && seen.insert(n).second) frontier.push_back(n);
        }
    }
    if (seen.size() != free_cells.size()) return false;
    for (int cell : free_cells) {
        int degree = 0;
        for (int n : grid_neighbors(cell, width, height)) {
            if (!blocked.count(n)) ++degree;
        }
        if (degree < 2) return false;
    }
    return true;
}

// cells reachable from `from` avoiding blocked cells (other agents move, so
// they do not block reachability)
inline std::set<int> grid_reachable(int from, int width, int height,
                                    const std::set<int>& blocked) {
    std::set<int> seen;
    if (blocked.count(from)) return seen;
    std::deque<int> frontier{from};
    seen.insert(from);
    while (!frontier.empty()) {
        int cell = frontier.front();
        frontier.pop_front();
        for (int n : grid_neighbors(cell, width, height)) {
            if (!blocked.count(n) && seen.insert(n).second) frontier.push_back(n);
        }
    }
    return seen;
}

inline void check_gridworld_config(const GridworldConfig& c) {
    auto fail = [](const std::string& why) {
        throw std::invalid_argument("gridworld config rejected: " + why);
    };
    if (c.width < 1 || c.height < 1) fail("empty grid");
    if (c.agent_starts.empty()) fail("no agents");
    std::set<int> starts;
    for (const auto& [agent, cell] : c.agent_starts) {
        if (cell < 0 || cell >= c.cells()) fail("agent " + agent + " starts off-grid");
        if (!starts.insert(cell).second) fail("two agents share a start cell");
    }
    std::set<int> survivor_cells;
    for (const auto& [survivor, cell] : c.survivor_positions) {
        if (cell < 0 || cell >= c.cells()) fail("survivor " + survivor + " placed off-grid");
        if (!survivor_cells.insert(cell).second) fail("two survivors share a cell");
        if (c.blocked_cells.count(cell)) fail("survivor " + survivor + " on a blocked cell");
    }
    for (int cell : c.blocked_cells) {
        if (cell < 0 || cell >= c.cells()) fail("blocked cell off-grid");
        if (starts.count(cell)) fail("agent starts on a blocked cell");
    }
    if (c.scenario != Scenario::BlockedCells && !c.blocked_cells.empty()) {
        fail("blocked cells are only available in the BlockedCells scenario");
    }
    if (is_commander_scenario(c.scenario)) {
        if (!c.commander_agent || !c.agent_starts.count(*c.commander_agent)) {
            fail("commander scenario needs a commander drawn from the team");
        }
        if (c.scenario == Scenario::CommanderNonBroadcast) {
            if (!c.liaison_agent || !c.agent_starts.count(*c.liaison_agent)) {
                fail("non-broadcast commander scenario needs a liaison agent");
            }
            if (*c.liaison_agent == *c.commander_agent) {
                fail("liaison must differ from the commander");
            }
        }
    }
    if (c.scenario == Scenario::BlockedCells) {
        if (c.survivor_positions.size() != 1) {
            fail("BlockedCells uses exactly one survivor");
        }
        if (!c.target_position) fail("BlockedCells needs a target position");
        if (*c.target_position < 0 || *c.target_position >= c.cells()) {
            fail("target position off-grid");
        }
        if (c.blocked_cells.count(*c.target_position)) fail("target position is blocked");
        if (!c.liaison_agent || !c.agent_starts.count(*c.liaison_agent)) {
            fail("BlockedCells needs a designated (liaison) agent");
        }
        auto reach = grid_reachable(c.agent_starts.at(*c.liaison_agent), c.width, c.height,
                                    c.blocked_cells);
        if (!reach.count(*c.target_position)) {
            fail("target position unreachable for the designated agent");
        }
        if (!reach.count(c.survivor_positions.begin()->second)) {
            fail("survivor unreachable for the designated agent");
        }
    }
}

}  // namespace detail

inline GeneratedTask gridworld(const GridworldConfig& c) {
    detail::check_gridworld_config(c);
    using detail::atom;
    using detail::believes;
    using detail::ground_atom;
    using detail::ground_believes;
    using detail::neg;
    using epddl::constant;
    using epddl::var;

    const bool commander = is_commander_scenario(c.scenario);
    const bool blocked_scenario = c.scenario == Scenario::BlockedCells;

    epddl::DomainSpec d;
    d.name = "gridworld";
    d.types = {{"agent", "object", {}}, {"pos", "object", {}}, {"survivor", "object", {}}};
    d.predicates = {
        {"at", {{"a", "agent", {}}, {"p", "pos", {}}}, {}},
        {"adj", {{"p1", "pos", {}}, {"p2", "pos", {}}}, {}},
        {"free", {{"p", "pos", {}}}, {}},
        {"observed", {{"p", "pos", {}}}, {}},
        {"survivorat", {{"s", "survivor", {}}, {"p", "pos", {}}}, {}},
    };
    if (commander) {
        d.predicates.push_back({"canmove", {{"a", "agent", {}}}, {}});
        d.predicates.push_back({"iscommander", {{"a", "agent", {}}}, {}});
        d.predicates.push_back({"commpost", {{"p", "pos", {}}}, {}});
    }
    if (c.scenario == Scenario::CommanderNonBroadcast) {
        d.predicates.push_back({"cancomm", {{"a", "agent", {}}}, {}});
    }
    if (blocked_scenario) {
        d.predicates.push_back({"blocked", {{"p", "pos", {}}}, {}});
    }

    // move
    {
        epddl::ActionSchema move;
        move.name = "move";
        move.parameters = {{"a", "agent", {}}, {"from", "pos", {}}, {"to", "pos", {}}};
        move.precondition = {atom("at", {var("a"), var("from")}),
                             atom("adj", {var("from"), var("to")}),
                             atom("free", {var("to")})};
        if (commander) move.precondition.push_back(atom("canmove", {var("a")}));
        if (blocked_scenario) {
            move.precondition.push_back(neg(atom("blocked", {var("to")})));
        }
        // the vacate items come first so a degenerate self-move nets out
        for (epddl::TemplateRml lit :
             {neg(atom("at", {var("a"), var("from")})), neg(atom("free", {var("to")})),
              atom("at", {var("a"), var("to")}), atom("free", {var("from")})}) {
            epddl::EffectItem item;
            item.adds = {std::move(lit)};
            move.effects.push_back(std::move(item));
        }
        d.actions.push_back(std::move(move));
    }

    // observe: current cell only; transfers world truth into own beliefs
    {
        epddl::ActionSchema obs;
        obs.name = "observe";
        obs.parameters = {{"a", "agent", {}}, {"p", "pos", {}}};
        obs.precondition = {atom("at", {var("a"), var("p")})};
        epddl::EffectItem mark;
        mark.adds = {atom("observed", {var("p")})};
        obs.effects.push_back(mark);
        epddl::EffectItem present;
        present.quantifiers = {{"s", "survivor", {}}};
        present.condition = {atom("survivorat", {var("s"), var("p")})};
        present.adds = {believes(var("a"), atom("survivorat", {var("s"), var("p")}))};
        obs.effects.push_back(present);
        epddl::EffectItem absent;
        absent.quantifiers = {{"s", "survivor", {}}};
        absent.condition = {neg(atom("survivorat", {var("s"), var("p")}))};
        absent.adds = {believes(var("a"), neg(atom("survivorat", {var("s"), var("p")})))};
        obs.effects.push_back(absent);
        if (blocked_scenario) {
            // blocked status of orthogonal neighbors is visible from here
            epddl::EffectItem wall;
            wall.quantifiers = {{"q", "pos", {}}};
            wall.condition = {atom("adj", {var("p"), var("q")}),
                              atom("blocked", {var("q")})};
            wall.adds = {believes(var("a"), atom("blocked", {var("q")}))};
            obs.effects.push_back(wall);
            epddl::EffectItem open;
            open.quantifiers = {{"q", "pos", {}}};
            open.condition = {atom("adj", {var("p"), var("q")}),
                              neg(atom("blocked", {var("q")}))};
            open.adds = {believes(var("a"), neg(atom("blocked", {var("q")})))};
            obs.effects.push_back(open);
        }
        d.actions.push_back(std::move(obs));
    }

    // commsurvivor: broadcast a believed survivor position from that position
    {
        epddl::ActionSchema comm;
        comm.name = "commsurvivor";
        comm.parameters = {{"p", "pos", {}}, {"a", "agent", {}}, {"s", "survivor", {}}};
        comm.precondition = {atom("at", {var("a"), var("p")}),
                             believes(var("a"), atom("survivorat", {var("s"), var("p")}))};
        if (c.scenario == Scenario::CommanderNonBroadcast) {
            comm.precondition.push_back(atom("cancomm", {var("a")}));
        }
        epddl::EffectItem tell;
        tell.quantifiers = {{"g", "agent", {}}};
        if (c.scenario == Scenario::CommanderNonBroadcast) {
            tell.condition = {atom("iscommander", {var("g")})};
        }
        tell.adds = {believes(var("g"), atom("survivorat", {var("s"), var("p")}))};
        comm.effects = {tell};
        d.actions.push_back(std::move(comm));
    }

    // problem
    epddl::ProblemSpec p;
    p.name = "gridworld-" + std::string(scenario_token(c.scenario));
    p.domain_name = d.name;
    for (const auto& [agent, cell] : c.agent_starts) {
        (void)cell;
        p.objects.push_back({agent, "agent", {}});
    }
    for (int cell = 0; cell < c.cells(); ++cell) {
        p.objects.push_back({pos_name(cell), "pos", {}});
    }
    for (const auto& [survivor, cell] : c.survivor_positions) {
        (void)cell;
        p.objects.push_back({survivor, "survivor", {}});
    }

    GroundTruth gt;
    for (const auto& [survivor, cell] : c.survivor_positions) {
        for (int q = 0; q < c.cells(); ++q) {
            Rml l = ground_atom("survivorat", {survivor, pos_name(q)});
            if (q != cell) l.base_negated = true;
            gt.literals.push_back(std::move(l));
        }
    }
    if (blocked_scenario) {
        for (int q = 0; q < c.cells(); ++q) {
            Rml l = ground_atom("blocked", {pos_name(q)});
            if (!c.blocked_cells.count(q)) l.base_negated = true;
            gt.literals.push_back(std::move(l));
        }
    }

    std::set<int> occupied;
    for (const auto& [agent, cell] : c.agent_starts) {
        p.init.push_back(ground_atom("at", {agent, pos_name(cell)}));
        occupied.insert(cell);
    }
    for (int cell = 0; cell < c.cells(); ++cell) {
        for (int n : detail::grid_neighbors(cell, c.width, c.height)) {
            p.init.push_back(ground_atom("adj", {pos_name(cell), pos_name(n)}));
        }
        if (!occupied.count(cell)) {
            p.init.push_back(ground_atom("free", {pos_name(cell)}));
        }
    }
    p.init.insert(p.init.end(), gt.literals.begin(), gt.literals.end());
    if (commander) {
        for (const auto& [agent, cell] : c.agent_starts) {
            (void)cell;
            if (agent != *c.commander_agent) {
                p.init.push_back(ground_atom("canmove", {agent}));
            }
        }
        p.init.push_back(ground_atom("iscommander", {*c.commander_agent}));
        // the post covers the commander's cell and its orthogonal neighbors;
        // visitors stand next to the commander, whose own cell stays occupied
        int post = c.agent_starts.at(*c.commander_agent);
        p.init.push_back(ground_atom("commpost", {pos_name(post)}));
        for (int n : detail::grid_neighbors(post, c.width, c.height)) {
            p.init.push_back(ground_atom("commpost", {pos_name(n)}));
        }
    }
    if (c.scenario == Scenario::CommanderNonBroadcast) {
        p.init.push_back(ground_atom("cancomm", {*c.liaison_agent}));
    }

    // goal
    switch (c.scenario) {
        case Scenario::EpistemicGoal:
            for (int cell = 0; cell < c.cells(); ++cell) {
                p.goal.conjuncts.push_back(ground_atom("observed", {pos_name(cell)}));
            }
            for (const auto& [agent, start] : c.agent_starts) {
                (void)start;
                for (const auto& [survivor, cell] : c.survivor_positions) {
                    p.goal.conjuncts.push_back(ground_believes(
                        agent, ground_atom("survivorat", {survivor, pos_name(cell)})));
                }
            }
            break;
        case Scenario::NonEpistemicGoal:
            for (int cell = 0; cell < c.cells(); ++cell) {
                p.goal.conjuncts.push_back(ground_atom("observed", {pos_name(cell)}));
            }
            break;
        case Scenario::CommanderBroadcast:
        case Scenario::CommanderNonBroadcast:
            for (int cell = 0; cell < c.cells(); ++cell) {
                p.goal.conjuncts.push_back(ground_atom("observed", {pos_name(cell)}));
            }
            for (const auto& [survivor, cell] : c.survivor_positions) {
                p.goal.conjuncts.push_back(ground_believes(
                    *c.commander_agent,
                    ground_atom("survivorat", {survivor, pos_name(cell)})));
            }
            break;
        case Scenario::BlockedCells: {
            const auto& [survivor, cell] = *c.survivor_positions.begin();
            p.goal.conjuncts.push_back(
                ground_atom("at", {*c.liaison_agent, pos_name(*c.target_position)}));
            p.goal.conjuncts.push_back(ground_believes(
                *c.liaison_agent, ground_atom("survivorat", {survivor, pos_name(cell)})));
            break;
        }
    }

    return {std::move(d), std::move(p), std::move(gt)};
}

}  // namespace epiplan::domains
