// Blocks World for Teams search-and-retrieval generator. Agents travel
// between fully connected rooms, observe room contents, carry one block at
// a time, and deliver two target-color blocks to the drop zone in order
// (delivered1 gates delivered2). commblock broadcasts a believed block
// position from the room the communicator stands in, mirroring the shape
// of the gridworld commsurvivor action.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "epiplan/domains/build_util.hpp"
#include "epiplan/domains/gridworld.hpp"  // GroundTruth, GeneratedTask
#include "epiplan/domains/scenario.hpp"

namespace epiplan::domains {

struct BW4TBlock {
    int room = 1;  // 1..room_count are search rooms; 0 is the drop zone
    std::string color;
};

struct BW4TConfig {
    int room_count = 3;
    std::map<std::string, BW4TBlock> block_placement;   // block -> (room, color)
    std::pair<std::string, std::string> target_colors;  // delivery order
    std::string drop_zone = "dz";
    std::map<std::string, int> agent_starts;  // agent -> room index (0 = drop zone)
    std::optional<int> blocked_room;          // BlockedCells scenario only
    Scenario scenario = Scenario::EpistemicGoal;
    CommModel comm_model = CommModel::Selective;
    std::optional<std::string> commander_agent;
    std::optional<std::string> liaison_agent;
};

inline std::string room_name(const BW4TConfig& c, int room) {
    return room == 0 ? c.drop_zone : "r" + std::to_string(room);
}

namespace detail {

struct BW4TTargets {
    std::string first_block;
    std::string second_block;
};

inline BW4TTargets check_bw4t_config(const BW4TConfig& c) {
    auto fail = [](const std::string& why) {
        throw std::invalid_argument("bw4t config rejected: " + why);
    };
    if (c.room_count < 1) fail("needs at least one search room");
    if (c.agent_starts.empty()) fail("no agents");
    for (const auto& [agent, room] : c.agent_starts) {
        if (room < 0 || room > c.room_count) fail("agent " + agent + " starts off-map");
    }
    if (c.block_placement.empty()) fail("no blocks");
    if (c.target_colors.first == c.target_colors.second) {
        fail("target colors must be distinct");
    }
    BW4TTargets targets;
    for (const auto& [block, info] : c.block_placement) {
        if (info.room < 0 || info.room > c.room_count) {
            fail("block " + block + " placed off-map");
        }
        if (info.color == c.target_colors.first) {
            if (!targets.first_block.empty()) fail("two blocks share the first target color");
            targets.first_block = block;
        }
        if (info.color == c.target_colors.second) {
            if (!targets.second_block.empty()) {
                fail("two blocks share the second target color");
            }
            targets.second_block = block;
        }
    }
    if (targets.first_block.empty() || targets.second_block.empty()) {
        fail("target colors must be present among the blocks");
    }
    // delivery fluents must start unsatisfied
    if (c.block_placement.at(targets.first_block).room == 0 ||
        c.block_placement.at(targets.second_block).room == 0) {
        fail("a target block already sits at the drop zone");
    }
    if (c.scenario == Scenario::BlockedCells) {
        if (!c.blocked_room || *c.blocked_room < 1 || *c.blocked_room > c.room_count) {
            fail("BlockedCells needs a blocked search room");
        }
        for (const auto& [block, info] : c.block_placement) {
            if ((block == targets.first_block || block == targets.second_block) &&
                info.room == *c.blocked_room) {
                fail("target block " + block + " is inside the blocked room");
            }
        }
        for (const auto& [agent, room] : c.agent_starts) {
            if (room == *c.blocked_room) fail("agent " + agent + " starts in the blocked room");
        }
    } else if (c.blocked_room) {
        fail("a blocked room is only available in the BlockedCells scenario");
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
    return targets;
}

}  // namespace detail

inline GeneratedTask bw4t(const BW4TConfig& c) {
    detail::BW4TTargets targets = detail::check_bw4t_config(c);
    using detail::atom;
    using detail::believes;
    using detail::ground_atom;
    using detail::ground_believes;
    using detail::neg;
    using epddl::var;

    const bool commander = is_commander_scenario(c.scenario);
    const bool blocked_scenario = c.scenario == Scenario::BlockedCells;

    epddl::DomainSpec d;
    d.name = "bw4t";
    d.types = {{"agent", "object", {}}, {"room", "object", {}}, {"block", "object", {}}};
    d.predicates = {
        {"at", {{"a", "agent", {}}, {"r", "room", {}}}, {}},
        {"blockat", {{"b", "block", {}}, {"r", "room", {}}}, {}},
        {"holding", {{"a", "agent", {}}, {"b", "block", {}}}, {}},
        {"handempty", {{"a", "agent", {}}}, {}},
        {"observedroom", {{"r", "room", {}}}, {}},
        {"searchroom", {{"r", "room", {}}}, {}},
        {"isdrop", {{"r", "room", {}}}, {}},
        {"istarget1", {{"b", "block", {}}}, {}},
        {"istarget2", {{"b", "block", {}}}, {}},
        {"delivered1", {}, {}},
        {"delivered2", {}, {}},
    };
    if (commander) {
        d.predicates.push_back({"canmove", {{"a", "agent", {}}}, {}});
        d.predicates.push_back({"iscommander", {{"a", "agent", {}}}, {}});
        d.predicates.push_back({"commpost", {{"r", "room", {}}}, {}});
    }
    if (c.scenario == Scenario::CommanderNonBroadcast) {
        d.predicates.push_back({"cancomm", {{"a", "agent", {}}}, {}});
    }
    if (blocked_scenario) {
        d.predicates.push_back({"blockedroom", {{"r", "room", {}}}, {}});
    }

    {
        epddl::ActionSchema go;
        go.name = "goto";
        go.parameters = {{"a", "agent", {}}, {"from", "room", {}}, {"to", "room", {}}};
        go.precondition = {atom("at", {var("a"), var("from")}),
                           atom("searchroom", {var("to")})};
        if (commander) go.precondition.push_back(atom("canmove", {var("a")}));
        if (blocked_scenario) {
            go.precondition.push_back(neg(atom("blockedroom", {var("to")})));
        }
        // vacate first so goto(a, r, r) nets out to staying put
        epddl::EffectItem leave;
        leave.adds = {neg(atom("at", {var("a"), var("from")}))};
        epddl::EffectItem arrive;
        arrive.adds = {atom("at", {var("a"), var("to")})};
        go.effects = {leave, arrive};
        d.actions.push_back(std::move(go));
    }
    {
        epddl::ActionSchema go;
        go.name = "gotodrop";
        go.parameters = {{"a", "agent", {}}, {"from", "room", {}}, {"to", "room", {}}};
        go.precondition = {atom("at", {var("a"), var("from")}), atom("isdrop", {var("to")})};
        if (commander) go.precondition.push_back(atom("canmove", {var("a")}));
        epddl::EffectItem leave;
        leave.adds = {neg(atom("at", {var("a"), var("from")}))};
        epddl::EffectItem arrive;
        arrive.adds = {atom("at", {var("a"), var("to")})};
        go.effects = {leave, arrive};
        d.actions.push_back(std::move(go));
    }
    {
        epddl::ActionSchema pick;
        pick.name = "pickup";
        pick.parameters = {{"a", "agent", {}}, {"b", "block", {}}, {"r", "room", {}}};
        pick.precondition = {atom("at", {var("a"), var("r")}),
                             atom("blockat", {var("b"), var("r")}),
                             atom("handempty", {var("a")})};
        epddl::EffectItem eff;
        eff.adds = {neg(atom("blockat", {var("b"), var("r")})),
                    neg(atom("handempty", {var("a")})),
                    atom("holding", {var("a"), var("b")})};
        pick.effects = {eff};
        d.actions.push_back(std::move(pick));
    }
    {
        epddl::ActionSchema put;
        put.name = "putdown";
        put.parameters = {{"a", "agent", {}}, {"b", "block", {}}, {"r", "room", {}}};
        put.precondition = {atom("at", {var("a"), var("r")}), atom("isdrop", {var("r")}),
                            atom("holding", {var("a"), var("b")})};
        epddl::EffectItem place;
        place.adds = {neg(atom("holding", {var("a"), var("b")})),
                      atom("handempty", {var("a")}),
                      atom("blockat", {var("b"), var("r")}),
                      believes(var("a"), atom("blockat", {var("b"), var("r")}))};
        put.effects.push_back(place);
        epddl::EffectItem first;
        first.condition = {atom("istarget1", {var("b")})};
        first.adds = {atom("delivered1", {})};
        put.effects.push_back(first);
        epddl::EffectItem second;
        second.condition = {atom("istarget2", {var("b")}), atom("delivered1", {})};
        second.adds = {atom("delivered2", {})};
        put.effects.push_back(second);
        d.actions.push_back(std::move(put));
    }
    {
        epddl::ActionSchema obs;
        obs.name = "observe";
        obs.parameters = {{"a", "agent", {}}, {"r", "room", {}}};
        obs.precondition = {atom("at", {var("a"), var("r")})};
        epddl::EffectItem mark;
        mark.adds = {atom("observedroom", {var("r")})};
        obs.effects.push_back(mark);
        epddl::EffectItem present;
        present.quantifiers = {{"b", "block", {}}};
        present.condition = {atom("blockat", {var("b"), var("r")})};
        present.adds = {believes(var("a"), atom("blockat", {var("b"), var("r")}))};
        obs.effects.push_back(present);
        epddl::EffectItem absent;
        absent.quantifiers = {{"b", "block", {}}};
        absent.condition = {neg(atom("blockat", {var("b"), var("r")}))};
        absent.adds = {believes(var("a"), neg(atom("blockat", {var("b"), var("r")})))};
        obs.effects.push_back(absent);
        d.actions.push_back(std::move(obs));
    }
    {
        epddl::ActionSchema comm;
        comm.name = "commblock";
        comm.parameters = {{"r", "room", {}}, {"a", "agent", {}}, {"b", "block", {}}};
        comm.precondition = {atom("at", {var("a"), var("r")}),
                             believes(var("a"), atom("blockat", {var("b"), var("r")}))};
        if (c.scenario == Scenario::CommanderNonBroadcast) {
            comm.precondition.push_back(atom("cancomm", {var("a")}));
        }
        epddl::EffectItem tell;
        tell.quantifiers = {{"g", "agent", {}}};
        if (c.scenario == Scenario::CommanderNonBroadcast) {
            tell.condition = {atom("iscommander", {var("g")})};
        }
        tell.adds = {believes(var("g"), atom("blockat", {var("b"), var("r")}))};
        comm.effects = {tell};
        d.actions.push_back(std::move(comm));
    }

    epddl::ProblemSpec p;
    p.name = "bw4t-" + std::string(scenario_token(c.scenario));
    p.domain_name = d.name;
    for (const auto& [agent, room] : c.agent_starts) {
        (void)room;
        p.objects.push_back({agent, "agent", {}});
    }
    p.objects.push_back({c.drop_zone, "room", {}});
    for (int r = 1; r <= c.room_count; ++r) {
        p.objects.push_back({room_name(c, r), "room", {}});
    }
    for (const auto& [block, info] : c.block_placement) {
        (void)info;
        p.objects.push_back({block, "block", {}});
    }

    GroundTruth gt;
    for (const auto& [block, info] : c.block_placement) {
        for (int r = 0; r <= c.room_count; ++r) {
            Rml l = ground_atom("blockat", {block, room_name(c, r)});
            if (r != info.room) l.base_negated = true;
            gt.literals.push_back(std::move(l));
        }
    }
    if (blocked_scenario) {
        for (int r = 0; r <= c.room_count; ++r) {
            Rml l = ground_atom("blockedroom", {room_name(c, r)});
            if (r != *c.blocked_room) l.base_negated = true;
            gt.literals.push_back(std::move(l));
        }
    }

    for (const auto& [agent, room] : c.agent_starts) {
        p.init.push_back(ground_atom("at", {agent, room_name(c, room)}));
        p.init.push_back(ground_atom("handempty", {agent}));
    }
    for (int r = 1; r <= c.room_count; ++r) {
        p.init.push_back(ground_atom("searchroom", {room_name(c, r)}));
    }
    p.init.push_back(ground_atom("isdrop", {c.drop_zone}));
    p.init.push_back(ground_atom("istarget1", {targets.first_block}));
    p.init.push_back(ground_atom("istarget2", {targets.second_block}));
    p.init.insert(p.init.end(), gt.literals.begin(), gt.literals.end());
    if (commander) {
        for (const auto& [agent, room] : c.agent_starts) {
            (void)room;
            if (agent != *c.commander_agent) {
                p.init.push_back(ground_atom("canmove", {agent}));
            }
        }
        p.init.push_back(ground_atom("iscommander", {*c.commander_agent}));
        p.init.push_back(ground_atom(
            "commpost", {room_name(c, c.agent_starts.at(*c.commander_agent))}));
    }
    if (c.scenario == Scenario::CommanderNonBroadcast) {
        p.init.push_back(ground_atom("cancomm", {*c.liaison_agent}));
    }

    auto observe_goal = [&](bool skip_blocked) {
        for (int r = 1; r <= c.room_count; ++r) {
            if (skip_blocked && blocked_scenario && r == *c.blocked_room) continue;
            p.goal.conjuncts.push_back(ground_atom("observedroom", {room_name(c, r)}));
        }
    };
    auto delivery_beliefs = [&](const std::string& agent) {
        p.goal.conjuncts.push_back(ground_believes(
            agent, ground_atom("blockat", {targets.first_block, c.drop_zone})));
        p.goal.conjuncts.push_back(ground_believes(
            agent, ground_atom("blockat", {targets.second_block, c.drop_zone})));
    };
    switch (c.scenario) {
        case Scenario::EpistemicGoal:
            observe_goal(false);
            for (const auto& [agent, room] : c.agent_starts) {
                (void)room;
                delivery_beliefs(agent);
            }
            break;
        case Scenario::NonEpistemicGoal:
            observe_goal(false);
            p.goal.conjuncts.push_back(ground_atom("delivered1", {}));
            p.goal.conjuncts.push_back(ground_atom("delivered2", {}));
            break;
        case Scenario::CommanderBroadcast:
        case Scenario::CommanderNonBroadcast:
            observe_goal(false);
            delivery_beliefs(*c.commander_agent);
            break;
        case Scenario::BlockedCells:
            observe_goal(true);
            p.goal.conjuncts.push_back(ground_atom("delivered1", {}));
            p.goal.conjuncts.push_back(ground_atom("delivered2", {}));
            break;
    }

    return {std::move(d), std::move(p), std::move(gt)};
}

}  // namespace epiplan::domains
