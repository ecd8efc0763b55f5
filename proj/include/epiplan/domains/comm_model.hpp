// Realizes the three communication models on a generated domain.
//
//   Selective  - unchanged; the planner chooses when to fire the comm action
//   NoComm     - comm action removed; commander scenarios instead restrict
//                it to the commander's post (communication by co-location)
//   CommAll    - comm action removed and observe rewired so every
//                belief-acquiring conditional effect broadcasts to every
//                agent (forced broadcast fused with observation)

#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

#include "epiplan/domains/build_util.hpp"
#include "epiplan/domains/scenario.hpp"
#include "epiplan/epddl/ast.hpp"

namespace epiplan::domains {

inline bool is_communication_action(const std::string& action_name) {
    return action_name.rfind("comm", 0) == 0;
}

inline epddl::DomainSpec apply_comm_model(epddl::DomainSpec d, CommModel model,
                                          Scenario scenario) {
    if (model == CommModel::Selective) return d;

    auto comm_it = std::find_if(d.actions.begin(), d.actions.end(), [](const auto& a) {
        return is_communication_action(a.name);
    });
    if (comm_it == d.actions.end()) {
        throw std::invalid_argument(
            "cannot apply a communication model: domain has no communication action");
    }

    if (model == CommModel::NoComm) {
        if (is_commander_scenario(scenario)) {
            // Keep the action but move the communicator to the commander's
            // post: drop the coupling of the communicator's position to the
            // communicated fact and require standing on a commpost location
            // instead. Beliefs persist, so the fact travels with the agent.
            if (!d.find_predicate("commpost")) {
                throw std::invalid_argument(
                    "NoComm on a commander scenario needs the commpost predicate");
            }
            if (comm_it->parameters.empty()) {
                throw std::invalid_argument("communication action has no location parameter");
            }
            const std::string& place_param = comm_it->parameters.front().name;
            const std::string& place_type = comm_it->parameters.front().type;
            std::string agent_param;
            for (const auto& param : comm_it->parameters) {
                if (d.is_subtype(param.type, "agent")) {
                    agent_param = param.name;
                    break;
                }
            }
            if (agent_param.empty()) {
                throw std::invalid_argument("communication action has no agent parameter");
            }
            auto coupled = std::find_if(
                comm_it->precondition.begin(), comm_it->precondition.end(),
                [&](const epddl::TemplateRml& l) {
                    return l.chain.empty() && !l.base_negated && l.fluent.predicate == "at" &&
                           l.fluent.args ==
                               std::vector<epddl::Term>{epddl::var(agent_param),
                                                        epddl::var(place_param)};
                });
            if (coupled != comm_it->precondition.end()) {
                comm_it->precondition.erase(coupled);
            }
            comm_it->parameters.push_back({"loc", place_type, {}});
            comm_it->precondition.push_back(
                detail::atom("at", {epddl::var(agent_param), epddl::var("loc")}));
            comm_it->precondition.push_back(detail::atom("commpost", {epddl::var("loc")}));
        } else {
            d.actions.erase(comm_it);
        }
        return d;
    }

    // CommAll
    d.actions.erase(comm_it);
    auto obs_it = std::find_if(d.actions.begin(), d.actions.end(),
                               [](const auto& a) { return a.name == "observe"; });
    if (obs_it == d.actions.end()) {
        throw std::invalid_argument("CommAll needs an observe action to fuse broadcasts into");
    }
    const std::string receiver = "bcast";
    for (auto& item : obs_it->effects) {
        bool has_belief_add = false;
        for (const auto& add : item.adds) {
            if (!add.chain.empty()) has_belief_add = true;
        }
        if (!has_belief_add) continue;
        item.quantifiers.push_back({receiver, "agent", {}});
        for (auto& add : item.adds) {
            if (!add.chain.empty()) add.chain.front().agent = epddl::var(receiver);
        }
    }
    return d;
}

}  // namespace epiplan::domains
