// Finite enumeration of the RML universe for a bounded nesting depth.
//
// Order is chain-length major; within one length, chains vary slowest
// (digits over (agent, polarity) pairs, agents in roster order, positive
// before negated), then fluent index, then base polarity. The count obeys
// sum_{k=0..d} (2n)^k * 2F.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "epiplan/belief.hpp"
#include "epiplan/epddl/ast.hpp"

namespace epiplan::compiler {

inline std::vector<Rml> enumerate_rmls(const std::vector<Fluent>& fluents,
                                       const std::vector<std::string>& agents, int depth_bound) {
    if (depth_bound < 0 || depth_bound > kMaxDepth) {
        throw std::invalid_argument("depth bound " + std::to_string(depth_bound) +
                                    " outside [0, " + std::to_string(kMaxDepth) + "]");
    }
    std::vector<Rml> out;
    const std::size_t digits = 2 * agents.size();
    for (int k = 0; k <= depth_bound; ++k) {
        std::vector<std::size_t> chain_digits(k, 0);
        while (true) {
            Rml prefix;
            for (int i = 0; i < k; ++i) {
                prefix.chain.push_back(
                    {agents[chain_digits[i] / 2], chain_digits[i] % 2 == 1});
            }
            for (const auto& f : fluents) {
                for (bool neg : {false, true}) {
                    Rml l = prefix;
                    l.fluent = f;
                    l.base_negated = neg;
                    out.push_back(std::move(l));
                }
            }
            if (k == 0) break;
            int pos = k - 1;
            while (pos >= 0 && ++chain_digits[pos] == digits) {
                chain_digits[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    return out;
}

inline std::uint64_t enumerate_rml_count(std::uint64_t num_fluents, std::uint64_t num_agents,
                                         int depth_bound) {
    std::uint64_t total = 0;
    std::uint64_t chains = 1;
    for (int k = 0; k <= depth_bound; ++k) {
        total += chains * 2 * num_fluents;
        chains *= 2 * num_agents;
    }
    return total;
}

// Every type-consistent instantiation of every declared predicate, in
// declaration order with argument tuples in object-declaration order.
inline std::vector<Fluent> ground_fluents(const epddl::DomainSpec& d,
                                          const epddl::ProblemSpec& p) {
    std::vector<Fluent> out;
    for (const auto& pred : d.predicates) {
        std::vector<std::vector<std::string>> choices;
        for (const auto& param : pred.params) {
            choices.push_back(p.objects_of_type(d, param.type));
        }
        std::vector<std::size_t> idx(choices.size(), 0);
        bool any_empty = false;
        for (const auto& c : choices) {
            if (c.empty()) any_empty = true;
        }
        if (any_empty) continue;  // predicate can never be instantiated
        while (true) {
            Fluent f;
            f.predicate = pred.name;
            for (std::size_t i = 0; i < choices.size(); ++i) {
                f.args.push_back(choices[i][idx[i]]);
            }
            out.push_back(std::move(f));
            int pos = static_cast<int>(choices.size()) - 1;
            while (pos >= 0 && ++idx[pos] == choices[pos].size()) {
                idx[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    return out;
}

}  // namespace epiplan::compiler
