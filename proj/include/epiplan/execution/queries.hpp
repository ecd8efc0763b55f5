// The subject-overlap machinery: a task-derived query set and the
// percentage of queries answered consistently by every agent's store.
//
// Gridworld queries, per position: observed / not observed / holds a
// survivor / holds no survivor (4 per position, 36 on a 3x3 map). BW4T
// asks the same of rooms and block contents. "Holds a survivor" is an
// existential over placements: an agent answers it positively by believing
// any survivor there, negatively by believing every survivor absent.

#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "epiplan/belief.hpp"
#include "epiplan/epddl/ast.hpp"

namespace epiplan::execution {

struct Query {
    enum class Kind { Direct, ExistsPlacement };
    Fluent proposition;  // world-level, e.g. observed(p1) or hassurvivor(p1)
    bool positive = true;
    Kind kind = Kind::Direct;
    std::vector<Fluent> witnesses;  // placement instances for ExistsPlacement

    std::string text() const {
        std::string out = positive ? "" : "!";
        out += "(" + proposition.predicate;
        for (const auto& a : proposition.args) out += " " + a;
        out += ")";
        return out;
    }
};

// True iff `store` answers the query's own-prefixed form for `agent`.
inline bool store_answers(const BeliefState& store, const std::string& agent,
                          const Query& q) {
    auto prefixed = [&](const Fluent& f, bool negated) {
        Rml l;
        l.chain = {{agent, false}};
        l.fluent = f;
        l.base_negated = negated;
        return l;
    };
    if (q.kind == Query::Kind::Direct) {
        return entails(store, prefixed(q.proposition, !q.positive));
    }
    if (q.positive) {
        for (const auto& w : q.witnesses) {
            if (entails(store, prefixed(w, false))) return true;
        }
        return false;
    }
    for (const auto& w : q.witnesses) {
        if (!entails(store, prefixed(w, true))) return false;
    }
    return true;
}

// Builds the task-derived query set in deterministic order: locations in
// declaration order, each contributing observed+, observed-, placement+,
// placement-. Throws on problems that are neither gridworld nor BW4T shaped.
inline std::vector<Query> build_query_set(const epddl::ProblemSpec& p,
                                          const epddl::DomainSpec& d) {
    struct Shape {
        std::string location_type;
        std::string observed_pred;
        std::string placement_pred;  // placement(entity, location)
        std::string entity_type;
        std::string synthetic;       // name of the existential proposition
    };
    Shape shape;
    if (d.find_predicate("observed") && d.find_predicate("survivorat")) {
        shape = {"pos", "observed", "survivorat", "survivor", "hassurvivor"};
    } else if (d.find_predicate("observedroom") && d.find_predicate("blockat")) {
        shape = {"room", "observedroom", "blockat", "block", "hasblock"};
    } else {
        throw std::invalid_argument(
            "query set is only defined for gridworld- and bw4t-shaped tasks");
    }

    std::vector<std::string> locations = p.objects_of_type(d, shape.location_type);
    std::vector<std::string> entities = p.objects_of_type(d, shape.entity_type);
    if (locations.empty()) {
        throw std::invalid_argument("no locations to build queries over");
    }
    std::vector<Query> out;
    for (const auto& loc : locations) {
        for (bool positive : {true, false}) {
            Query q;
            q.proposition = {shape.observed_pred, {loc}};
            q.positive = positive;
            out.push_back(std::move(q));
        }
        for (bool positive : {true, false}) {
            Query q;
            q.proposition = {shape.synthetic, {loc}};
            q.positive = positive;
            q.kind = Query::Kind::ExistsPlacement;
            for (const auto& e : entities) {
                q.witnesses.push_back({shape.placement_pred, {e, loc}});
            }
            out.push_back(std::move(q));
        }
    }
    return out;
}

// Percentage of queries answered by every store, to two decimals.
inline double smm_overlap(const std::map<std::string, BeliefState>& stores,
                          const std::vector<Query>& queries) {
    if (queries.empty()) {
        throw std::invalid_argument("subject overlap needs a nonempty query set");
    }
    if (stores.empty()) {
        throw std::invalid_argument("subject overlap needs at least one store");
    }
    int covered = 0;
    for (const auto& q : queries) {
        bool all = true;
        for (const auto& [agent, store] : stores) {
            if (!store_answers(store, agent, q)) {
                all = false;
                break;
            }
        }
        if (all) ++covered;
    }
    double pct = 100.0 * covered / static_cast<double>(queries.size());
    return std::llround(pct * 100.0) / 100.0;
}

// Queries whose positive answer is forced for every listed agent by the
// goal's belief conjuncts; used to check that epistemic-goal runs end with
// full overlap on what the goal demanded.
inline std::vector<Query> goal_relevant_queries(const GoalFormula& goal,
                                                const std::vector<Query>& queries,
                                                const std::vector<std::string>& agents) {
    auto forced_for = [&](const std::string& agent, const Fluent& f) {
        for (const auto& c : goal.conjuncts) {
            if (c.chain.size() == 1 && !c.chain.front().negated &&
                c.chain.front().agent == agent && !c.base_negated && c.fluent == f) {
                return true;
            }
        }
        return false;
    };
    std::vector<Query> out;
    for (const auto& q : queries) {
        if (!q.positive) continue;
        const std::vector<Fluent> cands =
            q.kind == Query::Kind::Direct ? std::vector<Fluent>{q.proposition} : q.witnesses;
        bool forced_for_all = !agents.empty();
        for (const auto& agent : agents) {
            bool any = false;
            for (const auto& w : cands) {
                if (forced_for(agent, w)) any = true;
            }
            if (!any) {
                forced_for_all = false;
                break;
            }
        }
        if (forced_for_all) out.push_back(q);
    }
    return out;
}

}  // namespace epiplan::execution
