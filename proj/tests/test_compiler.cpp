#include <set>

#include "catch_amalgamated.hpp"
#include "epiplan/compiler/compile.hpp"
#include "epiplan/epddl/parser.hpp"
#include "task_oracles.hpp"
#include "test_helpers.hpp"

using namespace epiplan;
using namespace epiplan::compiler;

namespace {

const char* kGridDomain = R"((define (domain gridworld)
  (:types agent pos survivor)
  (:predicates (at ?a - agent ?p - pos)
               (survivorat ?s - survivor ?p - pos))
  (:action commsurvivor
    :derive-condition always
    :parameters (?p - pos ?a - agent ?s - survivor)
    :precondition (and (at ?a ?p) [?a](survivorat ?s ?p))
    :effect (and (forall ?g - agent [?g](survivorat ?s ?p))))
))";

std::string grid_problem(int positions, int agents, int survivors) {
    std::string objs;
    for (int i = 1; i <= agents; ++i) objs += " a" + std::to_string(i);
    objs += " - agent";
    for (int i = 1; i <= positions; ++i) objs += " p" + std::to_string(i);
    objs += " - pos";
    for (int i = 1; i <= survivors; ++i) objs += " s" + std::to_string(i);
    objs += " - survivor";
    std::string init;
    for (int i = 1; i <= agents; ++i) {
        init += " (at a" + std::to_string(i) + " p" + std::to_string(i) + ")";
    }
    return "(define (problem grid) (:domain gridworld)\n  (:objects" + objs +
           ")\n  (:init" + init + ")\n  (:goal (and (at a1 p1))))";
}

std::vector<Fluent> abstract_fluents(int n) {
    std::vector<Fluent> out;
    for (int i = 0; i < n; ++i) out.push_back({"f" + std::to_string(i), {}});
    return out;
}

std::vector<std::string> roster(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back("a" + std::to_string(i));
    return out;
}

}  // namespace

TEST_CASE("enumerate_rmls matches hand counts") {
    auto twelve = enumerate_rmls(abstract_fluents(2), roster(1), 1);
    CHECK(twelve.size() == 12);  // 4 depth-0 + 8 depth-1

    auto depth0 = enumerate_rmls(abstract_fluents(5), roster(3), 0);
    CHECK(depth0.size() == 10);

    auto large = enumerate_rmls(abstract_fluents(10), roster(3), 1);
    CHECK(large.size() == 140);
    CHECK(enumerate_rml_count(10, 3, 1) == 140);
}

TEST_CASE("enumerate_rmls agrees with the recursive oracle up to depth 2") {
    for (int f = 1; f <= 6; ++f) {
        for (int n = 1; n <= 3; ++n) {
            for (int d = 0; d <= 2; ++d) {
                auto fluents = abstract_fluents(f);
                auto agents = roster(n);
                auto got = enumerate_rmls(fluents, agents, d);
                auto expected = testutil::enumerate_rmls_oracle(fluents, agents, d);
                REQUIRE(got.size() == expected.size());
                CHECK(enumerate_rml_count(f, n, d) == got.size());
                std::set<Rml> got_set(got.begin(), got.end());
                std::set<Rml> expected_set(expected.begin(), expected.end());
                CHECK(got_set == expected_set);
                CHECK(got_set.size() == got.size());  // no duplicates
            }
        }
    }
}

TEST_CASE("enumerate_rmls order is chain-length major and deterministic") {
    auto list = enumerate_rmls(abstract_fluents(2), roster(2), 2);
    for (std::size_t i = 1; i < list.size(); ++i) {
        CHECK(depth(list[i - 1]) <= depth(list[i]));
    }
    CHECK(list == enumerate_rmls(abstract_fluents(2), roster(2), 2));
}

TEST_CASE("enumerate_rmls rejects depths beyond the engine bound") {
    CHECK_THROWS_AS(enumerate_rmls(abstract_fluents(1), roster(1), 4),
                    std::invalid_argument);
}

TEST_CASE("grounding commsurvivor over 9x3x3 yields 81 actions") {
    auto d = epddl::parse_domain(kGridDomain);
    auto p = epddl::parse_problem(grid_problem(9, 3, 3));
    auto actions = ground(d, p);
    // independent cartesian enumeration over the typed parameter lists
    std::size_t expected = 0;
    for (int pos = 1; pos <= 9; ++pos) {
        for (int ag = 1; ag <= 3; ++ag) {
            for (int sv = 1; sv <= 3; ++sv) ++expected;
        }
    }
    CHECK(actions.size() == expected);
    std::set<std::string> signatures;
    for (const auto& a : actions) signatures.insert(a.signature());
    CHECK(signatures.size() == actions.size());

    // forall over three agents becomes three one-add items
    const GroundAction& first = actions.front();
    CHECK(first.actor == first.args[1]);
    REQUIRE(first.effects.size() == 3);
    for (const auto& item : first.effects) {
        CHECK(item.guard.empty());
        CHECK(item.adds.size() == 1);
        CHECK(item.adds.front().chain.size() == 1);
    }
}

TEST_CASE("schema with zero parameters grounds to exactly one action") {
    auto d = epddl::parse_domain(
        "(define (domain tiny) (:types agent) (:predicates (go))\n"
        "  (:action fire :derive-condition always :parameters ()\n"
        "   :precondition (and) :effect (and (go))))");
    auto p = epddl::parse_problem(
        "(define (problem t) (:domain tiny) (:objects a1 - agent)\n"
        "  (:init) (:goal (and (go))))");
    auto actions = ground(d, p);
    REQUIRE(actions.size() == 1);
    CHECK(actions.front().args.empty());
    CHECK(actions.front().actor.empty());
}

TEST_CASE("compiling an add of B_a p evicts B_a !p and !B_a p") {
    auto d = epddl::parse_domain(
        "(define (domain b) (:types agent) (:predicates (p))\n"
        "  (:action learn :derive-condition always :parameters (?a - agent)\n"
        "   :precondition (and) :effect (and [?a](p))))");
    auto p = epddl::parse_problem(
        "(define (problem t) (:domain b) (:objects a1 - agent)\n"
        "  (:init) (:goal (and [a1](p))))");
    ClassicalTask t = compile(d, p, {1, false});
    REQUIRE(t.actions.size() == 1);
    REQUIRE(t.actions.front().effects.size() == 1);
    const CompiledEffect& e = t.actions.front().effects.front();
    REQUIRE(e.adds.size() == 1);
    Rml added = t.fluents[e.adds.front()];
    CHECK(to_text(added) == "[a1](p)");

    // oracle: eviction set = literals in the table conflicting with the add
    std::set<int> expected_dels;
    for (std::size_t i = 0; i < t.fluents.size(); ++i) {
        if (testutil::conflicts_oracle(t.fluents[i], added)) {
            expected_dels.insert(static_cast<int>(i));
        }
    }
    CHECK(std::set<int>(e.dels.begin(), e.dels.end()) == expected_dels);
    std::set<std::string> del_texts;
    for (int f : e.dels) del_texts.insert(to_text(t.fluents[f]));
    CHECK(del_texts == std::set<std::string>{"[a1]!(p)", "![a1](p)"});
}

TEST_CASE("task whose goal is contained in init solves with the empty plan") {
    auto d = epddl::parse_domain(kGridDomain);
    auto p = epddl::parse_problem(grid_problem(2, 1, 1));
    ClassicalTask t = compile(d, p, {1, false});
    auto res = testutil::brute_force_shortest(t);
    REQUIRE(res.plan_length.has_value());
    CHECK(*res.plan_length == 0);
}

TEST_CASE("compile is deterministic") {
    auto d = epddl::parse_domain(kGridDomain);
    auto p = epddl::parse_problem(grid_problem(4, 2, 2));
    ClassicalTask t1 = compile(d, p, {1, true});
    ClassicalTask t2 = compile(d, p, {1, true});
    CHECK(t1.fluents == t2.fluents);
    CHECK(t1.init == t2.init);
    CHECK(t1.goal == t2.goal);
    REQUIRE(t1.actions.size() == t2.actions.size());
    for (std::size_t i = 0; i < t1.actions.size(); ++i) {
        CHECK(t1.actions[i].signature() == t2.actions[i].signature());
        CHECK(t1.actions[i].pre == t2.actions[i].pre);
    }
}

TEST_CASE("compile rejects goals beyond the compiled depth") {
    auto d = epddl::parse_domain(kGridDomain);
    epddl::ProblemSpec p = epddl::parse_problem(grid_problem(2, 2, 1));
    p.goal.conjuncts = {rml_from_text("[a1][a2](survivorat s1 p1)")};
    CHECK_THROWS_AS(compile(d, p, {1, false}), std::invalid_argument);
    ClassicalTask t = compile(d, p, {2, false});
    CHECK(t.goal.size() == 1);
}

TEST_CASE("turn constraint forces round-robin actor order") {
    auto d = epddl::parse_domain(kGridDomain);
    auto p = epddl::parse_problem(grid_problem(3, 3, 1));
    ClassicalTask t = compile(d, p, {1, true});
    CHECK(t.turn_fluents.size() == 3);
    // replay any applicable sequence and watch the actors cycle
    testutil::State s = testutil::oracle_init(t);
    std::vector<std::string> actors;
    for (int step = 0; step < 7; ++step) {
        auto succ = testutil::oracle_successors(s, t);
        REQUIRE_FALSE(succ.empty());
        actors.push_back(t.actions[succ.front().first].actor);
        s = succ.front().second;
    }
    for (std::size_t i = 0; i < actors.size(); ++i) {
        CHECK(actors[i] == "a" + std::to_string(i % 3 + 1));
    }
}

TEST_CASE("single-agent turn constraint only adds no-ops") {
    auto d = epddl::parse_domain(kGridDomain);
    auto p = epddl::parse_problem(grid_problem(2, 1, 1));
    ClassicalTask plain = compile(d, p, {1, false});
    ClassicalTask turns = compile(d, p, {1, true});
    CHECK(turns.actions.size() == plain.actions.size() + 1);
    CHECK(turns.actions.back().turn_noop);
    auto plain_len = testutil::brute_force_shortest(plain).plan_length;
    auto turns_len = testutil::brute_force_shortest(turns).plan_length;
    REQUIRE(plain_len.has_value());
    REQUIRE(turns_len.has_value());
    CHECK(*plain_len == *turns_len);
}

TEST_CASE("turn constraint cannot be applied twice and needs an actor") {
    auto d = epddl::parse_domain(kGridDomain);
    auto p = epddl::parse_problem(grid_problem(2, 1, 1));
    ClassicalTask t = compile(d, p, {1, true});
    CHECK_THROWS_AS(add_turn_constraint(t), std::invalid_argument);

    auto d2 = epddl::parse_domain(
        "(define (domain tiny) (:types agent) (:predicates (go))\n"
        "  (:action fire :derive-condition always :parameters ()\n"
        "   :precondition (and) :effect (and (go))))");
    auto p2 = epddl::parse_problem(
        "(define (problem t) (:domain tiny) (:objects a1 - agent)\n"
        "  (:init) (:goal (and (go))))");
    ClassicalTask t2 = compile(d2, p2, {1, false});
    CHECK_THROWS_AS(add_turn_constraint(t2), std::invalid_argument);
}

TEST_CASE("compiled successors agree with belief-state replay") {
    auto d = epddl::parse_domain(kGridDomain);
    auto p = epddl::parse_problem(grid_problem(3, 2, 1));
    ClassicalTask t = compile(d, p, {1, false});

    // walk the whole reachable space; at every state, for every applicable
    // action, decompile, replay through apply_effects, recompile, compare
    bool complete = testutil::enumerate_reachable(t, 200000, [&](const testutil::State& s) {
        for (auto& [ai, succ] : testutil::oracle_successors(s, t)) {
            const CompiledAction& a = t.actions[ai];
            BeliefState decompiled = BeliefState::from_literals([&] {
                std::vector<Rml> lits;
                for (int f : s) lits.push_back(t.fluents[f]);
                return lits;
            }());
            BeliefState replayed = decompiled;
            for (const auto& item : a.effects) {
                bool fires = true;
                for (int g : item.guard) {
                    if (!s.count(g)) fires = false;
                }
                if (!fires) continue;
                std::vector<Rml> adds, dels;
                for (int f : item.adds) adds.push_back(t.fluents[f]);
                for (int f : item.dels) dels.push_back(t.fluents[f]);
                replayed = apply_effects(replayed, adds, dels);
            }
            std::set<Rml> from_classical;
            for (int f : succ) from_classical.insert(t.fluents[f]);
            CHECK(replayed.literals() == from_classical);
        }
    });
    CHECK(complete);
}

TEST_CASE("pruning drops nothing observable") {
    auto d = epddl::parse_domain(kGridDomain);
    auto p = epddl::parse_problem(grid_problem(4, 2, 2));
    ClassicalTask t = compile(d, p, {1, true});
    PrunedTask pruned = prune_unreachable_mapped(t);
    CHECK(pruned.task.actions.size() <= t.actions.size());
    auto full = testutil::brute_force_shortest(t);
    auto less = testutil::brute_force_shortest(pruned.task);
    CHECK(full.plan_length == less.plan_length);
}
