#include <random>

#include "catch_amalgamated.hpp"
#include "epiplan/epddl/parser.hpp"
#include "epiplan/epddl/render.hpp"
#include "epiplan/epddl/validate.hpp"
#include "test_helpers.hpp"

using namespace epiplan;
using namespace epiplan::epddl;

namespace {

// The gridworld communication action, kept byte-for-byte in the layout our
// format docs use as the worked example (including odd line breaks and a
// trailing comment).
constexpr const char* kCommSurvivorListing = R"((:action commsurvivor
  :derive-condition  always
  :parameters        (?p - pos ?a - agent  ?s
                      - survivor)
  :precondition      (and (at ?a ?p) [?a]
                        (survivorat ?s ?p))
  :effect            (and (forall ?g - agent
                        [?g](survivorat ?s ?p
                     )))
)
; ...
)";

std::string gridworld_shell(const std::string& actions) {
    return "(define (domain gridworld)\n"
           "  (:types agent pos survivor)\n"
           "  (:predicates (at ?a - agent ?p - pos)\n"
           "               (survivorat ?s - survivor ?p - pos))\n" +
           actions + ")\n";
}

}  // namespace

TEST_CASE("parse_domain on the commsurvivor listing yields the documented schema") {
    DomainSpec d = parse_domain(gridworld_shell(kCommSurvivorListing));
    REQUIRE(d.actions.size() == 1);
    const ActionSchema& a = d.actions.front();
    CHECK(a.name == "commsurvivor");
    CHECK(a.derive_condition == "always");
    REQUIRE(a.parameters.size() == 3);
    CHECK(a.parameters[0] == Param{"p", "pos", {}});
    CHECK(a.parameters[1] == Param{"a", "agent", {}});
    CHECK(a.parameters[2] == Param{"s", "survivor", {}});

    REQUIRE(a.precondition.size() == 2);
    TemplateRml at_lit;
    at_lit.fluent = {"at", {var("a"), var("p")}};
    CHECK(a.precondition[0] == at_lit);
    TemplateRml believes;
    believes.chain = {{var("a"), false}};
    believes.fluent = {"survivorat", {var("s"), var("p")}};
    CHECK(a.precondition[1] == believes);

    REQUIRE(a.effects.size() == 1);
    const EffectItem& item = a.effects.front();
    REQUIRE(item.quantifiers.size() == 1);
    CHECK(item.quantifiers.front() == Param{"g", "agent", {}});
    CHECK(item.condition.empty());
    REQUIRE(item.adds.size() == 1);
    TemplateRml broadcast;
    broadcast.chain = {{var("g"), false}};
    broadcast.fluent = {"survivorat", {var("s"), var("p")}};
    CHECK(item.adds.front() == broadcast);
    CHECK(item.dels.empty());
}

TEST_CASE("domain with zero actions parses to an empty action list") {
    DomainSpec d = parse_domain("(define (domain empty) (:types agent))");
    CHECK(d.name == "empty");
    CHECK(d.actions.empty());
}

TEST_CASE("unbalanced parenthesis is reported at the open position") {
    std::string text = "(define (domain broken)\n  (:types agent\n)";
    try {
        parse_domain(text);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.pos.line == 1);
        CHECK(e.pos.col == 1);
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("unclosed"));
    }
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_domain("(define (domain x)\n  (:types agent)\n  (:badsection))");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.pos.line == 3);
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("badsection"));
    }
}

TEST_CASE("undeclared type and arity mismatches are parse errors") {
    CHECK_THROWS_AS(parse_domain("(define (domain x) (:types agent)"
                                 " (:predicates (at ?a - nowhere)))"),
                    ParseError);
    CHECK_THROWS_AS(parse_domain(gridworld_shell("(:action bad\n"
                                                 " :derive-condition always\n"
                                                 " :parameters (?a - agent)\n"
                                                 " :precondition (and (at ?a))\n"
                                                 " :effect (and (at ?a ?a)))\n")),
                    ParseError);
}

TEST_CASE("unknown derive-condition values are rejected") {
    CHECK_THROWS_WITH(parse_domain(gridworld_shell("(:action bad\n"
                                                   " :derive-condition sometimes\n"
                                                   " :parameters (?a - agent ?p - pos)\n"
                                                   " :precondition (and (at ?a ?p))\n"
                                                   " :effect (and (at ?a ?p)))\n")),
                      Catch::Matchers::ContainsSubstring("sometimes"));
}

TEST_CASE("unbound variables are parse errors") {
    CHECK_THROWS_WITH(parse_domain(gridworld_shell("(:action bad\n"
                                                   " :derive-condition always\n"
                                                   " :parameters (?a - agent)\n"
                                                   " :precondition (and (at ?a ?p))\n"
                                                   " :effect (and (at ?a ?a)))\n")),
                      Catch::Matchers::ContainsSubstring("?p"));
}

TEST_CASE("problem parsing: minimal, conflicts, unknown objects") {
    std::string good =
        "(define (problem tiny) (:domain gridworld)\n"
        "  (:objects a1 - agent p1 - pos)\n"
        "  (:init (at a1 p1))\n"
        "  (:goal (and (at a1 p1))))";
    ProblemSpec p = parse_problem(good);
    CHECK(p.name == "tiny");
    CHECK(p.domain_name == "gridworld");
    REQUIRE(p.init.size() == 1);
    CHECK(to_text(p.init.front()) == "(at a1 p1)");
    REQUIRE(p.goal.conjuncts.size() == 1);

    std::string conflicting =
        "(define (problem bad) (:domain gridworld)\n"
        "  (:objects s1 - survivor p1 - pos)\n"
        "  (:init (survivorat s1 p1) (not (survivorat s1 p1)))\n"
        "  (:goal (and (survivorat s1 p1))))";
    CHECK_THROWS_WITH(parse_problem(conflicting),
                      Catch::Matchers::ContainsSubstring("conflicts"));

    std::string unknown =
        "(define (problem bad) (:domain gridworld)\n"
        "  (:objects a1 - agent)\n"
        "  (:init (at a1 p9))\n"
        "  (:goal (and (at a1 p9))))";
    CHECK_THROWS_WITH(parse_problem(unknown), Catch::Matchers::ContainsSubstring("p9"));
}

TEST_CASE("belief literals in init and goal parse with negation forms") {
    std::string text =
        "(define (problem beliefs) (:domain g)\n"
        "  (:objects a1 a2 - agent p1 - pos)\n"
        "  (:init [a1](seen p1) [a2](not (seen p1)) (not [a1](clear p1)))\n"
        "  (:goal (and (not [a2](seen p1)))))";
    ProblemSpec p = parse_problem(text);
    REQUIRE(p.init.size() == 3);
    CHECK(to_text(p.init[0]) == "[a1](seen p1)");
    CHECK(to_text(p.init[1]) == "[a2]!(seen p1)");
    CHECK(to_text(p.init[2]) == "![a1](clear p1)");
    CHECK(to_text(p.goal.conjuncts[0]) == "![a2](seen p1)");
}

TEST_CASE("validate: matching pair is clean") {
    DomainSpec d = parse_domain(gridworld_shell(kCommSurvivorListing));
    std::string ptext =
        "(define (problem ok) (:domain gridworld)\n"
        "  (:objects a1 a2 - agent p1 p2 - pos s1 - survivor)\n"
        "  (:init (at a1 p1) (at a2 p2) (survivorat s1 p2))\n"
        "  (:goal (and [a1](survivorat s1 p2))))";
    ProblemSpec p = parse_problem(ptext);
    CHECK(validate(d, p).empty());
}

TEST_CASE("validate: unresolved objects and chain types are diagnosed") {
    DomainSpec d = parse_domain(gridworld_shell(kCommSurvivorListing));

    ProblemSpec p;
    p.domain_name = "gridworld";
    p.objects = {{"a1", "agent", {}}, {"p1", "pos", {}}, {"s1", "survivor", {}}};
    p.init = {rml_from_text("(at a1 p1)")};
    p.goal.conjuncts = {rml_from_text("(at a1 p99)")};
    auto diags = validate(d, p);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].category == "unresolved-object");

    // chain variable typed pos in an effect
    DomainSpec bad = d;
    bad.actions[0].effects[0].quantifiers.front().type = "pos";
    ProblemSpec ok = p;
    ok.goal.conjuncts = {rml_from_text("(at a1 p1)")};
    auto chain_diags = validate(bad, ok);
    REQUIRE(chain_diags.size() == 1);
    CHECK(chain_diags[0].category == "chain-type");
}

TEST_CASE("validate flags literals beyond the depth bound") {
    DomainSpec d = parse_domain(gridworld_shell(""));
    ProblemSpec p;
    p.domain_name = "gridworld";
    p.objects = {{"a1", "agent", {}}, {"a2", "agent", {}}, {"p1", "pos", {}},
                 {"s1", "survivor", {}}};
    p.init = {};
    p.goal.conjuncts = {rml_from_text("[a1][a2](survivorat s1 p1)")};
    auto diags = validate(d, p, 1);
    REQUIRE_FALSE(diags.empty());
    CHECK(diags[0].category == "depth-overflow");
    CHECK(validate(d, p, 2).empty());
}

TEST_CASE("render round-trips the commsurvivor domain") {
    DomainSpec d = parse_domain(gridworld_shell(kCommSurvivorListing));
    DomainSpec d2 = parse_domain(render(d));
    CHECK(d2 == d);
    CHECK(render(d2) == render(d));
}

TEST_CASE("render round-trips an empty domain") {
    DomainSpec d = parse_domain("(define (domain empty) (:types agent))");
    CHECK(parse_domain(render(d)) == d);
}

TEST_CASE("render round-trips problems with belief literals") {
    std::string text =
        "(define (problem beliefs) (:domain g)\n"
        "  (:objects a1 a2 - agent p1 p2 - pos)\n"
        "  (:init (at a1 p1) [a1](seen p1) [a2](not (seen p2)) (not [a1](seen p2)))\n"
        "  (:goal (and [a1](seen p1) (not [a2](seen p1)))))";
    ProblemSpec p = parse_problem(text);
    ProblemSpec p2 = parse_problem(render(p));
    CHECK(p2 == p);
}

TEST_CASE("parser is total on mutated inputs") {
    DomainSpec d = parse_domain(gridworld_shell(kCommSurvivorListing));
    std::string base = render(d);
    std::mt19937_64 rng(909);
    const char charset[] = "()[]?:;-ab1 \n";
    for (int trial = 0; trial < 4000; ++trial) {
        std::string text = base;
        int edits = 1 + static_cast<int>(testutil::draw(rng, 4));
        for (int e = 0; e < edits; ++e) {
            std::size_t pos = testutil::draw(rng, text.size());
            char c = charset[testutil::draw(rng, sizeof(charset) - 1)];
            switch (testutil::draw(rng, 3)) {
                case 0: text[pos] = c; break;
                case 1: text.insert(text.begin() + pos, c); break;
                default: text.erase(text.begin() + pos); break;
            }
        }
        try {
            DomainSpec mutated = parse_domain(text);
            (void)mutated;
        } catch (const ParseError&) {
            // positioned diagnostic is the expected failure mode
        }
    }
    SUCCEED("no crashes");
}

TEST_CASE("random byte soup never crashes the parser") {
    std::mt19937_64 rng(910);
    for (int trial = 0; trial < 2000; ++trial) {
        std::string text;
        std::size_t len = testutil::draw(rng, 200);
        for (std::size_t i = 0; i < len; ++i) {
            text += static_cast<char>(testutil::draw(rng, 96) + 32);
        }
        try {
            parse_problem(text);
        } catch (const ParseError&) {
        }
    }
    SUCCEED("no crashes");
}
