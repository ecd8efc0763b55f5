// Canonical text for domain and problem specs. parse(render(x)) == x.

#pragma once

#include <string>

#include "epiplan/epddl/ast.hpp"

namespace epiplan::epddl {

namespace detail {

inline std::string term_text(const Term& t) {
    return t.is_variable ? "?" + t.name : t.name;
}

inline std::string rml_text(const TemplateRml& l, std::size_t from = 0) {
    if (from == l.chain.size()) {
        std::string atom = "(" + l.fluent.predicate;
        for (const auto& a : l.fluent.args) atom += " " + term_text(a);
        atom += ")";
        return l.base_negated ? "(not " + atom + ")" : atom;
    }
    std::string inner = "[" + term_text(l.chain[from].agent) + "]" + rml_text(l, from + 1);
    return l.chain[from].negated ? "(not " + inner + ")" : inner;
}

// name+ - type groups, merging consecutive entries of equal type
template <typename It, typename NameFn, typename TypeFn>
std::string typed_list(It begin, It end, NameFn name, TypeFn type) {
    std::string out;
    for (It it = begin; it != end;) {
        It run = it;
        while (run != end && type(*run) == type(*it)) ++run;
        for (It j = it; j != run; ++j) {
            if (!out.empty()) out += " ";
            out += name(*j);
        }
        out += " - " + type(*it);
        it = run;
    }
    return out;
}

inline std::string conjunction_text(const std::vector<TemplateRml>& lits) {
    std::string out = "(and";
    for (const auto& l : lits) out += " " + rml_text(l);
    out += ")";
    return out;
}

inline std::string effect_item_text(const EffectItem& item) {
    std::string body;
    if (!item.condition.empty()) {
        body = "(when " + conjunction_text(item.condition) + " " +
               conjunction_text(item.adds) + ")";
    } else if (item.adds.size() == 1 && item.quantifiers.empty()) {
        body = rml_text(item.adds.front());
    } else {
        body = conjunction_text(item.adds);
    }
    for (auto it = item.quantifiers.rbegin(); it != item.quantifiers.rend(); ++it) {
        body = "(forall ?" + it->name + " - " + it->type + " " + body + ")";
    }
    return body;
}

}  // namespace detail

inline std::string render(const DomainSpec& d) {
    std::string out = "(define (domain " + d.name + ")\n";
    if (!d.types.empty()) {
        out += "  (:types " +
               detail::typed_list(
                   d.types.begin(), d.types.end(), [](const TypeDecl& t) { return t.name; },
                   [](const TypeDecl& t) { return t.parent; }) +
               ")\n";
    }
    if (!d.predicates.empty()) {
        out += "  (:predicates\n";
        for (const auto& p : d.predicates) {
            out += "    (" + p.name;
            if (!p.params.empty()) {
                out += " " + detail::typed_list(
                                 p.params.begin(), p.params.end(),
                                 [](const Param& v) { return "?" + v.name; },
                                 [](const Param& v) { return v.type; });
            }
            out += ")\n";
        }
        out += "  )\n";
    }
    for (const auto& a : d.actions) {
        out += "  (:action " + a.name + "\n";
        out += "    :derive-condition " + a.derive_condition + "\n";
        out += "    :parameters (";
        if (!a.parameters.empty()) {
            out += detail::typed_list(
                a.parameters.begin(), a.parameters.end(),
                [](const Param& v) { return "?" + v.name; },
                [](const Param& v) { return v.type; });
        }
        out += ")\n";
        out += "    :precondition " + detail::conjunction_text(a.precondition) + "\n";
        out += "    :effect (and";
        for (const auto& item : a.effects) out += " " + detail::effect_item_text(item);
        out += ")\n  )\n";
    }
    out += ")\n";
    return out;
}

inline std::string render(const ProblemSpec& p) {
    std::string out = "(define (problem " + p.name + ")\n";
    out += "  (:domain " + p.domain_name + ")\n";
    if (!p.objects.empty()) {
        out += "  (:objects " +
               detail::typed_list(
                   p.objects.begin(), p.objects.end(),
                   [](const ObjectDecl& o) { return o.name; },
                   [](const ObjectDecl& o) { return o.type; }) +
               ")\n";
    }
    out += "  (:init\n";
    for (const auto& l : p.init) {
        out += "    " + detail::rml_text(ground_template(l)) + "\n";
    }
    out += "  )\n";
    out += "  (:goal (and";
    for (const auto& l : p.goal.conjuncts) {
        out += " " + detail::rml_text(ground_template(l));
    }
    out += "))\n)\n";
    return out;
}

}  // namespace epiplan::epddl
