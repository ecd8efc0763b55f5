// Typed instantiation of action schemas over a problem's object universe.
// Effect-level forall binders expand into one conditional-effect item per
// object of the bound type.

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "epiplan/epddl/ast.hpp"

namespace epiplan::compiler {

struct GroundEffectItem {
    std::vector<Rml> guard;
    std::vector<Rml> adds;
    std::vector<Rml> dels;
};

struct GroundAction {
    std::string name;
    std::vector<std::string> args;
    std::string actor;  // first agent-typed argument; empty if none
    std::vector<Rml> precondition;
    std::vector<GroundEffectItem> effects;

    std::string signature() const {
        std::string out = "(" + name;
        for (const auto& a : args) out += " " + a;
        out += ")";
        return out;
    }
};

namespace detail {

using Binding = std::map<std::string, std::string>;

inline Rml substitute(const epddl::TemplateRml& t, const Binding& b) {
    Rml out;
    auto resolve = [&](const epddl::Term& term) -> const std::string& {
        if (!term.is_variable) return term.name;
        auto it = b.find(term.name);
        if (it == b.end()) {
            throw std::invalid_argument("unbound variable ?" + term.name + " while grounding");
        }
        return it->second;
    };
    for (const auto& op : t.chain) out.chain.push_back({resolve(op.agent), op.negated});
    out.fluent.predicate = t.fluent.predicate;
    for (const auto& a : t.fluent.args) out.fluent.args.push_back(resolve(a));
    out.base_negated = t.base_negated;
    return out;
}

}  // namespace detail

inline std::vector<GroundAction> ground(const epddl::DomainSpec& d,
                                        const epddl::ProblemSpec& p) {
    std::vector<GroundAction> out;
    for (const auto& schema : d.actions) {
        std::vector<std::vector<std::string>> choices;
        bool uninstantiable = false;
        for (const auto& param : schema.parameters) {
            auto objs = p.objects_of_type(d, param.type);
            if (objs.empty()) uninstantiable = true;
            choices.push_back(std::move(objs));
        }
        if (uninstantiable) continue;  // schema grounds to zero actions
        std::vector<std::size_t> idx(choices.size(), 0);
        while (true) {
            detail::Binding binding;
            GroundAction ga;
            ga.name = schema.name;
            for (std::size_t i = 0; i < choices.size(); ++i) {
                const std::string& obj = choices[i][idx[i]];
                binding[schema.parameters[i].name] = obj;
                ga.args.push_back(obj);
                if (ga.actor.empty() && d.is_subtype(schema.parameters[i].type, "agent")) {
                    ga.actor = obj;
                }
            }
            for (const auto& lit : schema.precondition) {
                ga.precondition.push_back(detail::substitute(lit, binding));
            }
            for (const auto& item : schema.effects) {
                // cross product over the binder list, outermost varying
                // slowest; an empty universe makes the forall vacuous
                std::vector<std::vector<std::string>> domains;
                bool vacuous = false;
                for (const auto& q : item.quantifiers) {
                    auto objs = p.objects_of_type(d, q.type);
                    if (objs.empty()) vacuous = true;
                    domains.push_back(std::move(objs));
                }
                if (vacuous) continue;
                std::vector<std::size_t> pick(domains.size(), 0);
                while (true) {
                    detail::Binding inner = binding;
                    for (std::size_t q = 0; q < domains.size(); ++q) {
                        inner[item.quantifiers[q].name] = domains[q][pick[q]];
                    }
                    GroundEffectItem gi;
                    for (const auto& l : item.condition)
                        gi.guard.push_back(detail::substitute(l, inner));
                    for (const auto& l : item.adds)
                        gi.adds.push_back(detail::substitute(l, inner));
                    for (const auto& l : item.dels)
                        gi.dels.push_back(detail::substitute(l, inner));
                    ga.effects.push_back(std::move(gi));
                    if (domains.empty()) break;
                    int qp = static_cast<int>(domains.size()) - 1;
                    while (qp >= 0 && ++pick[qp] == domains[qp].size()) {
                        pick[qp] = 0;
                        --qp;
                    }
                    if (qp < 0) break;
                }
            }
            out.push_back(std::move(ga));
            if (choices.empty()) break;
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
