// Cross-reference checks for a (domain, problem) pair. Returns diagnostics
// instead of throwing: an empty list guarantees grounding will not hit a
// reference failure. Re-checks domain-internal properties so that specs
// built programmatically get the same scrutiny as parsed ones.

#pragma once

#include <string>
#include <vector>

#include "epiplan/epddl/ast.hpp"

namespace epiplan::epddl {

namespace detail {

inline std::string term_name(const Term& t) {
    return t.is_variable ? "?" + t.name : t.name;
}

class Validator {
public:
    Validator(const DomainSpec& d, const ProblemSpec& p, int depth_bound)
        : d_(d), p_(p), depth_bound_(depth_bound) {}

    std::vector<Diagnostic> run() {
        if (!d_.find_type("agent")) {
            add("missing-agent-type", "domain declares no 'agent' type", {});
        }
        for (const auto& t : d_.types) {
            if (t.parent != "object" && !d_.find_type(t.parent)) {
                add("unresolved-type", "type " + t.name + " has undeclared parent " + t.parent,
                    t.pos);
            }
        }
        for (const auto& pred : d_.predicates) {
            for (const auto& param : pred.params) check_type(param.type, param.pos);
        }
        for (const auto& a : d_.actions) check_action(a);

        if (!p_.domain_name.empty() && p_.domain_name != d_.name) {
            add("domain-name-mismatch",
                "problem references domain " + p_.domain_name + ", got " + d_.name, {});
        }
        for (const auto& obj : p_.objects) check_type(obj.type, obj.pos);
        for (std::size_t i = 0; i < p_.init.size(); ++i) {
            check_ground(p_.init[i], pos_or(p_.init_pos, i));
        }
        for (std::size_t i = 0; i < p_.init.size(); ++i) {
            for (std::size_t j = i + 1; j < p_.init.size(); ++j) {
                if (conflicts(p_.init[i], p_.init[j])) {
                    add("init-conflict",
                        "init literal " + to_text(p_.init[j]) + " conflicts with " +
                            to_text(p_.init[i]),
                        pos_or(p_.init_pos, j));
                }
            }
        }
        if (p_.goal.conjuncts.empty()) {
            add("goal-empty", "goal must have at least one conjunct", {});
        }
        for (std::size_t i = 0; i < p_.goal.conjuncts.size(); ++i) {
            check_ground(p_.goal.conjuncts[i], pos_or(p_.goal_pos, i));
        }
        return std::move(diags_);
    }

private:
    static SourcePos pos_or(const std::vector<SourcePos>& v, std::size_t i) {
        return i < v.size() ? v[i] : SourcePos{};
    }

    void add(std::string category, std::string message, SourcePos pos) {
        diags_.push_back({std::move(category), std::move(message), pos});
    }

    void check_type(const std::string& type, SourcePos pos) {
        if (type != "object" && !d_.find_type(type)) {
            add("unresolved-type", "undeclared type " + type, pos);
        }
    }

    // Type of a term inside an action: parameter/binder type for variables,
    // declared object type for constants. Empty string if unresolved.
    std::string term_type(const Term& t, const ActionSchema& a, const EffectItem* item,
                          SourcePos pos) {
        if (t.is_variable) {
            for (const auto& param : a.parameters) {
                if (param.name == t.name) return param.type;
            }
            if (item) {
                for (const auto& q : item->quantifiers) {
                    if (q.name == t.name) return q.type;
                }
            }
            add("unbound-variable", "variable ?" + t.name + " is not bound", pos);
            return {};
        }
        const ObjectDecl* obj = p_.find_object(t.name);
        if (!obj) {
            add("unresolved-object", "undeclared object " + t.name, pos);
            return {};
        }
        return obj->type;
    }

    void check_template(const TemplateRml& l, const ActionSchema& a, const EffectItem* item) {
        if (depth(l) > depth_bound_) {
            add("depth-overflow",
                "literal " + std::to_string(depth(l)) + " operators deep exceeds bound " +
                    std::to_string(depth_bound_),
                l.pos);
        }
        for (const auto& op : l.chain) {
            std::string t = term_type(op.agent, a, item, l.pos);
            if (!t.empty() && !d_.is_subtype(t, "agent")) {
                add("chain-type",
                    "belief operator " + detail::term_name(op.agent) + " has type " + t +
                        ", expected agent",
                    l.pos);
            }
        }
        const PredicateDecl* decl = d_.find_predicate(l.fluent.predicate);
        if (!decl) {
            add("unresolved-predicate", "undeclared predicate " + l.fluent.predicate, l.pos);
            return;
        }
        if (decl->params.size() != l.fluent.args.size()) {
            add("arity-mismatch",
                "predicate " + l.fluent.predicate + " expects " +
                    std::to_string(decl->params.size()) + " arguments, got " +
                    std::to_string(l.fluent.args.size()),
                l.pos);
            return;
        }
        for (std::size_t i = 0; i < l.fluent.args.size(); ++i) {
            std::string t = term_type(l.fluent.args[i], a, item, l.pos);
            if (!t.empty() && !d_.is_subtype(t, decl->params[i].type)) {
                add("argument-type",
                    "argument " + std::to_string(i + 1) + " of " + l.fluent.predicate +
                        " has type " + t + ", expected " + decl->params[i].type,
                    l.pos);
            }
        }
    }

    void check_action(const ActionSchema& a) {
        for (const auto& param : a.parameters) check_type(param.type, param.pos);
        for (const auto& l : a.precondition) check_template(l, a, nullptr);
        for (const auto& item : a.effects) {
            for (const auto& q : item.quantifiers) check_type(q.type, q.pos);
            for (const auto& l : item.condition) check_template(l, a, &item);
            for (const auto& l : item.adds) check_template(l, a, &item);
            for (const auto& l : item.dels) check_template(l, a, &item);
        }
    }

    void check_ground(const Rml& l, SourcePos pos) {
        TemplateRml t = ground_template(l);
        t.pos = pos;
        if (depth(l) > depth_bound_) {
            add("depth-overflow",
                "literal " + std::to_string(depth(l)) + " operators deep exceeds bound " +
                    std::to_string(depth_bound_),
                pos);
        }
        for (const auto& op : l.chain) {
            const ObjectDecl* obj = p_.find_object(op.agent);
            if (!obj) {
                add("unresolved-object", "undeclared object " + op.agent, pos);
            } else if (!d_.is_subtype(obj->type, "agent")) {
                add("chain-type",
                    "belief operator " + op.agent + " has type " + obj->type +
                        ", expected agent",
                    pos);
            }
        }
        const PredicateDecl* decl = d_.find_predicate(l.fluent.predicate);
        if (!decl) {
            add("unresolved-predicate", "undeclared predicate " + l.fluent.predicate, pos);
            return;
        }
        if (decl->params.size() != l.fluent.args.size()) {
            add("arity-mismatch",
                "predicate " + l.fluent.predicate + " expects " +
                    std::to_string(decl->params.size()) + " arguments, got " +
                    std::to_string(l.fluent.args.size()),
                pos);
            return;
        }
        for (std::size_t i = 0; i < l.fluent.args.size(); ++i) {
            const ObjectDecl* obj = p_.find_object(l.fluent.args[i]);
            if (!obj) {
                add("unresolved-object", "undeclared object " + l.fluent.args[i], pos);
            } else if (!d_.is_subtype(obj->type, decl->params[i].type)) {
                add("argument-type",
                    "argument " + std::to_string(i + 1) + " of " + l.fluent.predicate +
                        " has type " + obj->type + ", expected " + decl->params[i].type,
                    pos);
            }
        }
    }

    const DomainSpec& d_;
    const ProblemSpec& p_;
    int depth_bound_;
    std::vector<Diagnostic> diags_;
};

}  // namespace detail

inline std::vector<Diagnostic> validate(const DomainSpec& d, const ProblemSpec& p,
                                        int depth_bound = kDefaultDepth) {
    return detail::Validator(d, p, depth_bound).run();
}

}  // namespace epiplan::epddl
