// Structured form of .epddl domain files and .eprob problem files.
//
// Templates may mention variables in fluent arguments and belief chains;
// problem-file literals are ground. Source positions ride along for
// diagnostics and are ignored by equality.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epiplan/belief.hpp"

namespace epiplan::epddl {

struct SourcePos {
    int line = 0;
    int col = 0;
};

struct Term {
    std::string name;  // variable names stored without the leading '?'
    bool is_variable = false;

    bool operator==(const Term&) const = default;
    auto operator<=>(const Term&) const = default;
};

inline Term var(std::string name) { return Term{std::move(name), true}; }
inline Term constant(std::string name) { return Term{std::move(name), false}; }

struct TemplateFluent {
    std::string predicate;
    std::vector<Term> args;

    bool operator==(const TemplateFluent&) const = default;
};

struct TemplateOp {
    Term agent;
    bool negated = false;

    bool operator==(const TemplateOp&) const = default;
};

struct TemplateRml {
    std::vector<TemplateOp> chain;  // outermost first
    TemplateFluent fluent;
    bool base_negated = false;
    SourcePos pos;

    bool operator==(const TemplateRml& o) const {
        return chain == o.chain && fluent == o.fluent && base_negated == o.base_negated;
    }

    bool is_ground() const {
        for (const auto& op : chain) {
            if (op.agent.is_variable) return false;
        }
        for (const auto& a : fluent.args) {
            if (a.is_variable) return false;
        }
        return true;
    }

    Rml to_ground() const {
        Rml out;
        for (const auto& op : chain) out.chain.push_back({op.agent.name, op.negated});
        out.fluent.predicate = fluent.predicate;
        for (const auto& a : fluent.args) out.fluent.args.push_back(a.name);
        out.base_negated = base_negated;
        return out;
    }
};

inline int depth(const TemplateRml& l) { return static_cast<int>(l.chain.size()); }

// Flips the outermost negation site, mirroring epiplan::negate.
inline TemplateRml negate(TemplateRml l) {
    if (!l.chain.empty()) {
        l.chain.front().negated = !l.chain.front().negated;
    } else {
        l.base_negated = !l.base_negated;
    }
    return l;
}

inline TemplateRml ground_template(const Rml& l) {
    TemplateRml out;
    for (const auto& op : l.chain) out.chain.push_back({constant(op.agent), op.negated});
    out.fluent.predicate = l.fluent.predicate;
    for (const auto& a : l.fluent.args) out.fluent.args.push_back(constant(a));
    out.base_negated = l.base_negated;
    return out;
}

struct Param {
    std::string name;  // without '?'
    std::string type;
    SourcePos pos;

    bool operator==(const Param& o) const { return name == o.name && type == o.type; }
};

struct EffectItem {
    std::vector<Param> quantifiers;       // forall binders over objects, outermost first
    std::vector<TemplateRml> condition;   // empty = unconditional
    std::vector<TemplateRml> adds;
    std::vector<TemplateRml> dels;        // not expressible in surface syntax;
                                          // populated by compiled eviction

    bool operator==(const EffectItem& o) const {
        return quantifiers == o.quantifiers && condition == o.condition && adds == o.adds &&
               dels == o.dels;
    }

    bool binds(const std::string& var_name) const {
        for (const auto& q : quantifiers) {
            if (q.name == var_name) return true;
        }
        return false;
    }
};

struct ActionSchema {
    std::string name;
    std::string derive_condition = "always";
    std::vector<Param> parameters;
    std::vector<TemplateRml> precondition;
    std::vector<EffectItem> effects;
    SourcePos pos;

    bool operator==(const ActionSchema& o) const {
        return name == o.name && derive_condition == o.derive_condition &&
               parameters == o.parameters && precondition == o.precondition &&
               effects == o.effects;
    }
};

struct TypeDecl {
    std::string name;
    std::string parent = "object";
    SourcePos pos;

    bool operator==(const TypeDecl& o) const { return name == o.name && parent == o.parent; }
};

struct PredicateDecl {
    std::string name;
    std::vector<Param> params;
    SourcePos pos;

    bool operator==(const PredicateDecl& o) const {
        return name == o.name && params == o.params;
    }
};

struct DomainSpec {
    std::string name;
    std::vector<TypeDecl> types;
    std::vector<PredicateDecl> predicates;
    std::vector<ActionSchema> actions;

    bool operator==(const DomainSpec& o) const {
        return name == o.name && types == o.types && predicates == o.predicates &&
               actions == o.actions;
    }

    const TypeDecl* find_type(const std::string& n) const {
        for (const auto& t : types) {
            if (t.name == n) return &t;
        }
        return nullptr;
    }

    const PredicateDecl* find_predicate(const std::string& n) const {
        for (const auto& p : predicates) {
            if (p.name == n) return &p;
        }
        return nullptr;
    }

    const ActionSchema* find_action(const std::string& n) const {
        for (const auto& a : actions) {
            if (a.name == n) return &a;
        }
        return nullptr;
    }

    // True if sub equals ancestor or reaches it through parent links.
    // Every declared type descends from "object".
    bool is_subtype(const std::string& sub, const std::string& ancestor) const {
        if (sub == ancestor) return true;
        if (ancestor == "object") return true;
        std::string cur = sub;
        for (int hops = 0; hops <= static_cast<int>(types.size()); ++hops) {
            const TypeDecl* t = find_type(cur);
            if (!t) return false;
            if (t->parent == ancestor) return true;
            cur = t->parent;
        }
        return false;
    }
};

struct ObjectDecl {
    std::string name;
    std::string type;
    SourcePos pos;

    bool operator==(const ObjectDecl& o) const { return name == o.name && type == o.type; }
};

struct ProblemSpec {
    std::string name;
    std::string domain_name;
    std::vector<ObjectDecl> objects;
    std::vector<Rml> init;
    GoalFormula goal;
    std::vector<SourcePos> init_pos;  // parallel to init; empty for built specs
    std::vector<SourcePos> goal_pos;  // parallel to goal.conjuncts

    bool operator==(const ProblemSpec& o) const {
        return name == o.name && domain_name == o.domain_name && objects == o.objects &&
               init == o.init && goal == o.goal;
    }

    const ObjectDecl* find_object(const std::string& n) const {
        for (const auto& obj : objects) {
            if (obj.name == n) return &obj;
        }
        return nullptr;
    }

    std::vector<std::string> objects_of_type(const DomainSpec& d,
                                             const std::string& type) const {
        std::vector<std::string> out;
        for (const auto& obj : objects) {
            if (d.is_subtype(obj.type, type)) out.push_back(obj.name);
        }
        return out;
    }
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& message, SourcePos p)
        : std::runtime_error("parse error at " + std::to_string(p.line) + ":" +
                             std::to_string(p.col) + ": " + message),
          pos(p) {}
    SourcePos pos;
};

struct Diagnostic {
    std::string category;  // kebab-case, e.g. "chain-type", "arity-mismatch"
    std::string message;
    SourcePos pos;
};

}  // namespace epiplan::epddl
