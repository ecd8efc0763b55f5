// Small helpers for building specs programmatically.

#pragma once

#include <string>
#include <vector>

#include "epiplan/epddl/ast.hpp"

namespace epiplan::domains::detail {

using epddl::Term;
using epddl::TemplateRml;

inline TemplateRml atom(const std::string& pred, std::vector<Term> args = {}) {
    TemplateRml out;
    out.fluent.predicate = pred;
    out.fluent.args = std::move(args);
    return out;
}

inline TemplateRml neg(TemplateRml l) { return epddl::negate(std::move(l)); }

inline TemplateRml believes(Term agent, TemplateRml inner) {
    inner.chain.insert(inner.chain.begin(), epddl::TemplateOp{std::move(agent), false});
    return inner;
}

inline Rml ground_atom(const std::string& pred, std::vector<std::string> args = {}) {
    Rml out;
    out.fluent.predicate = pred;
    out.fluent.args = std::move(args);
    return out;
}

inline Rml ground_believes(const std::string& agent, Rml inner) {
    inner.chain.insert(inner.chain.begin(), BeliefOp{agent, false});
    return inner;
}

}  // namespace epiplan::domains::detail
