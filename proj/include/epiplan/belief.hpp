// Restricted modal literals and conflict-free belief states.
//
// An Rml is a chain of at most kMaxDepth possibly-negated single-agent
// belief operators applied to a possibly-negated ground fluent. Chains are
// stored outermost-first; equality is structural. The belief logic is KD
// (consistency only): the single closure rule used by entails() derives
// sigma.!B_i.!x from a stored sigma.B_i.x, and nothing else.

#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace epiplan {

inline constexpr int kMaxDepth = 3;
inline constexpr int kDefaultDepth = 1;

struct Fluent {
    std::string predicate;
    std::vector<std::string> args;

    bool operator==(const Fluent&) const = default;
    auto operator<=>(const Fluent&) const = default;
};

struct BeliefOp {
    std::string agent;
    bool negated = false;

    bool operator==(const BeliefOp&) const = default;
    auto operator<=>(const BeliefOp&) const = default;
};

struct Rml {
    std::vector<BeliefOp> chain;  // outermost first
    Fluent fluent;
    bool base_negated = false;

    bool operator==(const Rml&) const = default;
    auto operator<=>(const Rml&) const = default;
};

inline int depth(const Rml& l) { return static_cast<int>(l.chain.size()); }

// Flips the outermost negation site: the first chain operator if one
// exists, otherwise the base. Involution by construction.
inline Rml negate(Rml l) {
    if (!l.chain.empty()) {
        l.chain.front().negated = !l.chain.front().negated;
    } else {
        l.base_negated = !l.base_negated;
    }
    return l;
}

// Two literals conflict iff they agree everywhere except exactly one
// negation site and every operator before that site is positive. This
// covers (sigma, !sigma) and (sigma.B_i.x, sigma.B_i.!x) with sigma a
// shared positive prefix; pairs under a negated operator (e.g. !B_a p vs
// !B_a !p) can jointly hold and do not conflict. Symmetric.
inline bool conflicts(const Rml& a, const Rml& b) {
    if (a.chain.size() != b.chain.size() || a.fluent != b.fluent) return false;
    const int k = static_cast<int>(a.chain.size());
    int site = -1;  // 0..k-1 chain sites, k = base site
    for (int i = 0; i < k; ++i) {
        if (a.chain[i].agent != b.chain[i].agent) return false;
        if (a.chain[i].negated != b.chain[i].negated) {
            if (site >= 0) return false;
            site = i;
        }
    }
    if (a.base_negated != b.base_negated) {
        if (site >= 0) return false;
        site = k;
    }
    if (site < 0) return false;
    for (int i = 0; i < site; ++i) {
        if (a.chain[i].negated) return false;
    }
    return true;
}

// The literals that conflict with l: one per flippable site. Used by the
// compiler to turn conflict eviction into static deletes.
inline std::vector<Rml> conflicting_literals(const Rml& l) {
    std::vector<Rml> out;
    const int k = depth(l);
    for (int site = 0; site <= k; ++site) {
        if (site > 0 && l.chain[site - 1].negated) break;  // prefix must stay positive
        Rml flipped = l;
        if (site < k) {
            flipped.chain[site].negated = !flipped.chain[site].negated;
        } else {
            flipped.base_negated = !flipped.base_negated;
        }
        out.push_back(std::move(flipped));
    }
    return out;
}

class BeliefState {
public:
    BeliefState() = default;

    // Verifies conflict-freedom; reports the first offending pair.
    static BeliefState from_literals(std::vector<Rml> literals) {
        BeliefState s;
        for (auto& l : literals) s.literals_.insert(std::move(l));
        for (auto it = s.literals_.begin(); it != s.literals_.end(); ++it) {
            for (auto jt = std::next(it); jt != s.literals_.end(); ++jt) {
                if (conflicts(*it, *jt)) {
                    throw std::invalid_argument("conflicting literals: " + to_text(*it) +
                                                " vs " + to_text(*jt));
                }
            }
        }
        return s;
    }

    bool contains(const Rml& l) const { return literals_.count(l) != 0; }
    const std::set<Rml>& literals() const { return literals_; }
    std::size_t size() const { return literals_.size(); }
    bool empty() const { return literals_.empty(); }

    bool operator==(const BeliefState&) const = default;

    // Canonical text of one literal: [a] / ![a] for belief operators,
    // ! for base negation, e.g. ![a](survivorat s1 p1).
    static std::string to_text(const Rml& l) {
        std::string out;
        for (const auto& op : l.chain) {
            if (op.negated) out += '!';
            out += '[';
            out += op.agent;
            out += ']';
        }
        if (l.base_negated) out += '!';
        out += '(';
        out += l.fluent.predicate;
        for (const auto& a : l.fluent.args) {
            out += ' ';
            out += a;
        }
        out += ')';
        return out;
    }

private:
    friend BeliefState apply_effects(const BeliefState&, std::span<const Rml>,
                                     std::span<const Rml>);
    std::set<Rml> literals_;
};

inline std::string to_text(const Rml& l) { return BeliefState::to_text(l); }

// Inverse of to_text. Throws std::invalid_argument on malformed input.
inline Rml rml_from_text(std::string_view text) {
    Rml out;
    std::size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("bad literal text '" + std::string(text) + "': " + why);
    };
    while (i < text.size() && (text[i] == '!' || text[i] == '[')) {
        bool neg = false;
        if (text[i] == '!') {
            neg = true;
            ++i;
        }
        if (i >= text.size() || text[i] != '[') {
            if (neg && i < text.size() && text[i] == '(') {  // base negation
                out.base_negated = true;
                break;
            }
            fail("expected '[' after '!'");
        }
        std::size_t close = text.find(']', i);
        if (close == std::string_view::npos) fail("unterminated '['");
        out.chain.push_back({std::string(text.substr(i + 1, close - i - 1)), neg});
        i = close + 1;
    }
    if (i >= text.size() || text[i] != '(') fail("expected '('");
    if (text.back() != ')') fail("expected trailing ')'");
    std::string body(text.substr(i + 1, text.size() - i - 2));
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos < body.size()) {
        while (pos < body.size() && body[pos] == ' ') ++pos;
        std::size_t end = body.find(' ', pos);
        if (end == std::string::npos) end = body.size();
        if (end > pos) parts.push_back(body.substr(pos, end - pos));
        pos = end;
    }
    if (parts.empty()) fail("empty atom");
    out.fluent.predicate = parts.front();
    out.fluent.args.assign(parts.begin() + 1, parts.end());
    return out;
}

// True iff l is a member of s or derivable by the KD closure rule:
// membership of sigma.B_i.x licenses sigma.!B_i.!x. No other derivation;
// absent literals are false (closed world at the query level).
inline bool entails(const BeliefState& s, const Rml& l) {
    if (s.contains(l)) return true;
    const int k = depth(l);
    int site = -1;
    for (int i = 0; i < k; ++i) {
        if (l.chain[i].negated) {
            site = i;
            break;
        }
    }
    if (site < 0) return false;
    Rml member = l;
    member.chain[site].negated = false;
    if (site + 1 < k) {
        member.chain[site + 1].negated = !member.chain[site + 1].negated;
    } else {
        member.base_negated = !member.base_negated;
    }
    return s.contains(member);
}

// result = (s \ dels \ {l in s : l conflicts with some add}) + adds.
// Rejects internally conflicting adds, reporting the pair.
inline BeliefState apply_effects(const BeliefState& s, std::span<const Rml> adds,
                                 std::span<const Rml> dels) {
    for (std::size_t i = 0; i < adds.size(); ++i) {
        for (std::size_t j = i + 1; j < adds.size(); ++j) {
            if (conflicts(adds[i], adds[j])) {
                throw std::invalid_argument("conflicting adds: " + to_text(adds[i]) + " vs " +
                                            to_text(adds[j]));
            }
        }
    }
    BeliefState out;
    for (const auto& l : s.literals()) {
        if (std::find(dels.begin(), dels.end(), l) != dels.end()) continue;
        bool evicted = false;
        for (const auto& a : adds) {
            if (conflicts(l, a)) {
                evicted = true;
                break;
            }
        }
        if (!evicted) out.literals_.insert(l);
    }
    for (const auto& a : adds) out.literals_.insert(a);
    return out;
}

inline BeliefState apply_effects(const BeliefState& s, const std::vector<Rml>& adds,
                                 const std::vector<Rml>& dels) {
    return apply_effects(s, std::span<const Rml>(adds), std::span<const Rml>(dels));
}

struct GoalFormula {
    std::vector<Rml> conjuncts;

    bool operator==(const GoalFormula&) const = default;
};

}  // namespace epiplan
