// Lexer and recursive-descent parser for .epddl / .eprob text.
//
// Keywords and structural words (define, and, not, when, forall, ...) are
// case-insensitive; identifiers are case-sensitive. Comments run from ';'
// to end of line. Belief annotation is [?a](...) or [a1](...); negation is
// (not ...), flipping the outermost site of the wrapped literal.

#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "epiplan/epddl/ast.hpp"

namespace epiplan::epddl {

enum class TokKind { LParen, RParen, LBracket, RBracket, Dash, Ident, Variable, Keyword, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;  // keyword text without ':', variable text without '?'
    SourcePos pos;
};

namespace detail {

inline std::string fold(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

inline bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space_and_comments();
            SourcePos pos{line_, col_};
            if (i_ >= text_.size()) {
                out.push_back({TokKind::End, "", pos});
                return out;
            }
            char c = text_[i_];
            if (c == '(') {
                advance();
                out.push_back({TokKind::LParen, "(", pos});
            } else if (c == ')') {
                advance();
                out.push_back({TokKind::RParen, ")", pos});
            } else if (c == '[') {
                advance();
                out.push_back({TokKind::LBracket, "[", pos});
            } else if (c == ']') {
                advance();
                out.push_back({TokKind::RBracket, "]", pos});
            } else if (c == '-' && !(i_ + 1 < text_.size() && is_ident_char(text_[i_ + 1]))) {
                advance();
                out.push_back({TokKind::Dash, "-", pos});
            } else if (c == '-') {
                // "-foo" has no reading here; treat as one malformed name
                throw ParseError("identifier may not start with '-'", pos);
            } else if (c == '?') {
                advance();
                std::string name = read_ident_chars();
                if (name.empty()) throw ParseError("expected variable name after '?'", pos);
                out.push_back({TokKind::Variable, name, pos});
            } else if (c == ':') {
                advance();
                std::string name = read_ident_chars();
                if (name.empty()) throw ParseError("expected keyword name after ':'", pos);
                out.push_back({TokKind::Keyword, fold(name), pos});
            } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                out.push_back({TokKind::Ident, read_ident_chars(), pos});
            } else {
                throw ParseError(std::string("unexpected character '") + c + "'", pos);
            }
        }
    }

private:
    void advance() {
        if (i_ < text_.size() && text_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    void skip_space_and_comments() {
        while (i_ < text_.size()) {
            char c = text_[i_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == ';') {
                while (i_ < text_.size() && text_[i_] != '\n') advance();
            } else {
                return;
            }
        }
    }

    std::string read_ident_chars() {
        std::string out;
        while (i_ < text_.size() && is_ident_char(text_[i_])) {
            out += text_[i_];
            advance();
        }
        return out;
    }

    std::string_view text_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {
        check_balance();
    }

    DomainSpec domain() {
        DomainSpec d;
        expect(TokKind::LParen);
        expect_word("define");
        expect(TokKind::LParen);
        expect_word("domain");
        d.name = expect(TokKind::Ident).text;
        expect(TokKind::RParen);
        while (!at(TokKind::RParen)) {
            SourcePos section_pos = peek().pos;
            expect(TokKind::LParen);
            Token kw = expect(TokKind::Keyword);
            if (kw.text == "types") {
                parse_typed_names(d.types);
            } else if (kw.text == "predicates") {
                while (!at(TokKind::RParen)) d.predicates.push_back(predicate_decl(d));
                expect(TokKind::RParen);
            } else if (kw.text == "action") {
                d.actions.push_back(action(d, section_pos));
            } else {
                throw ParseError("unknown domain section :" + kw.text, kw.pos);
            }
        }
        expect(TokKind::RParen);
        expect(TokKind::End);
        return d;
    }

    ProblemSpec problem() {
        ProblemSpec p;
        expect(TokKind::LParen);
        expect_word("define");
        expect(TokKind::LParen);
        expect_word("problem");
        p.name = expect(TokKind::Ident).text;
        expect(TokKind::RParen);
        while (!at(TokKind::RParen)) {
            expect(TokKind::LParen);
            Token kw = expect(TokKind::Keyword);
            if (kw.text == "domain") {
                p.domain_name = expect(TokKind::Ident).text;
                expect(TokKind::RParen);
            } else if (kw.text == "objects") {
                std::vector<TypeDecl> decls;
                parse_typed_names(decls);
                for (auto& t : decls) {
                    if (p.find_object(t.name)) {
                        throw ParseError("duplicate object " + t.name, t.pos);
                    }
                    p.objects.push_back({t.name, t.parent, t.pos});
                }
            } else if (kw.text == "init") {
                while (!at(TokKind::RParen)) {
                    SourcePos pos = peek().pos;
                    Rml l = ground_literal(p);
                    for (std::size_t i = 0; i < p.init.size(); ++i) {
                        if (conflicts(p.init[i], l)) {
                            throw ParseError("init literal " + to_text(l) +
                                                 " conflicts with " + to_text(p.init[i]),
                                             pos);
                        }
                    }
                    p.init.push_back(std::move(l));
                    p.init_pos.push_back(pos);
                }
                expect(TokKind::RParen);
            } else if (kw.text == "goal") {
                std::vector<TemplateRml> conjs = conjunction();
                for (const auto& c : conjs) {
                    ensure_ground(c, p);
                    p.goal.conjuncts.push_back(c.to_ground());
                    p.goal_pos.push_back(c.pos);
                }
                expect(TokKind::RParen);
            } else {
                throw ParseError("unknown problem section :" + kw.text, kw.pos);
            }
        }
        expect(TokKind::RParen);
        expect(TokKind::End);
        return p;
    }

private:
    const Token& peek(int ahead = 0) const {
        std::size_t j = i_ + ahead;
        return j < tokens_.size() ? tokens_[j] : tokens_.back();
    }

    bool at(TokKind k) const { return peek().kind == k; }

    Token next() { return tokens_[i_ < tokens_.size() - 1 ? i_++ : i_]; }

    Token expect(TokKind k) {
        if (!at(k)) {
            throw ParseError("expected " + describe(k) + ", found '" + peek().text + "'",
                             peek().pos);
        }
        return next();
    }

    void expect_word(std::string_view word) {
        Token t = expect(TokKind::Ident);
        if (fold(t.text) != word) {
            throw ParseError("expected '" + std::string(word) + "', found '" + t.text + "'",
                             t.pos);
        }
    }

    bool at_word(std::string_view word) const {
        return at(TokKind::Ident) && fold(peek().text) == word;
    }

    static std::string describe(TokKind k) {
        switch (k) {
            case TokKind::LParen: return "'('";
            case TokKind::RParen: return "')'";
            case TokKind::LBracket: return "'['";
            case TokKind::RBracket: return "']'";
            case TokKind::Dash: return "'-'";
            case TokKind::Ident: return "identifier";
            case TokKind::Variable: return "variable";
            case TokKind::Keyword: return "keyword";
            case TokKind::End: return "end of input";
        }
        return "?";
    }

    // name+ - type [name+ - type]* ) with a default parent for a trailing
    // untyped group. Consumes the closing paren.
    void parse_typed_names(std::vector<TypeDecl>& out) {
        std::vector<Token> pending;
        while (!at(TokKind::RParen)) {
            if (at(TokKind::Dash)) {
                next();
                Token type = expect(TokKind::Ident);
                for (const auto& t : pending) out.push_back({t.text, type.text, t.pos});
                pending.clear();
            } else {
                pending.push_back(expect(TokKind::Ident));
            }
        }
        for (const auto& t : pending) out.push_back({t.text, "object", t.pos});
        expect(TokKind::RParen);
    }

    // (?v+ - type)* groups inside an already-open paren list; consumes ')'.
    std::vector<Param> typed_variables(const DomainSpec& d) {
        std::vector<Param> out;
        std::vector<Token> pending;
        expect(TokKind::LParen);
        while (!at(TokKind::RParen)) {
            if (at(TokKind::Dash)) {
                next();
                Token type = expect(TokKind::Ident);
                if (!d.find_type(type.text) && type.text != "object") {
                    throw ParseError("undeclared type " + type.text, type.pos);
                }
                for (const auto& v : pending) out.push_back({v.text, type.text, v.pos});
                pending.clear();
            } else {
                pending.push_back(expect(TokKind::Variable));
            }
        }
        if (!pending.empty()) {
            throw ParseError("variable list missing '- type'", pending.front().pos);
        }
        expect(TokKind::RParen);
        return out;
    }

    PredicateDecl predicate_decl(const DomainSpec& d) {
        expect(TokKind::LParen);
        Token name = expect(TokKind::Ident);
        PredicateDecl decl;
        decl.name = name.text;
        decl.pos = name.pos;
        std::vector<Token> pending;
        while (!at(TokKind::RParen)) {
            if (at(TokKind::Dash)) {
                next();
                Token type = expect(TokKind::Ident);
                if (!d.find_type(type.text) && type.text != "object") {
                    throw ParseError("undeclared type " + type.text, type.pos);
                }
                for (const auto& v : pending) decl.params.push_back({v.text, type.text, v.pos});
                pending.clear();
            } else {
                pending.push_back(expect(TokKind::Variable));
            }
        }
        for (const auto& v : pending) decl.params.push_back({v.text, "object", v.pos});
        expect(TokKind::RParen);
        return decl;
    }

    Term term() {
        if (at(TokKind::Variable)) {
            Token t = next();
            return var(t.text);
        }
        Token t = expect(TokKind::Ident);
        return constant(t.text);
    }

    // literal := (not literal) | [term] literal | (pred term*)
    TemplateRml literal(const DomainSpec* d) {
        SourcePos pos = peek().pos;
        if (at(TokKind::LBracket)) {
            next();
            Term agent = term();
            expect(TokKind::RBracket);
            TemplateRml inner = literal(d);
            inner.chain.insert(inner.chain.begin(), TemplateOp{agent, false});
            inner.pos = pos;
            return inner;
        }
        expect(TokKind::LParen);
        if (at_word("not")) {
            next();
            TemplateRml inner = literal(d);
            expect(TokKind::RParen);
            inner = negate(std::move(inner));
            inner.pos = pos;
            return inner;
        }
        Token pred = expect(TokKind::Ident);
        TemplateRml out;
        out.pos = pos;
        out.fluent.predicate = pred.text;
        while (!at(TokKind::RParen)) out.fluent.args.push_back(term());
        expect(TokKind::RParen);
        if (d) check_predicate(*d, out.fluent, pred.pos);
        return out;
    }

    void check_predicate(const DomainSpec& d, const TemplateFluent& f, SourcePos pos) {
        const PredicateDecl* decl = d.find_predicate(f.predicate);
        if (!decl) throw ParseError("undeclared predicate " + f.predicate, pos);
        if (decl->params.size() != f.args.size()) {
            throw ParseError("predicate " + f.predicate + " expects " +
                                 std::to_string(decl->params.size()) + " arguments, got " +
                                 std::to_string(f.args.size()),
                             pos);
        }
    }

    // (and x*) | x — consumes through the conjunction but not any caller paren
    std::vector<TemplateRml> conjunction(const DomainSpec* d = nullptr) {
        std::vector<TemplateRml> out;
        if (at(TokKind::LParen) && peek(1).kind == TokKind::Ident && fold(peek(1).text) == "and") {
            next();
            next();
            while (!at(TokKind::RParen)) out.push_back(literal(d));
            expect(TokKind::RParen);
        } else {
            out.push_back(literal(d));
        }
        return out;
    }

    EffectItem when_item(const DomainSpec& d) {
        // caller consumed "( when"
        EffectItem item;
        item.condition = conjunction(&d);
        for (auto& l : conjunction(&d)) item.adds.push_back(std::move(l));
        expect(TokKind::RParen);
        return item;
    }

    // item := literal | (when G E) | (forall ?v - t item), foralls nesting
    // into one binder list
    EffectItem effect_item(const DomainSpec& d) {
        if (at(TokKind::LParen) && peek(1).kind == TokKind::Ident) {
            std::string word = fold(peek(1).text);
            if (word == "forall") {
                next();
                next();
                Token v = expect(TokKind::Variable);
                expect(TokKind::Dash);
                Token type = expect(TokKind::Ident);
                if (!d.find_type(type.text) && type.text != "object") {
                    throw ParseError("undeclared type " + type.text, type.pos);
                }
                EffectItem item;
                if (at(TokKind::LParen) && peek(1).kind == TokKind::Ident &&
                    (fold(peek(1).text) == "when" || fold(peek(1).text) == "forall")) {
                    if (fold(peek(1).text) == "when") {
                        next();
                        next();
                        item = when_item(d);
                    } else {
                        item = effect_item(d);
                    }
                } else {
                    for (auto& l : conjunction(&d)) item.adds.push_back(std::move(l));
                }
                item.quantifiers.insert(item.quantifiers.begin(),
                                        Param{v.text, type.text, v.pos});
                expect(TokKind::RParen);
                return item;
            }
            if (word == "when") {
                next();
                next();
                return when_item(d);
            }
            if (word == "and") {  // one item holding several literals
                next();
                next();
                EffectItem item;
                while (!at(TokKind::RParen)) item.adds.push_back(literal(&d));
                expect(TokKind::RParen);
                return item;
            }
        }
        EffectItem item;
        item.adds.push_back(literal(&d));
        return item;
    }

    ActionSchema action(DomainSpec& d, SourcePos pos) {
        ActionSchema a;
        a.pos = pos;
        a.name = expect(TokKind::Ident).text;
        if (d.find_action(a.name)) {
            throw ParseError("duplicate action name " + a.name, pos);
        }
        bool saw_derive = false;
        while (!at(TokKind::RParen)) {
            Token kw = expect(TokKind::Keyword);
            if (kw.text == "derive-condition") {
                Token v = expect(TokKind::Ident);
                if (fold(v.text) != "always") {
                    throw ParseError("unsupported :derive-condition value '" + v.text +
                                         "' (only 'always' is accepted)",
                                     v.pos);
                }
                a.derive_condition = "always";
                saw_derive = true;
            } else if (kw.text == "parameters") {
                a.parameters = typed_variables(d);
            } else if (kw.text == "precondition") {
                a.precondition = conjunction(&d);
            } else if (kw.text == "effect") {
                if (at(TokKind::LParen) && peek(1).kind == TokKind::Ident &&
                    fold(peek(1).text) == "and") {
                    next();
                    next();
                    while (!at(TokKind::RParen)) a.effects.push_back(effect_item(d));
                    expect(TokKind::RParen);
                } else {
                    a.effects.push_back(effect_item(d));
                }
            } else {
                throw ParseError("unknown action section :" + kw.text, kw.pos);
            }
        }
        expect(TokKind::RParen);
        if (!saw_derive) {
            throw ParseError("action " + a.name + " is missing :derive-condition", pos);
        }
        check_bindings(a);
        return a;
    }

    void check_bindings(const ActionSchema& a) {
        auto bound = [&](const std::string& name, const EffectItem* item) {
            for (const auto& p : a.parameters) {
                if (p.name == name) return true;
            }
            return item && item->binds(name);
        };
        auto check_rml = [&](const TemplateRml& l, const EffectItem* item) {
            for (const auto& op : l.chain) {
                if (op.agent.is_variable && !bound(op.agent.name, item)) {
                    throw ParseError("unbound variable ?" + op.agent.name, l.pos);
                }
            }
            for (const auto& t : l.fluent.args) {
                if (t.is_variable && !bound(t.name, item)) {
                    throw ParseError("unbound variable ?" + t.name, l.pos);
                }
            }
        };
        for (const auto& l : a.precondition) check_rml(l, nullptr);
        for (const auto& item : a.effects) {
            for (const auto& l : item.condition) check_rml(l, &item);
            for (const auto& l : item.adds) check_rml(l, &item);
            for (const auto& l : item.dels) check_rml(l, &item);
        }
    }

    Rml ground_literal(const ProblemSpec& p) {
        TemplateRml t = literal(nullptr);
        ensure_ground(t, p);
        return t.to_ground();
    }

    void ensure_ground(const TemplateRml& t, const ProblemSpec& p) {
        if (!t.is_ground()) {
            throw ParseError("variables are not allowed in problem literals", t.pos);
        }
        for (const auto& op : t.chain) {
            if (!p.find_object(op.agent.name)) {
                throw ParseError("unknown object " + op.agent.name, t.pos);
            }
        }
        for (const auto& a : t.fluent.args) {
            if (!p.find_object(a.name)) {
                throw ParseError("unknown object " + a.name, t.pos);
            }
        }
    }

    // Reports an unclosed bracket at its opening position rather than at
    // end of input.
    void check_balance() const {
        std::vector<const Token*> open;
        for (const auto& t : tokens_) {
            if (t.kind == TokKind::LParen || t.kind == TokKind::LBracket) {
                open.push_back(&t);
            } else if (t.kind == TokKind::RParen || t.kind == TokKind::RBracket) {
                TokKind want = t.kind == TokKind::RParen ? TokKind::LParen : TokKind::LBracket;
                if (open.empty() || open.back()->kind != want) {
                    throw ParseError("unmatched '" + t.text + "'", t.pos);
                }
                open.pop_back();
            }
        }
        if (!open.empty()) {
            throw ParseError("unclosed '" + open.back()->text + "'", open.back()->pos);
        }
    }

    static std::string fold(std::string_view s) { return detail::fold(s); }

    std::vector<Token> tokens_;
    std::size_t i_ = 0;
};

}  // namespace detail

inline DomainSpec parse_domain(std::string_view text) {
    return detail::Parser(text).domain();
}

inline ProblemSpec parse_problem(std::string_view text) {
    return detail::Parser(text).problem();
}

}  // namespace epiplan::epddl
