#pragma once

// Linear temporal logic: abstract syntax, concrete syntax (parser and
// canonical printer), and desugaring into the core connective set
// {atom, true, false, not, and, next, until}.
//
// Concrete syntax, tightest binding first:
//   unary  ! G F X
//   binary U R        (right-associative)
//   binary &
//   binary |
//   binary -> <->     (right-associative, lowest)
// Identifiers are [A-Za-z_][A-Za-z0-9_]* except the reserved single
// letters G F X U R and the keywords true/false.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cnml/rng.hpp"
#include "cnml/util.hpp"

namespace cnml {

enum class LtlOp : std::uint8_t {
    True,
    False,
    Atom,
    Not,
    And,
    Or,
    Implies,
    Next,
    Until,
    Release,
    Globally,
    Eventually,
};

class Ltl;
using LtlPtr = std::shared_ptr<const Ltl>;

class Ltl {
public:
    LtlOp op;
    std::string name;  // Atom only
    LtlPtr lhs;        // unary operand or left operand
    LtlPtr rhs;        // right operand of binary connectives

    static LtlPtr tru() { return node(LtlOp::True); }
    static LtlPtr fls() { return node(LtlOp::False); }
    static LtlPtr atom(std::string n) {
        auto f = node(LtlOp::Atom);
        const_cast<Ltl*>(f.get())->name = std::move(n);
        return f;
    }
    static LtlPtr neg(LtlPtr a) { return node(LtlOp::Not, std::move(a)); }
    static LtlPtr conj(LtlPtr a, LtlPtr b) { return node(LtlOp::And, std::move(a), std::move(b)); }
    static LtlPtr disj(LtlPtr a, LtlPtr b) { return node(LtlOp::Or, std::move(a), std::move(b)); }
    static LtlPtr implies(LtlPtr a, LtlPtr b) { return node(LtlOp::Implies, std::move(a), std::move(b)); }
    static LtlPtr next(LtlPtr a) { return node(LtlOp::Next, std::move(a)); }
    static LtlPtr until(LtlPtr a, LtlPtr b) { return node(LtlOp::Until, std::move(a), std::move(b)); }
    static LtlPtr release(LtlPtr a, LtlPtr b) { return node(LtlOp::Release, std::move(a), std::move(b)); }
    static LtlPtr globally(LtlPtr a) { return node(LtlOp::Globally, std::move(a)); }
    static LtlPtr eventually(LtlPtr a) { return node(LtlOp::Eventually, std::move(a)); }

    bool is_unary() const {
        return op == LtlOp::Not || op == LtlOp::Next || op == LtlOp::Globally ||
               op == LtlOp::Eventually;
    }
    bool is_binary() const {
        return op == LtlOp::And || op == LtlOp::Or || op == LtlOp::Implies ||
               op == LtlOp::Until || op == LtlOp::Release;
    }
    bool is_leaf() const { return !lhs; }

private:
    static LtlPtr node(LtlOp op, LtlPtr a = nullptr, LtlPtr b = nullptr) {
        auto f = std::make_shared<Ltl>();
        f->op = op;
        f->lhs = std::move(a);
        f->rhs = std::move(b);
        return f;
    }
};

// Structural comparison; defines a total order usable as a set key.
inline int ltl_cmp(const Ltl& a, const Ltl& b) {
    if (a.op != b.op) return a.op < b.op ? -1 : 1;
    if (a.op == LtlOp::Atom) return a.name.compare(b.name);
    if (a.lhs) {
        if (int c = ltl_cmp(*a.lhs, *b.lhs)) return c;
    }
    if (a.rhs) {
        if (int c = ltl_cmp(*a.rhs, *b.rhs)) return c;
    }
    return 0;
}

inline bool ltl_equal(const LtlPtr& a, const LtlPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return ltl_cmp(*a, *b) == 0;
}

struct LtlLess {
    bool operator()(const LtlPtr& a, const LtlPtr& b) const { return ltl_cmp(*a, *b) < 0; }
};

inline int ltl_depth(const Ltl& f) {
    int d = 0;
    if (f.lhs) d = ltl_depth(*f.lhs);
    if (f.rhs) d = std::max(d, ltl_depth(*f.rhs));
    return d + 1;
}

inline std::size_t ltl_node_count(const Ltl& f) {
    std::size_t n = 1;
    if (f.lhs) n += ltl_node_count(*f.lhs);
    if (f.rhs) n += ltl_node_count(*f.rhs);
    return n;
}

inline void collect_atoms(const Ltl& f, std::set<std::string>& out) {
    if (f.op == LtlOp::Atom) out.insert(f.name);
    if (f.lhs) collect_atoms(*f.lhs, out);
    if (f.rhs) collect_atoms(*f.rhs, out);
}

inline std::set<std::string> ltl_atoms(const LtlPtr& f) {
    std::set<std::string> out;
    collect_atoms(*f, out);
    return out;
}

// ---------------------------------------------------------------------------
// Printing. Output is canonical: every compound subterm is parenthesized,
// so parse(render(f)) == f holds structurally.

inline void render_into(const Ltl& f, std::string& out) {
    switch (f.op) {
        case LtlOp::True: out += "true"; return;
        case LtlOp::False: out += "false"; return;
        case LtlOp::Atom: out += f.name; return;
        default: break;
    }
    const char* sym = nullptr;
    switch (f.op) {
        case LtlOp::Not: sym = "!"; break;
        case LtlOp::Next: sym = "X"; break;
        case LtlOp::Globally: sym = "G"; break;
        case LtlOp::Eventually: sym = "F"; break;
        case LtlOp::And: sym = "&"; break;
        case LtlOp::Or: sym = "|"; break;
        case LtlOp::Implies: sym = "->"; break;
        case LtlOp::Until: sym = "U"; break;
        case LtlOp::Release: sym = "R"; break;
        default: break;
    }
    out += '(';
    if (f.is_unary()) {
        out += sym;
        out += ' ';
        render_into(*f.lhs, out);
    } else {
        render_into(*f.lhs, out);
        out += ' ';
        out += sym;
        out += ' ';
        render_into(*f.rhs, out);
    }
    out += ')';
}

inline std::string render_ltl(const LtlPtr& f) {
    std::string out;
    render_into(*f, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing.

namespace detail {

struct LtlLexer {
    const std::string& text;
    std::size_t pos = 0;

    struct Token {
        enum Kind { End, LParen, RParen, Not, And, Or, Implies, Iff, G, F, X, U, R, True, False, Ident };
        Kind kind;
        std::string ident;
        std::size_t at;
    };

    explicit LtlLexer(const std::string& t) : text(t) { advance(); }

    Token tok;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw parse_error("LTL syntax error at offset " + std::to_string(at) + ": " + msg, at);
    }

    void advance() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r'))
            ++pos;
        tok.at = pos;
        if (pos >= text.size()) {
            tok.kind = Token::End;
            return;
        }
        char c = text[pos];
        switch (c) {
            case '(': tok.kind = Token::LParen; ++pos; return;
            case ')': tok.kind = Token::RParen; ++pos; return;
            case '!': tok.kind = Token::Not; ++pos; return;
            case '&': tok.kind = Token::And; ++pos; return;
            case '|': tok.kind = Token::Or; ++pos; return;
            case '-':
                if (pos + 1 < text.size() && text[pos + 1] == '>') {
                    tok.kind = Token::Implies;
                    pos += 2;
                    return;
                }
                fail("expected '->'", pos);
            case '<':
                if (pos + 2 < text.size() && text[pos + 1] == '-' && text[pos + 2] == '>') {
                    tok.kind = Token::Iff;
                    pos += 3;
                    return;
                }
                fail("expected '<->'", pos);
            default: break;
        }
        if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_'))
            fail(std::string("unexpected character '") + c + "'", pos);
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        std::string word = text.substr(start, pos - start);
        if (word == "true") tok.kind = Token::True;
        else if (word == "false") tok.kind = Token::False;
        else if (word == "G") tok.kind = Token::G;
        else if (word == "F") tok.kind = Token::F;
        else if (word == "X") tok.kind = Token::X;
        else if (word == "U") tok.kind = Token::U;
        else if (word == "R") tok.kind = Token::R;
        else {
            tok.kind = Token::Ident;
            tok.ident = std::move(word);
        }
    }
};

class LtlParser {
public:
    LtlParser(const std::string& text, const std::set<std::string>* alphabet)
        : lex_(text), alphabet_(alphabet) {}

    LtlPtr parse() {
        LtlPtr f = implication();
        if (lex_.tok.kind != LtlLexer::Token::End)
            lex_.fail("trailing input", lex_.tok.at);
        return f;
    }

private:
    using Token = LtlLexer::Token;
    LtlLexer lex_;
    const std::set<std::string>* alphabet_;

    LtlPtr implication() {
        LtlPtr left = disjunction();
        if (lex_.tok.kind == Token::Implies) {
            lex_.advance();
            return Ltl::implies(left, implication());
        }
        if (lex_.tok.kind == Token::Iff) {
            // No biconditional in the abstract syntax; expand at parse time.
            lex_.advance();
            LtlPtr right = implication();
            return Ltl::conj(Ltl::implies(left, right), Ltl::implies(right, left));
        }
        return left;
    }

    LtlPtr disjunction() {
        LtlPtr f = conjunction();
        while (lex_.tok.kind == Token::Or) {
            lex_.advance();
            f = Ltl::disj(f, conjunction());
        }
        return f;
    }

    LtlPtr conjunction() {
        LtlPtr f = until();
        while (lex_.tok.kind == Token::And) {
            lex_.advance();
            f = Ltl::conj(f, until());
        }
        return f;
    }

    LtlPtr until() {
        LtlPtr left = unary();
        if (lex_.tok.kind == Token::U) {
            lex_.advance();
            return Ltl::until(left, until());
        }
        if (lex_.tok.kind == Token::R) {
            lex_.advance();
            return Ltl::release(left, until());
        }
        return left;
    }

    LtlPtr unary() {
        switch (lex_.tok.kind) {
            case Token::Not: lex_.advance(); return Ltl::neg(unary());
            case Token::G: lex_.advance(); return Ltl::globally(unary());
            case Token::F: lex_.advance(); return Ltl::eventually(unary());
            case Token::X: lex_.advance(); return Ltl::next(unary());
            default: return primary();
        }
    }

    LtlPtr primary() {
        switch (lex_.tok.kind) {
            case Token::LParen: {
                lex_.advance();
                LtlPtr f = implication();
                if (lex_.tok.kind != Token::RParen)
                    lex_.fail("expected ')'", lex_.tok.at);
                lex_.advance();
                return f;
            }
            case Token::True: lex_.advance(); return Ltl::tru();
            case Token::False: lex_.advance(); return Ltl::fls();
            case Token::Ident: {
                std::string name = lex_.tok.ident;
                std::size_t at = lex_.tok.at;
                if (alphabet_ && !alphabet_->count(name))
                    throw parse_error("unknown proposition '" + name + "' at offset " +
                                          std::to_string(at),
                                      at);
                lex_.advance();
                return Ltl::atom(name);
            }
            default: lex_.fail("expected a formula", lex_.tok.at);
        }
    }
};

}  // namespace detail

// Parse a formula. When `alphabet` is given, atoms outside it are rejected.
inline LtlPtr parse_ltl(const std::string& text, const std::set<std::string>* alphabet = nullptr) {
    return detail::LtlParser(text, alphabet).parse();
}

// ---------------------------------------------------------------------------
// Desugaring into the core grammar {Atom, True, False, Not, And, Next, Until}:
//   a | b     =>  !(!a & !b)
//   a -> b    =>  !(a & !b)
//   F a       =>  true U a
//   G a       =>  !(true U !a)         (via  false R a  ==  !(true U !a))
//   a R b     =>  !(!a U !b)

inline LtlPtr desugar(const LtlPtr& f) {
    switch (f->op) {
        case LtlOp::True:
        case LtlOp::False:
        case LtlOp::Atom: return f;
        case LtlOp::Not: return Ltl::neg(desugar(f->lhs));
        case LtlOp::Next: return Ltl::next(desugar(f->lhs));
        case LtlOp::And: return Ltl::conj(desugar(f->lhs), desugar(f->rhs));
        case LtlOp::Until: return Ltl::until(desugar(f->lhs), desugar(f->rhs));
        case LtlOp::Or:
            return Ltl::neg(Ltl::conj(Ltl::neg(desugar(f->lhs)), Ltl::neg(desugar(f->rhs))));
        case LtlOp::Implies:
            return Ltl::neg(Ltl::conj(desugar(f->lhs), Ltl::neg(desugar(f->rhs))));
        case LtlOp::Eventually: return Ltl::until(Ltl::tru(), desugar(f->lhs));
        case LtlOp::Globally:
            return Ltl::neg(Ltl::until(Ltl::tru(), Ltl::neg(desugar(f->lhs))));
        case LtlOp::Release:
            return Ltl::neg(Ltl::until(Ltl::neg(desugar(f->lhs)), Ltl::neg(desugar(f->rhs))));
    }
    throw std::logic_error("unreachable");
}

inline bool is_core(const Ltl& f) {
    switch (f.op) {
        case LtlOp::True:
        case LtlOp::False:
        case LtlOp::Atom: return true;
        case LtlOp::Not:
        case LtlOp::Next: return is_core(*f.lhs);
        case LtlOp::And:
        case LtlOp::Until: return is_core(*f.lhs) && is_core(*f.rhs);
        default: return false;
    }
}

// Random formula over the given atoms, connective chosen uniformly at each
// node. Used by property tests and the verifier stress suites.
inline LtlPtr random_formula(Rng& rng, const std::vector<std::string>& atoms, int max_depth) {
    if (max_depth <= 1 || rng.coin(0.25)) {
        std::size_t k = rng.below(atoms.size() + 2);
        if (k == atoms.size()) return Ltl::tru();
        if (k == atoms.size() + 1) return Ltl::fls();
        return Ltl::atom(atoms[k]);
    }
    switch (rng.below(9)) {
        case 0: return Ltl::neg(random_formula(rng, atoms, max_depth - 1));
        case 1:
            return Ltl::conj(random_formula(rng, atoms, max_depth - 1),
                             random_formula(rng, atoms, max_depth - 1));
        case 2:
            return Ltl::disj(random_formula(rng, atoms, max_depth - 1),
                             random_formula(rng, atoms, max_depth - 1));
        case 3:
            return Ltl::implies(random_formula(rng, atoms, max_depth - 1),
                                random_formula(rng, atoms, max_depth - 1));
        case 4: return Ltl::next(random_formula(rng, atoms, max_depth - 1));
        case 5:
            return Ltl::until(random_formula(rng, atoms, max_depth - 1),
                              random_formula(rng, atoms, max_depth - 1));
        case 6:
            return Ltl::release(random_formula(rng, atoms, max_depth - 1),
                                random_formula(rng, atoms, max_depth - 1));
        case 7: return Ltl::globally(random_formula(rng, atoms, max_depth - 1));
        default: return Ltl::eventually(random_formula(rng, atoms, max_depth - 1));
    }
}

}  // namespace cnml
