#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "subreg/labels.hpp"
#include "subreg/nfa.hpp"

namespace subreg {

// A factor literal: successor runs joined by precedence gaps, optionally
// evaluated on a tier and/or anchored at the word edges.  Symbols are kept
// as strings until compile time, when an alphabet gives them ids.
struct Literal {
    std::vector<std::vector<std::string>> runs;
    std::vector<std::string> tier;  // empty means no tier
    bool anchor_start = false;
    bool anchor_end = false;

    bool has_tier() const { return !tier.empty(); }

    enum class Kind { Substring, Subsequence, TierSubstring, Mixed };
    Kind kind() const {
        if (has_tier()) return runs.size() == 1 ? Kind::TierSubstring : Kind::Mixed;
        if (runs.size() == 1) return Kind::Substring;
        for (const auto& r : runs)
            if (r.size() != 1) return Kind::Mixed;
        return Kind::Subsequence;
    }
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Node { Lit, AtLeast, Mod, Not, And, Or, Implies, Concat, All, None };
    Node node = Node::All;
    Literal lit;                 // Lit, AtLeast
    int threshold = 0;           // AtLeast
    std::string mod_symbol;      // Mod
    int modulus = 0, residue = 0;  // Mod
    ExprPtr lhs, rhs;            // binary nodes; Not uses lhs only
};

inline ExprPtr make_lit(Literal l) {
    auto e = std::make_shared<Expr>();
    e->node = Expr::Node::Lit;
    e->lit = std::move(l);
    return e;
}

inline ExprPtr make_unary(Expr::Node n, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->node = n;
    e->lhs = std::move(a);
    return e;
}

inline ExprPtr make_binary(Expr::Node n, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->node = n;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

// Restricted shapes used for reporting: conjunctions of negative literals
// and disjunctions of positive literals.
enum class ExprShape { CNL, DPL, General };

inline bool is_cnl(const Expr& e) {
    switch (e.node) {
        case Expr::Node::Not: return e.lhs->node == Expr::Node::Lit;
        case Expr::Node::And: return is_cnl(*e.lhs) && is_cnl(*e.rhs);
        default: return false;
    }
}

inline bool is_dpl(const Expr& e) {
    switch (e.node) {
        case Expr::Node::Lit: return true;
        case Expr::Node::Or: return is_dpl(*e.lhs) && is_dpl(*e.rhs);
        default: return false;
    }
}

inline ExprShape expr_shape(const Expr& e) {
    if (is_cnl(e)) return ExprShape::CNL;
    if (is_dpl(e)) return ExprShape::DPL;
    return ExprShape::General;
}

// ---------------------------------------------------------------------------
// Parsing.  Plain-text syntax (see the README for the grammar): quoted
// symbol runs joined by `<.` (successor) or `<` (precedence), tier tags
// `[T:ae]`, anchors `^`/`$`, connectives `!`, `&`, `|`, `->`, language
// concatenation `++`, and the constructors `atleast(n, lit)` and
// `mod("a", p, r)`.  `#` starts a comment.

namespace exprdetail {

struct Token {
    enum class Kind { Quoted, Ident, Int, Punct, End } kind;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_ws();
        if (pos_ >= src_.size()) return {Token::Kind::End, ""};
        char c = src_[pos_];
        if (c == '"') {
            ++pos_;
            std::string body;
            while (pos_ < src_.size() && src_[pos_] != '"') body += src_[pos_++];
            if (pos_ >= src_.size()) throw std::invalid_argument("unterminated quote");
            ++pos_;
            return {Token::Kind::Quoted, body};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                num += src_[pos_++];
            return {Token::Kind::Int, num};
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string id;
            while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_])))
                id += src_[pos_++];
            return {Token::Kind::Ident, id};
        }
        // multi-char punctuation first
        for (std::string_view p : {"->", "++", "<."}) {
            if (src_.substr(pos_, p.size()) == p) {
                pos_ += p.size();
                return {Token::Kind::Punct, std::string(p)};
            }
        }
        ++pos_;
        return {Token::Kind::Punct, std::string(1, c)};
    }

private:
    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }
    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) { advance(); }

    ExprPtr parse() {
        ExprPtr e = implies();
        expect_end();
        return e;
    }

private:
    void advance() { cur_ = lex_.next(); }

    bool eat_punct(std::string_view p) {
        if (cur_.kind == Token::Kind::Punct && cur_.text == p) {
            advance();
            return true;
        }
        return false;
    }

    void expect_punct(std::string_view p) {
        if (!eat_punct(p)) throw std::invalid_argument("expected '" + std::string(p) + "'");
    }

    void expect_end() {
        if (cur_.kind != Token::Kind::End) throw std::invalid_argument("trailing input: " + cur_.text);
    }

    int expect_int() {
        if (cur_.kind != Token::Kind::Int) throw std::invalid_argument("expected integer");
        int v = std::stoi(cur_.text);
        advance();
        return v;
    }

    std::string expect_quoted() {
        if (cur_.kind != Token::Kind::Quoted) throw std::invalid_argument("expected quoted string");
        std::string s = cur_.text;
        advance();
        return s;
    }

    ExprPtr implies() {
        ExprPtr l = disj();
        if (eat_punct("->")) return make_binary(Expr::Node::Implies, l, implies());
        return l;
    }

    ExprPtr disj() {
        ExprPtr l = conj();
        while (eat_punct("|")) l = make_binary(Expr::Node::Or, l, conj());
        return l;
    }

    ExprPtr conj() {
        ExprPtr l = cat();
        while (eat_punct("&")) l = make_binary(Expr::Node::And, l, cat());
        return l;
    }

    ExprPtr cat() {
        ExprPtr l = unary();
        while (eat_punct("++")) l = make_binary(Expr::Node::Concat, l, unary());
        return l;
    }

    ExprPtr unary() {
        if (eat_punct("!")) return make_unary(Expr::Node::Not, unary());
        return atom();
    }

    ExprPtr atom() {
        if (cur_.kind == Token::Kind::Ident) {
            if (cur_.text == "ALL") {
                advance();
                auto e = std::make_shared<Expr>();
                e->node = Expr::Node::All;
                return e;
            }
            if (cur_.text == "NONE") {
                advance();
                auto e = std::make_shared<Expr>();
                e->node = Expr::Node::None;
                return e;
            }
            if (cur_.text == "atleast") {
                advance();
                expect_punct("(");
                int t = expect_int();
                expect_punct(",");
                Literal l = literal();
                expect_punct(")");
                auto e = std::make_shared<Expr>();
                e->node = Expr::Node::AtLeast;
                e->threshold = t;
                e->lit = std::move(l);
                return e;
            }
            if (cur_.text == "mod") {
                advance();
                expect_punct("(");
                std::string sym = expect_quoted();
                expect_punct(",");
                int p = expect_int();
                expect_punct(",");
                int r = expect_int();
                expect_punct(")");
                auto e = std::make_shared<Expr>();
                e->node = Expr::Node::Mod;
                e->mod_symbol = sym;
                e->modulus = p;
                e->residue = r;
                return e;
            }
            throw std::invalid_argument("unknown identifier: " + cur_.text);
        }
        if (cur_.kind == Token::Kind::Punct && cur_.text == "(") {
            advance();
            ExprPtr e = implies();
            expect_punct(")");
            return e;
        }
        return make_lit(literal());
    }

    Literal literal() {
        Literal l;
        if (eat_punct("[")) {
            if (cur_.kind != Token::Kind::Ident || cur_.text != "T")
                throw std::invalid_argument("expected tier tag [T:...]");
            advance();
            expect_punct(":");
            if (cur_.kind != Token::Kind::Ident) throw std::invalid_argument("expected tier symbols");
            for (auto& ch : detail::utf8_chars(cur_.text)) l.tier.push_back(ch);
            advance();
            expect_punct("]");
            std::sort(l.tier.begin(), l.tier.end());
            l.tier.erase(std::unique(l.tier.begin(), l.tier.end()), l.tier.end());
            if (eat_punct("(")) {
                chain_into(l);
                expect_punct(")");
                return l;
            }
        }
        chain_into(l);
        return l;
    }

    void chain_into(Literal& l) {
        l.anchor_start = eat_punct("^");
        l.runs.push_back(run_chars(expect_quoted()));
        while (true) {
            if (eat_punct("<.")) {
                // successor joint: extend the current run
                auto more = run_chars(expect_quoted());
                auto& back = l.runs.back();
                back.insert(back.end(), more.begin(), more.end());
            } else if (eat_punct("<")) {
                l.runs.push_back(run_chars(expect_quoted()));
            } else {
                break;
            }
        }
        l.anchor_end = eat_punct("$");
        for (const auto& r : l.runs)
            if (r.empty()) throw std::invalid_argument("empty literal payload");
    }

    static std::vector<std::string> run_chars(const std::string& quoted) {
        auto v = detail::utf8_chars(quoted);
        if (v.empty()) throw std::invalid_argument("empty literal payload");
        return v;
    }

    Lexer lex_;
    Token cur_;
};

}  // namespace exprdetail

inline ExprPtr parse_expr(std::string_view text) { return exprdetail::Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Compilation.

namespace exprdetail {

inline std::set<Sym> tier_ids(const Literal& l, const Alphabet& alphabet) {
    std::set<Sym> t;
    for (const auto& s : l.tier) t.insert(alphabet.id(s));
    return t;
}

}  // namespace exprdetail

// Minimal DFA of the containment language of one factor literal.
inline Dfa compile_literal(const Literal& lit, const Alphabet& alphabet) {
    if (lit.runs.empty()) throw std::invalid_argument("literal needs a payload");
    std::set<Sym> tier = exprdetail::tier_ids(lit, alphabet);
    const bool tiered = lit.has_tier();
    std::vector<Word> runs;
    for (const auto& r : lit.runs) {
        Word w;
        for (const auto& ch : r) {
            Sym s = alphabet.id(ch);
            if (tiered && !tier.count(s))
                throw std::invalid_argument("tier literal symbol outside tier: " + ch);
            w.push_back(s);
        }
        runs.push_back(std::move(w));
    }

    Nfa n;
    n.alphabet = alphabet;
    auto add_outer_gap = [&](State q) {
        if (tiered) {
            for (Sym a = 0; a < alphabet.size(); ++a)
                if (!tier.count(a)) n.add_edge(q, a, q);
        }
        // anchored means no further symbols of any kind (plain) or no tier
        // symbols (tiered); the tiered loop above already covers the latter.
    };
    auto add_free_gap = [&](State q) {
        for (Sym a = 0; a < alphabet.size(); ++a) n.add_edge(q, a, q);
    };

    State cur = n.add_state(false);
    if (lit.anchor_start)
        add_outer_gap(cur);
    else
        add_free_gap(cur);
    for (std::size_t ri = 0; ri < runs.size(); ++ri) {
        const Word& run = runs[ri];
        for (std::size_t i = 0; i < run.size(); ++i) {
            State nxt = n.add_state(false);
            n.add_edge(cur, run[i], nxt);
            cur = nxt;
            const bool last_of_run = i + 1 == run.size();
            if (!last_of_run && tiered) {
                for (Sym a = 0; a < alphabet.size(); ++a)
                    if (!tier.count(a)) n.add_edge(cur, a, cur);
            }
        }
        if (ri + 1 < runs.size()) add_free_gap(cur);  // precedence joint
    }
    if (lit.anchor_end)
        add_outer_gap(cur);
    else
        add_free_gap(cur);
    n.finals[cur] = true;
    n.starts = {0};
    return determinize_minimize(n);
}

// Minimal DFA of words containing at least `threshold` occurrences of the
// literal, occurrences counted at distinct start positions (overlaps count).
// Works for substring and tier-substring literals; matching runs over the
// tier projection when a tier is given.
inline Dfa compile_counting(const Literal& lit, int threshold, const Alphabet& alphabet) {
    if (threshold < 1) throw std::invalid_argument("threshold must be >= 1");
    if (lit.runs.size() != 1 || lit.anchor_start || lit.anchor_end)
        throw std::invalid_argument("counting needs a single unanchored run");
    std::set<Sym> tier = exprdetail::tier_ids(lit, alphabet);
    const bool tiered = lit.has_tier();
    Word w;
    for (const auto& ch : lit.runs[0]) {
        Sym s = alphabet.id(ch);
        if (tiered && !tier.count(s)) throw std::invalid_argument("tier literal symbol outside tier");
        w.push_back(s);
    }
    const std::size_t k = w.size();

    // KMP failure function.
    std::vector<std::size_t> fail(k, 0);
    for (std::size_t i = 1; i < k; ++i) {
        std::size_t j = fail[i - 1];
        while (j > 0 && w[i] != w[j]) j = fail[j - 1];
        if (w[i] == w[j]) ++j;
        fail[i] = j;
    }
    auto step = [&](std::size_t s, Sym a) -> std::pair<std::size_t, bool> {
        while (true) {
            if (w[s] == a) {
                std::size_t ns = s + 1;
                if (ns == k) return {fail[k - 1], true};
                return {ns, false};
            }
            if (s == 0) return {0, false};
            s = fail[s - 1];
        }
    };

    const int cap = threshold;
    Dfa d;
    d.alphabet = alphabet;
    auto id = [&](std::size_t s, int c) { return static_cast<State>(c * k + s); };
    for (int c = 0; c <= cap; ++c)
        for (std::size_t s = 0; s < k; ++s) d.add_state(c == cap);
    d.start = id(0, 0);
    for (int c = 0; c <= cap; ++c) {
        for (std::size_t s = 0; s < k; ++s) {
            for (Sym a = 0; a < alphabet.size(); ++a) {
                if (tiered && !tier.count(a)) {
                    d.add_edge(id(s, c), a, id(s, c));
                    continue;
                }
                auto [ns, matched] = step(s, a);
                int nc = std::min(cap, c + (matched ? 1 : 0));
                d.add_edge(id(s, c), a, id(ns, nc));
            }
        }
    }
    return minimize(d);
}

// Minimal DFA of words whose count of `sym` is congruent to `residue`
// modulo the prime `modulus`.
inline Dfa compile_modcount(Sym sym, int modulus, int residue, const Alphabet& alphabet) {
    auto is_prime = [](int p) {
        if (p < 2) return false;
        for (int q = 2; q * q <= p; ++q)
            if (p % q == 0) return false;
        return true;
    };
    if (!is_prime(modulus)) throw std::invalid_argument("modulus must be prime");
    if (residue < 0 || residue >= modulus) throw std::invalid_argument("residue out of range");
    if (sym >= alphabet.size()) throw std::invalid_argument("symbol outside alphabet");
    Dfa d;
    d.alphabet = alphabet;
    for (int c = 0; c < modulus; ++c) d.add_state(c == residue);
    d.start = 0;
    for (int c = 0; c < modulus; ++c)
        for (Sym a = 0; a < alphabet.size(); ++a)
            d.add_edge(c, a, a == sym ? (c + 1) % modulus : c);
    return minimize(d);
}

namespace exprdetail {

inline void collect_tiers(const Expr& e, std::vector<std::vector<std::string>>& tiers) {
    switch (e.node) {
        case Expr::Node::Lit:
        case Expr::Node::AtLeast:
            if (e.lit.has_tier()) tiers.push_back(e.lit.tier);
            break;
        case Expr::Node::Not:
            collect_tiers(*e.lhs, tiers);
            break;
        case Expr::Node::And:
        case Expr::Node::Or:
        case Expr::Node::Implies:
        case Expr::Node::Concat:
            collect_tiers(*e.lhs, tiers);
            collect_tiers(*e.rhs, tiers);
            break;
        default:
            break;
    }
}

}  // namespace exprdetail

// All tier literals inside one expression must agree on the tier.
inline void validate_single_tier(const Expr& e) {
    std::vector<std::vector<std::string>> tiers;
    exprdetail::collect_tiers(e, tiers);
    for (std::size_t i = 1; i < tiers.size(); ++i)
        if (tiers[i] != tiers[0])
            throw std::invalid_argument("expression mixes distinct tiers");
}

inline Dfa compile_expr(const Expr& e, const Alphabet& alphabet);

namespace exprdetail {

inline Dfa compile_node(const Expr& e, const Alphabet& alphabet) {
    using N = Expr::Node;
    switch (e.node) {
        case N::Lit: return compile_literal(e.lit, alphabet);
        case N::AtLeast: return compile_counting(e.lit, e.threshold, alphabet);
        case N::Mod: return compile_modcount(alphabet.id(e.mod_symbol), e.modulus, e.residue, alphabet);
        case N::All: return universal_dfa(alphabet);
        case N::None: return empty_dfa(alphabet);
        case N::Not: return complement(compile_node(*e.lhs, alphabet));
        case N::And: return intersect(compile_node(*e.lhs, alphabet), compile_node(*e.rhs, alphabet));
        case N::Or: return unite(compile_node(*e.lhs, alphabet), compile_node(*e.rhs, alphabet));
        case N::Implies:
            return unite(complement(compile_node(*e.lhs, alphabet)), compile_node(*e.rhs, alphabet));
        case N::Concat: return concat(compile_node(*e.lhs, alphabet), compile_node(*e.rhs, alphabet));
    }
    throw std::logic_error("unreachable");
}

}  // namespace exprdetail

inline Dfa compile_expr(const Expr& e, const Alphabet& alphabet) {
    validate_single_tier(e);
    return exprdetail::compile_node(e, alphabet);
}

inline Dfa compile_expr_text(std::string_view text, const Alphabet& alphabet) {
    return compile_expr(*parse_expr(text), alphabet);
}

// ---------------------------------------------------------------------------
// Language naming scheme: sigma.tau.class.k.t.i with two-digit sigma/tau.
// tau equals sigma when the class has no tier; k and t are 0 when
// inapplicable.

struct LanguageSpec {
    int sigma = 0;
    int tau = 0;
    ClassLabel label = ClassLabel::Reg;
    int k = 0;
    int t = 0;
    int i = 0;

    bool operator==(const LanguageSpec&) const = default;
};

inline std::string render_spec(const LanguageSpec& s) {
    char head[8];
    std::snprintf(head, sizeof head, "%02d.%02d.", s.sigma, s.tau);
    return std::string(head) + std::string(class_name(s.label)) + "." + std::to_string(s.k) + "." +
           std::to_string(s.t) + "." + std::to_string(s.i);
}

inline LanguageSpec parse_spec(const std::string& name) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        std::size_t dot = name.find('.', pos);
        if (dot == std::string::npos) {
            parts.push_back(name.substr(pos));
            break;
        }
        parts.push_back(name.substr(pos, dot - pos));
        pos = dot + 1;
    }
    if (parts.size() != 6) throw std::invalid_argument("language name needs 6 dot-separated fields: " + name);
    auto num = [&](const std::string& f, bool two_digit) {
        if (f.empty() || (two_digit && f.size() != 2))
            throw std::invalid_argument("malformed numeric field in name: " + name);
        for (char c : f)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::invalid_argument("malformed numeric field in name: " + name);
        return std::stoi(f);
    };
    LanguageSpec s;
    s.sigma = num(parts[0], true);
    s.tau = num(parts[1], true);
    auto label = class_from_name(parts[2]);
    if (!label) throw std::invalid_argument("unknown class token in name: " + parts[2]);
    s.label = *label;
    s.k = num(parts[3], false);
    s.t = num(parts[4], false);
    s.i = num(parts[5], false);
    return s;
}

}  // namespace subreg
