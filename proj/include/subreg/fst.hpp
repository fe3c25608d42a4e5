#pragma once

#include <deque>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "subreg/nfa.hpp"

namespace subreg {

struct FstArc {
    Sym in;   // kEpsilon allowed
    Sym out;  // kEpsilon allowed
    State dst;
    bool operator==(const FstArc&) const = default;
};

// Finite-state transducer.  Pure value type like Dfa; relations are over
// UTF-8 words of the two alphabets.
struct Fst {
    Alphabet input;
    Alphabet output;
    State start = 0;
    std::vector<std::vector<FstArc>> arcs;
    std::vector<bool> finals;

    State num_states() const { return static_cast<State>(arcs.size()); }

    State add_state(bool is_final = false) {
        arcs.emplace_back();
        finals.push_back(is_final);
        return num_states() - 1;
    }

    void add_arc(State src, Sym in, Sym out, State dst) { arcs[src].push_back({in, out, dst}); }
};

inline Fst identity_fst(const Dfa& d) {
    Fst t;
    t.input = d.alphabet;
    t.output = d.alphabet;
    t.start = d.start;
    t.arcs.resize(d.num_states());
    t.finals = d.finals;
    for (State q = 0; q < d.num_states(); ++q)
        for (auto [sym, r] : d.trans[q]) t.add_arc(q, sym, sym, r);
    return t;
}

// Transducer for the relation {(x,y) | Levenshtein(x,y) = 1}: exactly one
// substitution, insertion, or deletion.  Alignments are canonicalized so
// each related pair is realized by exactly one path: the edited position is
// the leftmost possible one (an insertion or deletion of symbol a is never
// taken right after copying an a), and substituting a symbol by itself is
// excluded since that would smuggle in distance-0 pairs.
inline Fst edit1_transducer(const Alphabet& alphabet) {
    if (alphabet.size() == 0) throw std::invalid_argument("edit1 needs a nonempty alphabet");
    const Sym m = alphabet.size();
    Fst t;
    t.input = alphabet;
    t.output = alphabet;
    // state 0: nothing copied yet; state 1+a: last copied symbol was a;
    // state m+1: the single edit has happened.
    for (Sym i = 0; i < m + 2; ++i) t.add_state(i == m + 1);
    t.start = 0;
    const State post = m + 1;
    for (State pre = 0; pre <= m; ++pre) {
        const Sym last = pre == 0 ? kEpsilon : pre - 1;
        for (Sym a = 0; a < m; ++a) {
            t.add_arc(pre, a, a, 1 + a);  // copy
            for (Sym b = 0; b < m; ++b)
                if (a != b) t.add_arc(pre, a, b, post);  // substitute
            if (a != last) {
                t.add_arc(pre, a, kEpsilon, post);  // delete
                t.add_arc(pre, kEpsilon, a, post);  // insert
            }
        }
    }
    for (Sym a = 0; a < m; ++a) t.add_arc(post, a, a, post);
    return t;
}

enum class InsDel { Insert, Delete };

// Insert: {(uv, u sym v)}; Delete: {(u sym v, uv)}.  Exactly one occurrence
// is affected.
inline Fst insdel_transducer(InsDel kind, Sym sym, const Alphabet& alphabet) {
    if (sym >= alphabet.size()) throw std::invalid_argument("symbol not in alphabet");
    Fst t;
    t.input = alphabet;
    t.output = alphabet;
    t.add_state(false);
    t.add_state(true);
    for (Sym a = 0; a < alphabet.size(); ++a) {
        t.add_arc(0, a, a, 0);
        t.add_arc(1, a, a, 1);
    }
    if (kind == InsDel::Insert)
        t.add_arc(0, kEpsilon, sym, 1);
    else
        t.add_arc(0, sym, kEpsilon, 1);
    return t;
}

// Maps each word to its projection onto the tier: tier symbols pass
// through, everything else erases.
inline Fst tier_projection(const Alphabet& alphabet, const std::set<Sym>& tier) {
    for (Sym s : tier)
        if (s >= alphabet.size()) throw std::invalid_argument("tier symbol outside alphabet");
    Fst t;
    t.input = alphabet;
    t.output = alphabet;
    t.add_state(true);
    for (Sym a = 0; a < alphabet.size(); ++a)
        t.add_arc(0, a, tier.count(a) ? a : kEpsilon, 0);
    return t;
}

// Relation composition with the standard epsilon filter, so a pair reachable
// through interleaved epsilon moves is not duplicated: left-side erasures are
// taken before right-side insertions at the same position.
inline Fst compose(const Fst& a, const Fst& b) {
    if (a.output != b.input) throw std::invalid_argument("composition alphabet mismatch");
    Fst out;
    out.input = a.input;
    out.output = b.output;
    std::map<std::tuple<State, State, int>, State> seen;
    std::deque<std::tuple<State, State, int>> queue;
    auto intern = [&](State qa, State qb, int f) {
        auto [it, fresh] = seen.try_emplace({qa, qb, f}, static_cast<State>(seen.size()));
        if (fresh) {
            out.add_state(a.finals[qa] && b.finals[qb]);
            queue.emplace_back(qa, qb, f);
        }
        return it->second;
    };
    out.start = intern(a.start, b.start, 0);
    while (!queue.empty()) {
        auto [qa, qb, f] = queue.front();
        queue.pop_front();
        State src = seen.at({qa, qb, f});
        for (const auto& pa : a.arcs[qa]) {
            if (pa.out == kEpsilon) {
                if (f != 2) out.add_arc(src, pa.in, kEpsilon, intern(pa.dst, qb, 1));
                continue;
            }
            for (const auto& pb : b.arcs[qb])
                if (pb.in == pa.out) out.add_arc(src, pa.in, pb.out, intern(pa.dst, pb.dst, 0));
        }
        for (const auto& pb : b.arcs[qb])
            if (pb.in == kEpsilon && f != 1)
                out.add_arc(src, kEpsilon, pb.out, intern(qa, pb.dst, 2));
    }
    return out;
}

inline Fst compose(const Dfa& a, const Fst& b) { return compose(identity_fst(a), b); }
inline Fst compose(const Fst& a, const Dfa& b) { return compose(a, identity_fst(b)); }

inline Fst compose3(const Dfa& a, const Fst& t, const Dfa& c) {
    return compose(compose(identity_fst(a), t), identity_fst(c));
}

enum class ApplyDir { Image, Preimage };

// Minimal DFA of t(L) or t^{-1}(L).
inline Dfa apply(const Fst& t, const Dfa& l, ApplyDir dir) {
    const bool image = dir == ApplyDir::Image;
    if ((image ? t.input : t.output) != l.alphabet)
        throw std::invalid_argument("apply alphabet mismatch");
    Nfa n;
    n.alphabet = image ? t.output : t.input;
    std::map<std::pair<State, State>, State> seen;
    std::deque<std::pair<State, State>> queue;
    auto intern = [&](State qt, State ql) {
        auto [it, fresh] = seen.try_emplace({qt, ql}, n.num_states());
        if (fresh) {
            n.add_state(t.finals[qt] && l.finals[ql]);
            queue.emplace_back(qt, ql);
        }
        return it->second;
    };
    n.starts = {intern(t.start, l.start)};
    while (!queue.empty()) {
        auto [qt, ql] = queue.front();
        queue.pop_front();
        State src = seen.at({qt, ql});
        for (const auto& arc : t.arcs[qt]) {
            Sym consumed = image ? arc.in : arc.out;
            Sym emitted = image ? arc.out : arc.in;
            State rl = ql;
            if (consumed != kEpsilon) {
                rl = l.next(ql, consumed);
                if (rl == kNoState) continue;
            }
            n.add_edge(src, emitted, intern(arc.dst, rl));
        }
    }
    return determinize_minimize(n);
}

// Membership of a single pair in the relation; used by diagnostics and
// tests, not by sampling.
inline bool relates(const Fst& t, const Word& x, const Word& y) {
    std::set<std::tuple<State, std::size_t, std::size_t>> seen;
    std::deque<std::tuple<State, std::size_t, std::size_t>> queue;
    queue.emplace_back(t.start, 0, 0);
    seen.insert(queue.front());
    while (!queue.empty()) {
        auto [q, i, j] = queue.front();
        queue.pop_front();
        if (i == x.size() && j == y.size() && t.finals[q]) return true;
        for (const auto& arc : t.arcs[q]) {
            std::size_t ni = i, nj = j;
            if (arc.in != kEpsilon) {
                if (i >= x.size() || x[i] != arc.in) continue;
                ni = i + 1;
            }
            if (arc.out != kEpsilon) {
                if (j >= y.size() || y[j] != arc.out) continue;
                nj = j + 1;
            }
            if (seen.emplace(arc.dst, ni, nj).second) queue.emplace_back(arc.dst, ni, nj);
        }
    }
    return false;
}

}  // namespace subreg
