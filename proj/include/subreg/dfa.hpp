#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "subreg/alphabet.hpp"

namespace subreg {

using State = std::uint32_t;
inline constexpr State kNoState = ~State{0};

using BigInt = boost::multiprecision::cpp_int;

// Deterministic finite acceptor.  The transition map is partial: a missing
// entry is an implicit dead end.  Minimal machines produced here are trim
// (every state accessible and co-accessible) and BFS-renumbered from the
// start state with symbol-order tie-breaking, so two calls that produce the
// same language produce bit-identical structures.
struct Dfa {
    Alphabet alphabet;
    State start = 0;
    std::vector<std::vector<std::pair<Sym, State>>> trans;  // sorted by symbol
    std::vector<bool> finals;

    State num_states() const { return static_cast<State>(trans.size()); }

    State add_state(bool is_final = false) {
        trans.emplace_back();
        finals.push_back(is_final);
        return num_states() - 1;
    }

    void add_edge(State src, Sym sym, State dst) {
        auto& row = trans[src];
        auto it = std::lower_bound(row.begin(), row.end(), sym,
                                   [](const auto& p, Sym s) { return p.first < s; });
        if (it != row.end() && it->first == sym) {
            if (it->second != dst) throw std::invalid_argument("conflicting transition");
            return;
        }
        row.insert(it, {sym, dst});
    }

    State next(State q, Sym sym) const {
        const auto& row = trans[q];
        auto it = std::lower_bound(row.begin(), row.end(), sym,
                                   [](const auto& p, Sym s) { return p.first < s; });
        if (it == row.end() || it->first != sym) return kNoState;
        return it->second;
    }
};

inline Dfa empty_dfa(Alphabet alphabet) {
    Dfa d;
    d.alphabet = std::move(alphabet);
    d.add_state(false);
    return d;
}

inline Dfa universal_dfa(Alphabet alphabet) {
    Dfa d;
    d.alphabet = std::move(alphabet);
    d.add_state(true);
    for (Sym a = 0; a < d.alphabet.size(); ++a) d.add_edge(0, a, 0);
    return d;
}

inline Dfa exact_length_dfa(Alphabet alphabet, std::size_t len) {
    Dfa d;
    d.alphabet = std::move(alphabet);
    for (std::size_t i = 0; i <= len; ++i) d.add_state(i == len);
    for (std::size_t i = 0; i < len; ++i)
        for (Sym a = 0; a < d.alphabet.size(); ++a)
            d.add_edge(static_cast<State>(i), a, static_cast<State>(i + 1));
    return d;
}

inline bool accepts(const Dfa& d, const Word& w) {
    State q = d.start;
    for (Sym s : w) {
        if (s >= d.alphabet.size()) throw std::invalid_argument("symbol outside alphabet");
        q = d.next(q, s);
        if (q == kNoState) return false;
    }
    return d.finals[q];
}

inline bool accepts(const Dfa& d, std::string_view utf8) { return accepts(d, d.alphabet.encode(utf8)); }

namespace detail {

// BFS renumbering from the start state, exploring symbols in id order.
// Unreachable states are dropped.
inline Dfa bfs_renumber(const Dfa& d, const std::vector<bool>& keep) {
    std::vector<State> order(d.num_states(), kNoState);
    std::deque<State> queue;
    Dfa out;
    out.alphabet = d.alphabet;
    if (d.start < d.num_states() && keep[d.start]) {
        order[d.start] = 0;
        out.add_state(d.finals[d.start]);
        queue.push_back(d.start);
    } else {
        return empty_dfa(d.alphabet);
    }
    while (!queue.empty()) {
        State q = queue.front();
        queue.pop_front();
        for (auto [sym, r] : d.trans[q]) {
            if (!keep[r]) continue;
            if (order[r] == kNoState) {
                order[r] = out.add_state(d.finals[r]);
                queue.push_back(r);
            }
        }
    }
    out.start = 0;
    for (State q = 0; q < d.num_states(); ++q) {
        if (order[q] == kNoState) continue;
        for (auto [sym, r] : d.trans[q])
            if (keep[r] && order[r] != kNoState) out.add_edge(order[q], sym, order[r]);
    }
    return out;
}

}  // namespace detail

// Removes states that are not both accessible and co-accessible, then
// renumbers canonically.  The empty language normalizes to the one-state
// machine with no transitions.
inline Dfa trim(const Dfa& d) {
    State n = d.num_states();
    std::vector<bool> acc(n, false);
    std::deque<State> queue{d.start};
    acc[d.start] = true;
    while (!queue.empty()) {
        State q = queue.front();
        queue.pop_front();
        for (auto [sym, r] : d.trans[q])
            if (!acc[r]) {
                acc[r] = true;
                queue.push_back(r);
            }
    }
    std::vector<std::vector<State>> rev(n);
    for (State q = 0; q < n; ++q)
        for (auto [sym, r] : d.trans[q]) rev[r].push_back(q);
    std::vector<bool> coacc(n, false);
    for (State q = 0; q < n; ++q)
        if (d.finals[q]) {
            coacc[q] = true;
            queue.push_back(q);
        }
    while (!queue.empty()) {
        State q = queue.front();
        queue.pop_front();
        for (State p : rev[q])
            if (!coacc[p]) {
                coacc[p] = true;
                queue.push_back(p);
            }
    }
    std::vector<bool> keep(n);
    bool any = false;
    for (State q = 0; q < n; ++q) {
        keep[q] = acc[q] && coacc[q];
        any = any || keep[q];
    }
    if (!any || !keep[d.start]) return empty_dfa(d.alphabet);
    return detail::bfs_renumber(d, keep);
}

// Totalizes the transition function with an explicit sink.  Returns the
// input unchanged when it is already complete.
inline Dfa complete(const Dfa& d) {
    const Sym m = d.alphabet.size();
    bool needs_sink = false;
    for (State q = 0; q < d.num_states() && !needs_sink; ++q)
        needs_sink = d.trans[q].size() < m;
    if (!needs_sink && d.num_states() > 0) return d;
    Dfa out = d;
    if (out.num_states() == 0) out.add_state(false);
    State sink = out.add_state(false);
    for (State q = 0; q < out.num_states(); ++q)
        for (Sym a = 0; a < m; ++a)
            if (out.next(q, a) == kNoState) out.add_edge(q, a, sink);
    return out;
}

namespace detail {

// Hopcroft partition refinement on a complete DFA.  Returns the block id of
// every state.
inline std::vector<State> hopcroft_partition(const Dfa& d) {
    const State n = d.num_states();
    const Sym m = d.alphabet.size();
    std::vector<std::vector<std::vector<State>>> inv(m, std::vector<std::vector<State>>(n));
    for (State q = 0; q < n; ++q)
        for (auto [sym, r] : d.trans[q]) inv[sym][r].push_back(q);

    std::vector<State> block(n, 0);
    std::vector<std::vector<State>> members(2);
    for (State q = 0; q < n; ++q) {
        block[q] = d.finals[q] ? 1 : 0;
        members[block[q]].push_back(q);
    }
    if (members[1].empty() || members[0].empty()) {
        std::fill(block.begin(), block.end(), 0);
        return block;
    }

    // Worklist variant that requeues both halves of every split; does a bit
    // more work than the smaller-half rule but needs no pending-splitter
    // bookkeeping to stay correct.
    std::deque<std::pair<State, Sym>> work;
    for (Sym a = 0; a < m; ++a) {
        work.emplace_back(0, a);
        work.emplace_back(1, a);
    }
    while (!work.empty()) {
        auto [b, a] = work.front();
        work.pop_front();
        // Preimage of block b under symbol a.
        std::map<State, std::vector<State>> movers;  // old block -> states to split off
        for (State r : members[b])
            for (State q : inv[a][r]) movers[block[q]].push_back(q);
        for (auto& [ob, qs] : movers) {
            if (qs.size() == members[ob].size()) continue;  // no split
            State nb = static_cast<State>(members.size());
            members.emplace_back();
            for (State q : qs) {
                block[q] = nb;
                members[nb].push_back(q);
            }
            std::vector<State> rest;
            rest.reserve(members[ob].size() - qs.size());
            for (State q : members[ob])
                if (block[q] == ob) rest.push_back(q);
            members[ob].swap(rest);
            for (Sym s = 0; s < m; ++s) {
                work.emplace_back(ob, s);
                work.emplace_back(nb, s);
            }
        }
    }
    return block;
}

}  // namespace detail

// Unique minimal trim DFA of the language, canonically numbered.
inline Dfa minimize(const Dfa& d) {
    Dfa t = trim(d);
    Dfa c = complete(t);
    auto block = detail::hopcroft_partition(c);
    State nblocks = *std::max_element(block.begin(), block.end()) + 1;
    Dfa q;
    q.alphabet = d.alphabet;
    for (State b = 0; b < nblocks; ++b) q.add_state(false);
    for (State s = 0; s < c.num_states(); ++s) {
        if (c.finals[s]) q.finals[block[s]] = true;
        for (auto [sym, r] : c.trans[s]) q.add_edge(block[s], sym, block[r]);
    }
    q.start = block[c.start];
    return trim(q);
}

inline Dfa complement(const Dfa& d) {
    Dfa c = complete(d);
    for (State q = 0; q < c.num_states(); ++q) c.finals[q] = !c.finals[q];
    return minimize(c);
}

namespace detail {

// Product over implicitly completed machines; sink encoded as kNoState.
template <typename KeepFinal>
Dfa product(const Dfa& a, const Dfa& b, KeepFinal&& keep_final) {
    if (a.alphabet != b.alphabet) throw std::invalid_argument("alphabet mismatch");
    const Sym m = a.alphabet.size();
    std::map<std::pair<State, State>, State> seen;
    Dfa out;
    out.alphabet = a.alphabet;
    std::deque<std::pair<State, State>> queue;
    auto intern = [&](State qa, State qb) {
        auto [it, fresh] = seen.try_emplace({qa, qb}, static_cast<State>(seen.size()));
        if (fresh) {
            bool fa = qa != kNoState && a.finals[qa];
            bool fb = qb != kNoState && b.finals[qb];
            out.add_state(keep_final(fa, fb));
            queue.emplace_back(qa, qb);
        }
        return it->second;
    };
    out.start = intern(a.start, b.start);
    while (!queue.empty()) {
        auto [qa, qb] = queue.front();
        queue.pop_front();
        State src = seen.at({qa, qb});
        for (Sym s = 0; s < m; ++s) {
            State ra = qa == kNoState ? kNoState : a.next(qa, s);
            State rb = qb == kNoState ? kNoState : b.next(qb, s);
            if (ra == kNoState && rb == kNoState) continue;
            out.add_edge(src, s, intern(ra, rb));
        }
    }
    return out;
}

}  // namespace detail

enum class BoolOp { Union, Intersection, Difference, Complement };

inline Dfa boolean_combine(BoolOp op, const Dfa& a, const Dfa* b = nullptr) {
    switch (op) {
        case BoolOp::Complement:
            if (b) throw std::invalid_argument("complement takes one operand");
            return complement(a);
        case BoolOp::Union:
            if (!b) throw std::invalid_argument("union takes two operands");
            return minimize(detail::product(a, *b, [](bool x, bool y) { return x || y; }));
        case BoolOp::Intersection:
            if (!b) throw std::invalid_argument("intersection takes two operands");
            return minimize(detail::product(a, *b, [](bool x, bool y) { return x && y; }));
        case BoolOp::Difference:
            if (!b) throw std::invalid_argument("difference takes two operands");
            return minimize(detail::product(a, *b, [](bool x, bool y) { return x && !y; }));
    }
    throw std::logic_error("unreachable");
}

inline Dfa intersect(const Dfa& a, const Dfa& b) { return boolean_combine(BoolOp::Intersection, a, &b); }
inline Dfa unite(const Dfa& a, const Dfa& b) { return boolean_combine(BoolOp::Union, a, &b); }
inline Dfa difference(const Dfa& a, const Dfa& b) { return boolean_combine(BoolOp::Difference, a, &b); }

inline bool is_empty_language(const Dfa& d) {
    std::deque<State> queue{d.start};
    std::vector<bool> seen(d.num_states(), false);
    seen[d.start] = true;
    while (!queue.empty()) {
        State q = queue.front();
        queue.pop_front();
        if (d.finals[q]) return false;
        for (auto [sym, r] : d.trans[q])
            if (!seen[r]) {
                seen[r] = true;
                queue.push_back(r);
            }
    }
    return true;
}

// True iff L(a) is a subset of L(b); BFS over the pair graph with implicit
// sinks, looking for a state accepting in a but not in b.
inline bool language_subset(const Dfa& a, const Dfa& b) {
    if (a.alphabet != b.alphabet) throw std::invalid_argument("alphabet mismatch");
    const Sym m = a.alphabet.size();
    std::map<std::pair<State, State>, bool> seen;
    std::deque<std::pair<State, State>> queue;
    queue.emplace_back(a.start, b.start);
    seen[{a.start, b.start}] = true;
    while (!queue.empty()) {
        auto [qa, qb] = queue.front();
        queue.pop_front();
        if (a.finals[qa] && (qb == kNoState || !b.finals[qb])) return false;
        for (Sym s = 0; s < m; ++s) {
            State ra = a.next(qa, s);
            if (ra == kNoState) continue;  // strings leaving a's domain are not in L(a)
            State rb = qb == kNoState ? kNoState : b.next(qb, s);
            if (!seen.emplace(std::make_pair(ra, rb), true).second) continue;
            queue.emplace_back(ra, rb);
        }
    }
    return true;
}

// Symmetric-difference emptiness.
inline bool language_equal(const Dfa& a, const Dfa& b) {
    return language_subset(a, b) && language_subset(b, a);
}

// Shortest word in exactly one of the two languages, as a counterexample
// for diagnostics; empty optional when the languages are equal.
inline std::optional<Word> separating_word(const Dfa& a, const Dfa& b) {
    if (a.alphabet != b.alphabet) throw std::invalid_argument("alphabet mismatch");
    const Sym m = a.alphabet.size();
    std::map<std::pair<State, State>, std::pair<std::pair<State, State>, Sym>> parent;
    std::deque<std::pair<State, State>> queue;
    auto differs = [&](State qa, State qb) {
        bool fa = qa != kNoState && a.finals[qa];
        bool fb = qb != kNoState && b.finals[qb];
        return fa != fb;
    };
    std::pair<State, State> root{a.start, b.start};
    parent[root] = {root, kEpsilon};
    queue.push_back(root);
    while (!queue.empty()) {
        auto cur = queue.front();
        queue.pop_front();
        if (differs(cur.first, cur.second)) {
            Word w;
            for (auto node = cur; parent.at(node).second != kEpsilon; node = parent.at(node).first)
                w.push_back(parent.at(node).second);
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (Sym s = 0; s < m; ++s) {
            State ra = cur.first == kNoState ? kNoState : a.next(cur.first, s);
            State rb = cur.second == kNoState ? kNoState : b.next(cur.second, s);
            if (ra == kNoState && rb == kNoState) continue;
            std::pair<State, State> nxt{ra, rb};
            if (parent.count(nxt)) continue;
            parent[nxt] = {cur, s};
            queue.push_back(nxt);
        }
    }
    return std::nullopt;
}

// Exact number of strings of the given length, by layered dynamic
// programming.  Counts overflow 64 bits at benchmark lengths, hence the
// arbitrary-precision result.
inline BigInt count_length(const Dfa& d, std::size_t len) {
    std::vector<BigInt> cur(d.num_states());
    for (State q = 0; q < d.num_states(); ++q) cur[q] = d.finals[q] ? 1 : 0;
    for (std::size_t i = 0; i < len; ++i) {
        std::vector<BigInt> nxt(d.num_states());
        for (State q = 0; q < d.num_states(); ++q) {
            BigInt acc = 0;
            for (auto [sym, r] : d.trans[q]) acc += cur[r];
            nxt[q] = std::move(acc);
        }
        cur = std::move(nxt);
    }
    return cur[d.start];
}

// Stable text encoding of the machine; equal canonical machines encode
// identically, which backs checksums and substream derivation.
inline std::string canonical_encoding(const Dfa& d) {
    std::string out = "dfa v1\nsigma";
    for (auto& s : d.alphabet.symbols()) {
        out += ' ';
        out += s;
    }
    out += "\nstart " + std::to_string(d.start) + "\n";
    for (State q = 0; q < d.num_states(); ++q)
        for (auto [sym, r] : d.trans[q])
            out += std::to_string(q) + " " + std::to_string(sym) + " " + std::to_string(r) + "\n";
    out += "finals";
    for (State q = 0; q < d.num_states(); ++q)
        if (d.finals[q]) out += ' ' + std::to_string(q);
    out += "\n";
    return out;
}

inline bool identical(const Dfa& a, const Dfa& b) {
    return a.start == b.start && a.trans == b.trans && a.finals == b.finals &&
           a.alphabet == b.alphabet;
}

}  // namespace subreg
