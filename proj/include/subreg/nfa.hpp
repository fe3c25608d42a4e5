#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <vector>

#include "subreg/dfa.hpp"

namespace subreg {

// Nondeterministic acceptor with epsilon moves and multiple start states.
// Intermediate form for expression compilation and closures; consumers
// determinize before doing anything language-theoretic.
struct Nfa {
    Alphabet alphabet;
    std::vector<State> starts;
    std::vector<std::vector<std::pair<Sym, State>>> trans;  // sym may be kEpsilon
    std::vector<bool> finals;

    State num_states() const { return static_cast<State>(trans.size()); }

    State add_state(bool is_final = false) {
        trans.emplace_back();
        finals.push_back(is_final);
        return num_states() - 1;
    }

    void add_edge(State src, Sym sym, State dst) { trans[src].emplace_back(sym, dst); }
};

namespace detail {

inline void eps_close(const Nfa& n, std::set<State>& states) {
    std::deque<State> queue(states.begin(), states.end());
    while (!queue.empty()) {
        State q = queue.front();
        queue.pop_front();
        for (auto [sym, r] : n.trans[q])
            if (sym == kEpsilon && states.insert(r).second) queue.push_back(r);
    }
}

}  // namespace detail

inline bool accepts(const Nfa& n, const Word& w) {
    std::set<State> cur(n.starts.begin(), n.starts.end());
    detail::eps_close(n, cur);
    for (Sym s : w) {
        std::set<State> nxt;
        for (State q : cur)
            for (auto [sym, r] : n.trans[q])
                if (sym == s) nxt.insert(r);
        detail::eps_close(n, nxt);
        cur = std::move(nxt);
        if (cur.empty()) return false;
    }
    for (State q : cur)
        if (n.finals[q]) return true;
    return false;
}

// Subset construction.  The result is not minimized; see
// determinize_minimize for the canonical form.
inline Dfa determinize(const Nfa& n) {
    Dfa d;
    d.alphabet = n.alphabet;
    std::map<std::vector<State>, State> interned;
    std::deque<std::vector<State>> queue;

    auto intern = [&](std::set<State> s) -> State {
        detail::eps_close(n, s);
        std::vector<State> key(s.begin(), s.end());
        auto [it, fresh] = interned.try_emplace(key, d.num_states());
        if (fresh) {
            bool fin = false;
            for (State q : key) fin = fin || n.finals[q];
            d.add_state(fin);
            queue.push_back(key);
        }
        return it->second;
    };

    d.start = intern(std::set<State>(n.starts.begin(), n.starts.end()));
    while (!queue.empty()) {
        auto key = queue.front();
        queue.pop_front();
        State src = interned.at(key);
        std::map<Sym, std::set<State>> bySym;
        for (State q : key)
            for (auto [sym, r] : n.trans[q])
                if (sym != kEpsilon) bySym[sym].insert(r);
        for (auto& [sym, tgt] : bySym) d.add_edge(src, sym, intern(std::move(tgt)));
    }
    return d;
}

inline Dfa determinize_minimize(const Nfa& n) { return minimize(determinize(n)); }
inline Dfa determinize_minimize(const Dfa& d) { return minimize(d); }

inline Nfa to_nfa(const Dfa& d) {
    Nfa n;
    n.alphabet = d.alphabet;
    n.starts = {d.start};
    n.trans.resize(d.num_states());
    n.finals = d.finals;
    for (State q = 0; q < d.num_states(); ++q)
        for (auto [sym, r] : d.trans[q]) n.add_edge(q, sym, r);
    return n;
}

// Minimal DFA of {xy | x in L(a), y in L(b)}.
inline Dfa concat(const Dfa& a, const Dfa& b) {
    if (a.alphabet != b.alphabet) throw std::invalid_argument("alphabet mismatch");
    Nfa n;
    n.alphabet = a.alphabet;
    for (State q = 0; q < a.num_states(); ++q) n.add_state(false);
    State offset = n.num_states();
    for (State q = 0; q < b.num_states(); ++q) n.add_state(b.finals[q]);
    for (State q = 0; q < a.num_states(); ++q)
        for (auto [sym, r] : a.trans[q]) n.add_edge(q, sym, r);
    for (State q = 0; q < b.num_states(); ++q)
        for (auto [sym, r] : b.trans[q]) n.add_edge(offset + q, sym, offset + r);
    for (State q = 0; q < a.num_states(); ++q)
        if (a.finals[q]) n.add_edge(q, kEpsilon, offset + b.start);
    n.starts = {a.start};
    return determinize_minimize(n);
}

}  // namespace subreg
