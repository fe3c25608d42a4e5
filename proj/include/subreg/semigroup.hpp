#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "subreg/dfa.hpp"

namespace subreg {

// Minimal complete DFA: Hopcroft on the completed machine without trimming,
// so the sink merges into its equivalence class.  This is the machine whose
// transformation monoid is the syntactic monoid.
inline Dfa minimize_complete(const Dfa& d) {
    Dfa c = complete(minimize(d));
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
    std::vector<bool> keep(q.num_states(), true);
    return detail::bfs_renumber(q, keep);
}

// Transition semigroup of the minimal complete DFA: the closure of the
// symbol actions under composition.  Elements are total functions on the
// state set, stored as image arrays; element 0.. follow BFS order from the
// generators so construction is deterministic.  The semigroup holds the
// actions of nonempty words; the monoid view adjoins the identity when no
// nonempty word acts as it.
class TransformationSemigroup {
public:
    using Element = std::vector<State>;

    static TransformationSemigroup from_dfa(const Dfa& d) {
        TransformationSemigroup ts;
        Dfa mc = minimize_complete(d);
        ts.domain_ = mc.num_states();
        const Sym m = mc.alphabet.size();
        std::vector<Element> gens(m, Element(ts.domain_));
        for (State q = 0; q < ts.domain_; ++q)
            for (Sym a = 0; a < m; ++a) gens[a][q] = mc.next(q, a);
        for (Sym a = 0; a < m; ++a) ts.generators_.emplace_back(a, ts.intern(gens[a]));
        // BFS closure under right multiplication by generators.
        for (std::size_t i = 0; i < ts.elements_.size(); ++i) {
            for (Sym a = 0; a < m; ++a) {
                Element prod = compose(ts.elements_[i], gens[a]);
                ts.intern(prod);
            }
        }
        Element id(ts.domain_);
        for (State q = 0; q < ts.domain_; ++q) id[q] = q;
        auto it = ts.index_.find(id);
        ts.identity_ = it == ts.index_.end() ? kNone : it->second;
        return ts;
    }

    static Element compose(const Element& first, const Element& then) {
        Element out(first.size());
        for (std::size_t q = 0; q < first.size(); ++q) out[q] = then[first[q]];
        return out;
    }

    std::size_t size() const { return elements_.size(); }
    std::size_t monoid_size() const { return size() + (identity_ == kNone ? 1 : 0); }
    bool identity_in_semigroup() const { return identity_ != kNone; }
    std::size_t identity_index() const { return identity_; }
    State domain() const { return domain_; }
    const std::vector<Element>& elements() const { return elements_; }
    const std::vector<std::pair<Sym, std::size_t>>& generators() const { return generators_; }

    std::size_t index_of(const Element& e) const {
        auto it = index_.find(e);
        if (it == index_.end()) throw std::logic_error("element not in semigroup");
        return it->second;
    }

    std::size_t mul(std::size_t x, std::size_t y) const {
        return index_of(compose(elements_[x], elements_[y]));
    }

    static constexpr std::size_t kNone = ~std::size_t{0};

private:
    std::size_t intern(const Element& e) {
        auto [it, fresh] = index_.try_emplace(e, elements_.size());
        if (fresh) elements_.push_back(e);
        return it->second;
    }

    State domain_ = 0;
    std::vector<Element> elements_;
    std::map<Element, std::size_t> index_;
    std::vector<std::pair<Sym, std::size_t>> generators_;
    std::size_t identity_ = kNone;
};

inline TransformationSemigroup syntactic_semigroup(const Dfa& d) {
    return TransformationSemigroup::from_dfa(d);
}

inline std::vector<std::size_t> idempotents(const TransformationSemigroup& s) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.mul(i, i) == i) out.push_back(i);
    return out;
}

// Unique idempotent power of an element: walk x, x^2, ... to the cycle and
// pick the power divisible by the cycle length.
inline std::size_t omega_power(const TransformationSemigroup& s, std::size_t x) {
    std::map<std::size_t, std::size_t> seen;  // element -> exponent
    std::size_t cur = x, exp = 1;
    while (true) {
        auto [it, fresh] = seen.try_emplace(cur, exp);
        if (!fresh) {
            std::size_t pre = it->second;
            std::size_t period = exp - pre;
            std::size_t target = ((std::max<std::size_t>(pre, 1) + period - 1) / period) * period;
            std::size_t p = x;
            for (std::size_t e = 1; e < target; ++e) p = s.mul(p, x);
            return p;
        }
        cur = s.mul(cur, x);
        ++exp;
    }
}

// m^n = m^(n+1) for some n, for every element: the eventual cycle of each
// power sequence has length one.
inline bool is_aperiodic(const TransformationSemigroup& s) {
    for (std::size_t x = 0; x < s.size(); ++x) {
        std::size_t w = omega_power(s, x);
        if (s.mul(w, x) != w) return false;
    }
    return true;
}

// A finite semigroup is a group iff it has a unique idempotent that acts as
// a two-sided identity.
inline bool is_group(const TransformationSemigroup& s) {
    auto es = idempotents(s);
    if (es.size() != 1) return false;
    std::size_t e = es[0];
    for (std::size_t x = 0; x < s.size(); ++x)
        if (s.mul(e, x) != x || s.mul(x, e) != x) return false;
    return true;
}

inline bool group_order_prime(const TransformationSemigroup& s) {
    if (!is_group(s)) return false;
    std::size_t n = s.size();
    if (n < 2) return false;
    for (std::size_t q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

namespace detail {

// Strongly connected components of the two-sided Cayley graph of the monoid
// (edges x -> gx and x -> xg).  Mutual reachability is exactly Green's
// J-equivalence, so J-triviality is "every component is a singleton".
inline bool monoid_j_trivial(const TransformationSemigroup& s) {
    const bool adjoin = !s.identity_in_semigroup();
    const std::size_t n = s.size() + (adjoin ? 1 : 0);
    const std::size_t id = adjoin ? s.size() : s.identity_index();

    std::vector<std::vector<std::size_t>> adj(n);
    auto mul_ext = [&](std::size_t x, std::size_t y) -> std::size_t {
        if (x == id && adjoin) return y;
        if (y == id && adjoin) return x;
        return s.mul(x >= s.size() ? id : x, y >= s.size() ? id : y);
    };
    for (std::size_t x = 0; x < n; ++x) {
        for (auto [sym, g] : s.generators()) {
            adj[x].push_back(mul_ext(g, x));
            adj[x].push_back(mul_ext(x, g));
        }
    }

    // Iterative Tarjan.
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    int counter = 0;
    struct Frame {
        std::size_t v;
        std::size_t edge;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& f = frames.back();
            if (f.edge < adj[f.v].size()) {
                std::size_t w = adj[f.v][f.edge++];
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                std::size_t v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                if (low[v] == index[v]) {
                    std::size_t count = 0;
                    while (true) {
                        std::size_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        ++count;
                        if (w == v) break;
                    }
                    if (count > 1) return false;
                }
            }
        }
    }
    return true;
}

}  // namespace detail

// Simon: a language is piecewise testable iff its syntactic monoid is
// J-trivial.
inline bool is_j_trivial(const TransformationSemigroup& s) {
    return detail::monoid_j_trivial(s);
}

// For every idempotent e, the local submonoid eSe consists of commuting
// idempotents (locally a semilattice); characterizes local testability.
inline bool local_submonoid_semilattice(const TransformationSemigroup& s) {
    for (std::size_t e : idempotents(s)) {
        std::set<std::size_t> local;
        for (std::size_t x = 0; x < s.size(); ++x)
            local.insert(s.mul(s.mul(e, x), e));
        for (std::size_t u : local) {
            if (s.mul(u, u) != u) return false;
            for (std::size_t v : local)
                if (s.mul(u, v) != s.mul(v, u)) return false;
        }
    }
    return true;
}

enum class SemigroupIdentity { LttBeauquierPin, Knast };

// Evaluates the named identity universally over the finite semigroup.
//
// LttBeauquierPin: S aperiodic and  e x f y e z f  =  e z f y e x f  for all
// idempotents e, f and all x, y, z.  Substituting A = exf, C = ezf in eSf
// gives the equivalent form  A y C = C y A  checked here.
//
// Knast: (e s f t)^w e s f v (e u f v)^w = (e s f t)^w (e u f v)^w for all
// idempotents e, f and s, t, u, v; equivalently, with A = esf, C = euf in
// eSf:  (A t)^w A v (C v)^w = (A t)^w (C v)^w.
inline bool satisfies_identity(const TransformationSemigroup& s, SemigroupIdentity which) {
    auto es = idempotents(s);
    switch (which) {
        case SemigroupIdentity::LttBeauquierPin: {
            if (!is_aperiodic(s)) return false;
            for (std::size_t e : es) {
                for (std::size_t f : es) {
                    std::set<std::size_t> eSf;
                    for (std::size_t x = 0; x < s.size(); ++x)
                        eSf.insert(s.mul(s.mul(e, x), f));
                    for (std::size_t a : eSf)
                        for (std::size_t c : eSf)
                            for (std::size_t y = 0; y < s.size(); ++y)
                                if (s.mul(s.mul(a, y), c) != s.mul(s.mul(c, y), a)) return false;
                }
            }
            return true;
        }
        case SemigroupIdentity::Knast: {
            for (std::size_t e : es) {
                for (std::size_t f : es) {
                    std::set<std::size_t> eSf;
                    for (std::size_t x = 0; x < s.size(); ++x)
                        eSf.insert(s.mul(s.mul(e, x), f));
                    for (std::size_t a : eSf) {
                        for (std::size_t c : eSf) {
                            for (std::size_t t = 0; t < s.size(); ++t) {
                                std::size_t lead = omega_power(s, s.mul(a, t));
                                for (std::size_t v = 0; v < s.size(); ++v) {
                                    std::size_t tailw = omega_power(s, s.mul(c, v));
                                    std::size_t lhs = s.mul(lead, s.mul(s.mul(a, v), tailw));
                                    std::size_t rhs = s.mul(lead, tailw);
                                    if (lhs != rhs) return false;
                                }
                            }
                        }
                    }
                }
            }
            return true;
        }
    }
    throw std::logic_error("unreachable");
}

// Text dump of the structure: sizes, generator map, and elements as
// state-image tuples.
inline std::string semigroup_text(const TransformationSemigroup& s, const Alphabet& alphabet,
                                  State trim_states, State complete_states) {
    std::string out;
    out += "states_trim " + std::to_string(trim_states) + "\n";
    out += "states_complete " + std::to_string(complete_states) + "\n";
    out += "semigroup " + std::to_string(s.size()) + "\n";
    out += "monoid " + std::to_string(s.monoid_size()) + "\n";
    out += std::string("identity_in_semigroup ") + (s.identity_in_semigroup() ? "yes" : "no") + "\n";
    for (auto [sym, idx] : s.generators())
        out += "gen " + alphabet.symbol(sym) + " " + std::to_string(idx) + "\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += "elem " + std::to_string(i) + " :";
        for (State q : s.elements()[i]) out += " " + std::to_string(q);
        out += "\n";
    }
    return out;
}

}  // namespace subreg
