#pragma once

#include <array>
#include <memory>
#include <optional>
#include <set>

#include "subreg/fst.hpp"
#include "subreg/labels.hpp"
#include "subreg/semigroup.hpp"

namespace subreg {

// Proper-subset DAG over the 16 classes; edge X -> Y means Y is a proper
// subset of X.
class Hierarchy {
public:
    Hierarchy() {
        auto edge = [&](ClassLabel x, ClassLabel y) {
            adj_[idx(x)].push_back(y);
        };
        edge(ClassLabel::Reg, ClassLabel::Zp);
        edge(ClassLabel::Reg, ClassLabel::SF);
        edge(ClassLabel::SF, ClassLabel::TPLT);
        edge(ClassLabel::TPLT, ClassLabel::PLT);
        edge(ClassLabel::TPLT, ClassLabel::TLTT);
        edge(ClassLabel::PLT, ClassLabel::LTT);
        edge(ClassLabel::PLT, ClassLabel::PT);
        edge(ClassLabel::TLTT, ClassLabel::LTT);
        edge(ClassLabel::TLTT, ClassLabel::TLT);
        edge(ClassLabel::LTT, ClassLabel::LT);
        edge(ClassLabel::TLT, ClassLabel::LT);
        edge(ClassLabel::TLT, ClassLabel::TSL);
        edge(ClassLabel::TLT, ClassLabel::TcoSL);
        edge(ClassLabel::LT, ClassLabel::SL);
        edge(ClassLabel::LT, ClassLabel::coSL);
        edge(ClassLabel::PT, ClassLabel::SP);
        edge(ClassLabel::PT, ClassLabel::coSP);
        edge(ClassLabel::TSL, ClassLabel::SL);
        edge(ClassLabel::TcoSL, ClassLabel::coSL);
        // reachability closure
        for (std::size_t x = 0; x < kNumClasses; ++x) {
            std::vector<ClassLabel> stack(adj_[x].begin(), adj_[x].end());
            while (!stack.empty()) {
                ClassLabel y = stack.back();
                stack.pop_back();
                if (below_[x][idx(y)]) continue;
                below_[x][idx(y)] = true;
                for (ClassLabel z : adj_[idx(y)]) stack.push_back(z);
            }
        }
    }

    // True iff x is a proper subclass of y.
    bool strictly_below(ClassLabel x, ClassLabel y) const { return below_[idx(y)][idx(x)]; }

    const std::vector<ClassLabel>& children(ClassLabel x) const { return adj_[idx(x)]; }

private:
    static std::size_t idx(ClassLabel c) { return static_cast<std::size_t>(c); }
    std::array<std::vector<ClassLabel>, kNumClasses> adj_;
    std::array<std::array<bool, kNumClasses>, kNumClasses> below_{};
};

inline const Hierarchy& hierarchy() {
    static const Hierarchy h;
    return h;
}

struct MembershipVector {
    std::array<bool, kNumClasses> member{};

    bool operator[](ClassLabel c) const { return member[static_cast<std::size_t>(c)]; }
    bool& operator[](ClassLabel c) { return member[static_cast<std::size_t>(c)]; }

    bool upward_closed(const Hierarchy& h) const {
        for (ClassLabel x : kAllClasses)
            for (ClassLabel y : kAllClasses)
                if (h.strictly_below(x, y) && (*this)[x] && !(*this)[y]) return false;
        return true;
    }
};

// Strict locality of a minimal trim DFA: no pair of distinct states may lie
// on a cycle of the pair graph (a shared loop label would let an unbounded
// context distinguish two states).
inline bool is_strictly_local(const Dfa& dfa) {
    Dfa d = minimize(dfa);
    const State n = d.num_states();
    if (n <= 1) return true;
    auto pair_id = [n](State p, State q) { return static_cast<std::size_t>(p) * n + q; };
    // build edges between live pairs (p < q normalized: the pair graph is
    // symmetric, ordered pairs double the work but keep indexing trivial)
    std::vector<std::vector<std::size_t>> adj(static_cast<std::size_t>(n) * n);
    for (State p = 0; p < n; ++p) {
        for (State q = 0; q < n; ++q) {
            if (p == q) continue;
            for (auto [sym, rp] : d.trans[p]) {
                State rq = d.next(q, sym);
                if (rq == kNoState || rp == rq) continue;
                adj[pair_id(p, q)].push_back(pair_id(rp, rq));
            }
        }
    }
    // cycle detection by iterative DFS coloring
    std::vector<unsigned char> color(adj.size(), 0);  // 0 new, 1 active, 2 done
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    for (std::size_t s = 0; s < adj.size(); ++s) {
        if (color[s] != 0) continue;
        stack.push_back({s, 0});
        color[s] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < adj[v].size()) {
                std::size_t w = adj[v][i++];
                if (color[w] == 1) return false;  // cycle
                if (color[w] == 0) {
                    color[w] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                color[v] = 2;
                stack.pop_back();
            }
        }
    }
    return true;
}

// Closure under single-symbol deletion: an epsilon twin of every transition
// realizes the subsequence closure, which must stay inside L.
inline bool is_subsequence_closed(const Dfa& dfa) {
    Nfa n = to_nfa(dfa);
    for (State q = 0; q < dfa.num_states(); ++q)
        for (auto [sym, r] : dfa.trans[q]) n.add_edge(q, kEpsilon, r);
    Dfa closure = determinize_minimize(n);
    return language_subset(closure, dfa);
}

// Symbols whose insertion and deletion anywhere never changes membership.
inline std::set<Sym> neutral_symbols(const Dfa& dfa) {
    Dfa d = minimize(dfa);
    std::set<Sym> out;
    for (Sym a = 0; a < d.alphabet.size(); ++a) {
        Dfa ins = apply(insdel_transducer(InsDel::Insert, a, d.alphabet), d, ApplyDir::Image);
        if (!language_subset(ins, d)) continue;
        Dfa del = apply(insdel_transducer(InsDel::Delete, a, d.alphabet), d, ApplyDir::Image);
        if (!language_subset(del, d)) continue;
        out.insert(a);
    }
    return out;
}

// One language's classification session: the minimal DFA, its complement,
// the syntactic semigroup, and the inferred tier are each computed at most
// once, because monoid construction dominates everything else.
class Classifier {
public:
    explicit Classifier(const Dfa& language) : dfa_(minimize(language)) {}

    const Dfa& dfa() const { return dfa_; }

    const TransformationSemigroup& semigroup() const {
        if (!semigroup_) semigroup_ = std::make_shared<TransformationSemigroup>(syntactic_semigroup(dfa_));
        return *semigroup_;
    }

    const std::set<Sym>& neutral() const {
        if (!neutral_) neutral_ = std::make_shared<std::set<Sym>>(neutral_symbols(dfa_));
        return *neutral_;
    }

    Classifier& complement_session() const {
        if (!complement_) complement_ = std::make_shared<Classifier>(subreg::complement(dfa_));
        return *complement_;
    }

    // Tier projection onto the non-neutral symbols; valid ("preimage
    // equality") iff L is exactly the preimage of its projection.
    struct TierView {
        bool preimage_equal = false;
        Dfa projection;
    };

    const TierView& tier_view() const {
        if (!tier_) {
            auto tv = std::make_shared<TierView>();
            std::set<Sym> tier;
            for (Sym a = 0; a < dfa_.alphabet.size(); ++a)
                if (!neutral().count(a)) tier.insert(a);
            Fst pi = tier_projection(dfa_.alphabet, tier);
            tv->projection = apply(pi, dfa_, ApplyDir::Image);
            Dfa pre = apply(pi, tv->projection, ApplyDir::Preimage);
            tv->preimage_equal = language_equal(pre, dfa_);
            tier_ = std::move(tv);
        }
        return *tier_;
    }

    Classifier& projection_session() const {
        if (!proj_) proj_ = std::make_shared<Classifier>(tier_view().projection);
        return *proj_;
    }

    bool decide(ClassLabel label) const {
        switch (label) {
            case ClassLabel::Reg: return true;
            case ClassLabel::SL: return is_strictly_local(dfa_);
            case ClassLabel::coSL: return complement_session().decide(ClassLabel::SL);
            case ClassLabel::SP: return is_subsequence_closed(dfa_);
            case ClassLabel::coSP: return complement_session().decide(ClassLabel::SP);
            case ClassLabel::SF: return is_aperiodic(semigroup());
            case ClassLabel::PT: return is_aperiodic(semigroup()) && is_j_trivial(semigroup());
            case ClassLabel::Zp: return group_order_prime(semigroup());
            case ClassLabel::LT:
                return is_aperiodic(semigroup()) && local_submonoid_semilattice(semigroup());
            case ClassLabel::LTT:
                return is_aperiodic(semigroup()) &&
                       satisfies_identity(semigroup(), SemigroupIdentity::LttBeauquierPin);
            case ClassLabel::PLT:
                return is_aperiodic(semigroup()) &&
                       satisfies_identity(semigroup(), SemigroupIdentity::Knast);
            case ClassLabel::TSL:
                return tier_view().preimage_equal && projection_session().decide(ClassLabel::SL);
            case ClassLabel::TcoSL: return complement_session().decide(ClassLabel::TSL);
            case ClassLabel::TLT:
                return tier_view().preimage_equal && projection_session().decide(ClassLabel::LT);
            case ClassLabel::TLTT:
                return tier_view().preimage_equal && projection_session().decide(ClassLabel::LTT);
            case ClassLabel::TPLT:
                return tier_view().preimage_equal && projection_session().decide(ClassLabel::PLT);
        }
        throw std::logic_error("unreachable");
    }

    MembershipVector membership() const {
        MembershipVector v;
        for (ClassLabel c : kAllClasses) v[c] = decide(c);
        return v;
    }

    bool trivial_language() const {
        return is_empty_language(dfa_) || language_equal(dfa_, universal_dfa(dfa_.alphabet));
    }

private:
    Dfa dfa_;
    mutable std::shared_ptr<TransformationSemigroup> semigroup_;
    mutable std::shared_ptr<std::set<Sym>> neutral_;
    mutable std::shared_ptr<Classifier> complement_;
    mutable std::shared_ptr<TierView> tier_;
    mutable std::shared_ptr<Classifier> proj_;
};

inline bool decide_class(ClassLabel label, const Dfa& d) { return Classifier(d).decide(label); }

inline MembershipVector membership_vector(const Dfa& d) { return Classifier(d).membership(); }

// The unique true label all of whose other true labels are strict
// superclasses; none when no label qualifies.
inline std::optional<ClassLabel> representative_of(const MembershipVector& v, const Hierarchy& h) {
    std::optional<ClassLabel> found;
    for (ClassLabel x : kAllClasses) {
        if (!v[x]) continue;
        bool minimal = true;
        for (ClassLabel y : kAllClasses) {
            if (y == x || !v[y]) continue;
            if (!h.strictly_below(x, y)) {
                minimal = false;
                break;
            }
        }
        if (minimal) {
            if (found) return std::nullopt;  // two incomparable minima
            found = x;
        }
    }
    return found;
}

// Language-level entry point.  The empty language and its complement sit in
// every bottom class at once; they are labeled SL by convention.
inline std::optional<ClassLabel> representative_class(const Dfa& d) {
    Classifier c(d);
    if (c.trivial_language()) return ClassLabel::SL;
    return representative_of(c.membership(), hierarchy());
}

}  // namespace subreg
