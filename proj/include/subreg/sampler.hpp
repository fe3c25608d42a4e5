#pragma once

#include <span>
#include <unordered_map>

#include "subreg/dfa.hpp"
#include "subreg/fst.hpp"
#include "subreg/prng.hpp"

namespace subreg {

// Exclusion structure for sampling without replacement.  Holds the carved
// set as a trie with per-node counts of excluded completions, so a walk can
// subtract exclusions from the automaton's path counts in O(1) per edge.
template <typename SymT>
class ExcludeTrie {
public:
    static constexpr std::uint32_t kNil = ~std::uint32_t{0};

    // Root collapses to kNil while the trie is empty; a kNil node means "no
    // exclusion reachable from here".
    std::uint32_t root() const { return nodes_[0].below == 0 ? kNil : 0; }

    std::uint32_t child(std::uint32_t node, SymT s) const {
        if (node == kNil) return kNil;
        const auto& kids = nodes_[node].kids;
        auto it = std::lower_bound(kids.begin(), kids.end(), s,
                                   [](const auto& p, SymT v) { return p.first < v; });
        if (it == kids.end() || it->first != s) return kNil;
        return it->second;
    }

    std::uint64_t excluded_below(std::uint32_t node) const {
        return node == kNil ? 0 : nodes_[node].below;
    }

    bool terminal(std::uint32_t node) const { return node != kNil && nodes_[node].terminal; }

    bool contains(std::span<const SymT> w) const {
        std::uint32_t n = root();
        for (SymT s : w) {
            n = child(n, s);
            if (n == kNil) return false;
        }
        return terminal(n);
    }

    // Returns false when the word was already present.
    bool insert(std::span<const SymT> w) {
        if (contains(w)) return false;
        std::uint32_t n = 0;
        ++nodes_[0].below;
        for (SymT s : w) {
            std::uint32_t c = child_raw(n, s);
            if (c == kNil) {
                c = static_cast<std::uint32_t>(nodes_.size());
                nodes_.emplace_back();
                auto& kids = nodes_[n].kids;
                auto it = std::lower_bound(kids.begin(), kids.end(), s,
                                           [](const auto& p, SymT v) { return p.first < v; });
                kids.insert(it, {s, c});
            }
            ++nodes_[c].below;
            n = c;
        }
        nodes_[n].terminal = true;
        return true;
    }

    std::uint64_t size() const { return nodes_[0].below; }

private:
    std::uint32_t child_raw(std::uint32_t node, SymT s) const {
        const auto& kids = nodes_[node].kids;
        auto it = std::lower_bound(kids.begin(), kids.end(), s,
                                   [](const auto& p, SymT v) { return p.first < v; });
        if (it == kids.end() || it->first != s) return kNil;
        return it->second;
    }

    struct Node {
        std::vector<std::pair<SymT, std::uint32_t>> kids;
        std::uint64_t below = 0;
        bool terminal = false;
    };
    std::vector<Node> nodes_{1};
};

// c[r][q] = number of accepted strings of length r starting from state q.
struct LayerCounts {
    std::vector<std::vector<BigInt>> c;

    static LayerCounts build(const Dfa& d, std::size_t max_len) {
        LayerCounts lc;
        lc.c.resize(max_len + 1);
        lc.c[0].resize(d.num_states());
        for (State q = 0; q < d.num_states(); ++q) lc.c[0][q] = d.finals[q] ? 1 : 0;
        for (std::size_t r = 1; r <= max_len; ++r) {
            lc.c[r].resize(d.num_states());
            for (State q = 0; q < d.num_states(); ++q) {
                BigInt acc = 0;
                for (auto [sym, t] : d.trans[q]) acc += lc.c[r - 1][t];
                lc.c[r][q] = std::move(acc);
            }
        }
        return lc;
    }

    const BigInt& at(std::size_t r, State q) const { return c[r][q]; }
};

// Fixed-length sampler over L ∩ Σ^len with an exclusion set carved out.
// A draw walks the trimmed carved machine picking uniformly among outbound
// edges that still lead to some remaining string, so the probability of a
// word is the product of 1/outdegree along its path in the carved machine.
// Every excluded word is a member of the layer (carving a non-member is a
// no-op), which keeps the remaining count through an edge exact: the layer
// count minus the exclusions under the matching trie node.
class CarvedSampler {
public:
    CarvedSampler(const Dfa& dfa, const LayerCounts& counts, std::size_t length)
        : dfa_(&dfa), counts_(&counts), len_(length) {}

    BigInt remaining() const {
        BigInt total = counts_->at(len_, dfa_->start);
        return total - BigInt(trie_.excluded_below(trie_.root()));
    }

    bool in_carved(const Word& w) const {
        if (w.size() != len_) return false;
        if (!accepts(*dfa_, w)) return false;
        return !trie_.contains(std::span<const Sym>(w));
    }

    // Carve one word out; returns false when it was not in the carved
    // language (already carved, wrong length, or not a member).
    bool exclude(const Word& w) {
        if (!in_carved(w)) return false;
        return trie_.insert(std::span<const Sym>(w));
    }

    // One draw from the carved machine; the carved language must be
    // nonempty.  Does not modify state (sampling with replacement).
    Word sample(Prng& rng) const {
        if (remaining() <= 0) throw std::runtime_error("carved language exhausted at this length");
        Word w;
        w.reserve(len_);
        State q = dfa_->start;
        std::uint32_t node = trie_.root();
        for (std::size_t i = 0; i < len_; ++i) {
            const std::size_t r = len_ - i - 1;
            Sym viable[64];
            std::size_t nviable = 0;
            std::vector<Sym> overflow;
            for (auto [sym, t] : dfa_->trans[q]) {
                const BigInt& total = counts_->at(r, t);
                if (total == 0) continue;
                std::uint64_t ex = trie_.excluded_below(trie_.child(node, sym));
                if (ex != 0 && total <= BigInt(ex)) continue;
                if (nviable < 64)
                    viable[nviable++] = sym;
                else
                    overflow.push_back(sym);
            }
            std::size_t count = nviable + overflow.size();
            if (count == 0) throw std::logic_error("carved walk hit a dead end");
            std::size_t pick = static_cast<std::size_t>(rng.below(count));
            Sym sym = pick < nviable ? viable[pick] : overflow[pick - nviable];
            w.push_back(sym);
            node = trie_.child(node, sym);
            q = dfa_->next(q, sym);
        }
        return w;
    }

    Word sample_without_replacement(Prng& rng) {
        Word w = sample(rng);
        trie_.insert(std::span<const Sym>(w));
        return w;
    }

    std::size_t length() const { return len_; }

private:
    const Dfa* dfa_;
    const LayerCounts* counts_;
    std::size_t len_;
    ExcludeTrie<Sym> trie_;
};

// ---------------------------------------------------------------------------
// Adversarial pair sampling: uniform-outbound-edge walks over the trimmed
// composition  (L ∩ Σ^len minus excluded positives) ∘ edit1 ∘ (complement
// minus excluded negatives),  with drawn pairs carved out for uniqueness.
// The edit transducer's canonical alignments make paths biject with pairs,
// so carving a drawn path removes exactly the drawn pair.
//
// States that have diverged from both exclusion tries cannot reach an
// excluded completion, so their path counts depend only on the small base
// tuple (consumed, qa, qt, qc).  Those are tabulated once; only states
// still tracking a trie node are interned and memoized, which keeps memory
// proportional to the exclusion tries rather than to their product with
// the machine.
class PairSampler {
public:
    PairSampler(const Dfa& lang, const Dfa& comp, const Fst& edit, std::size_t length,
                const ExcludeTrie<Sym>& excluded_x, const ExcludeTrie<Sym>& excluded_y)
        : lang_(&lang), comp_(&comp), edit_(&edit), len_(length), ex_x_(&excluded_x), ex_y_(&excluded_y) {
        build_base();
    }

    BigInt remaining() {
        return walk_count(start_state()) - BigInt(pair_trie_.excluded_below(pair_trie_.root()));
    }

    // Draws one pair (positive x, negative y) and carves it.
    std::pair<Word, Word> sample_and_carve(Prng& rng) {
        WalkState s = start_state();
        if (walk_count(s) - BigInt(pair_trie_.excluded_below(pair_trie_.root())) <= 0)
            throw std::runtime_error("pair language exhausted at this length");
        std::vector<std::uint64_t> labels;
        Word x, y;
        std::uint32_t node = pair_trie_.root();
        while (!walk_accepting(s)) {
            struct Cand {
                std::uint64_t label;
                WalkState dst;
            };
            std::vector<Cand> viable;
            viable.reserve(8);
            for_each_edge(s, [&](std::uint64_t label, const WalkState& dst) {
                BigInt left = walk_count_const(dst) -
                              BigInt(pair_trie_.excluded_below(pair_trie_.child(node, label)));
                if (left > 0) viable.push_back({label, dst});
            });
            if (viable.empty()) throw std::logic_error("pair walk hit a dead end");
            const Cand& pickc = viable[static_cast<std::size_t>(rng.below(viable.size()))];
            labels.push_back(pickc.label);
            Sym in = decode_in(pickc.label), out = decode_out(pickc.label);
            if (in != kEpsilon) x.push_back(in);
            if (out != kEpsilon) y.push_back(out);
            node = pair_trie_.child(node, pickc.label);
            s = pickc.dst;
        }
        pair_trie_.insert(std::span<const std::uint64_t>(labels));
        return {std::move(x), std::move(y)};
    }

    std::size_t length() const { return len_; }

private:
    struct Tuple {
        std::uint32_t consumed;
        State qa, qt, qc;
        bool operator==(const Tuple&) const = default;
    };
    struct WalkState {
        Tuple t;
        std::uint32_t na = ExcludeTrie<Sym>::kNil;
        std::uint32_t nc = ExcludeTrie<Sym>::kNil;
        bool pure() const {
            return na == ExcludeTrie<Sym>::kNil && nc == ExcludeTrie<Sym>::kNil;
        }
    };
    struct ActiveKey {
        std::uint64_t lo, hi;
        bool operator==(const ActiveKey&) const = default;
    };
    struct ActiveKeyHash {
        std::size_t operator()(const ActiveKey& k) const {
            std::uint64_t h = k.lo * 0x9e3779b97f4a7c15ULL;
            h ^= (k.hi * 0xff51afd7ed558ccdULL) + (h << 6) + (h >> 2);
            return static_cast<std::size_t>(h);
        }
    };

    static std::uint64_t encode(Sym in, Sym out) {
        auto e = [](Sym s) { return s == kEpsilon ? std::uint64_t{0} : std::uint64_t{s} + 1; };
        return (e(in) << 32) | e(out);
    }
    static Sym decode_in(std::uint64_t label) {
        std::uint64_t v = label >> 32;
        return v == 0 ? kEpsilon : static_cast<Sym>(v - 1);
    }
    static Sym decode_out(std::uint64_t label) {
        std::uint64_t v = label & 0xffffffffu;
        return v == 0 ? kEpsilon : static_cast<Sym>(v - 1);
    }

    WalkState start_state() const {
        WalkState s;
        s.t = {0, lang_->start, edit_->start, comp_->start};
        s.na = ex_x_->root();
        s.nc = ex_y_->root();
        return s;
    }

    // ---- base machine over tuples, built eagerly (it is small) ----

    std::size_t base_id(const Tuple& t) const {
        std::uint64_t key = pack_tuple(t);
        auto it = base_index_.find(key);
        if (it == base_index_.end()) throw std::logic_error("tuple outside base machine");
        return it->second;
    }

    static std::uint64_t pack_tuple(const Tuple& t) {
        return (std::uint64_t(t.consumed) << 48) | (std::uint64_t(t.qa) << 32) |
               (std::uint64_t(t.qt) << 16) | std::uint64_t(t.qc);
    }

    bool tuple_accepting(const Tuple& t) const {
        return t.consumed == len_ && lang_->finals[t.qa] && edit_->finals[t.qt] &&
               comp_->finals[t.qc];
    }

    template <typename Fn>
    void for_each_tuple_edge(const Tuple& t, Fn&& fn) const {
        for (const auto& arc : edit_->arcs[t.qt]) {
            Tuple n = t;
            n.qt = arc.dst;
            if (arc.in != kEpsilon) {
                if (t.consumed >= len_) continue;
                State qa = lang_->next(t.qa, arc.in);
                if (qa == kNoState) continue;
                n.qa = qa;
                n.consumed = t.consumed + 1;
            }
            if (arc.out != kEpsilon) {
                State qc = comp_->next(t.qc, arc.out);
                if (qc == kNoState) continue;
                n.qc = qc;
            }
            fn(encode(arc.in, arc.out), n);
        }
    }

    void build_base() {
        Tuple start{0, lang_->start, edit_->start, comp_->start};
        base_index_.emplace(pack_tuple(start), 0);
        base_tuples_.push_back(start);
        for (std::size_t i = 0; i < base_tuples_.size(); ++i) {
            Tuple t = base_tuples_[i];
            for_each_tuple_edge(t, [&](std::uint64_t, const Tuple& n) {
                auto [it, fresh] = base_index_.try_emplace(pack_tuple(n), base_tuples_.size());
                if (fresh) base_tuples_.push_back(n);
            });
        }
        base_counts_.assign(base_tuples_.size(), BigInt(-1));
        for (std::size_t i = 0; i < base_tuples_.size(); ++i) base_count(i);
    }

    const BigInt& base_count(std::size_t id) {
        if (base_counts_[id] >= 0) return base_counts_[id];
        const Tuple& t = base_tuples_[id];
        BigInt acc = tuple_accepting(t) ? 1 : 0;
        for_each_tuple_edge(t, [&](std::uint64_t, const Tuple& n) { acc += base_count(base_id(n)); });
        base_counts_[id] = std::move(acc);
        return base_counts_[id];
    }

    // ---- trie-tracking states, interned lazily ----

    template <typename Fn>
    void for_each_edge(const WalkState& s, Fn&& fn) const {
        for (const auto& arc : edit_->arcs[s.t.qt]) {
            WalkState n = s;
            n.t.qt = arc.dst;
            if (arc.in != kEpsilon) {
                if (s.t.consumed >= len_) continue;
                State qa = lang_->next(s.t.qa, arc.in);
                if (qa == kNoState) continue;
                n.t.qa = qa;
                n.t.consumed = s.t.consumed + 1;
                n.na = ex_x_->child(s.na, arc.in);
            }
            if (arc.out != kEpsilon) {
                State qc = comp_->next(s.t.qc, arc.out);
                if (qc == kNoState) continue;
                n.nc = ex_y_->child(s.nc, arc.out);
            }
            fn(encode(arc.in, arc.out), n);
        }
    }

    bool walk_accepting(const WalkState& s) const {
        return tuple_accepting(s.t) && !ex_x_->terminal(s.na) && !ex_y_->terminal(s.nc);
    }

    BigInt walk_count(const WalkState& s) {
        if (s.pure()) return base_count(base_id(s.t));
        ActiveKey key{pack_tuple(s.t), (std::uint64_t(s.na) << 32) | std::uint64_t(s.nc)};
        auto it = active_counts_.find(key);
        if (it != active_counts_.end()) return it->second;
        BigInt acc = walk_accepting(s) ? 1 : 0;
        for_each_edge(s, [&](std::uint64_t, const WalkState& n) { acc += walk_count(n); });
        auto [ins, fresh] = active_counts_.emplace(key, std::move(acc));
        return ins->second;
    }

    // The const variant used during walks; every state reachable from the
    // start has been counted already by the remaining() call.
    BigInt walk_count_const(const WalkState& s) {
        return walk_count(s);
    }

    const Dfa* lang_;
    const Dfa* comp_;
    const Fst* edit_;
    std::size_t len_;
    const ExcludeTrie<Sym>* ex_x_;
    const ExcludeTrie<Sym>* ex_y_;

    std::unordered_map<std::uint64_t, std::size_t> base_index_;
    std::vector<Tuple> base_tuples_;
    std::vector<BigInt> base_counts_;
    std::unordered_map<ActiveKey, BigInt, ActiveKeyHash> active_counts_;
    ExcludeTrie<std::uint64_t> pair_trie_;
};

}  // namespace subreg
