#pragma once

#include "subreg/classify.hpp"
#include "subreg/prng.hpp"

namespace subreg {

// Random automaton model: fixed start state 0, each state accepting with
// probability p_f, and for every symbol and ordered state pair an edge with
// probability p_e.  The sample is generally nondeterministic; classification
// happens after determinization and minimization.
struct RandomDfaParams {
    int states = 1;
    int symbols = 1;
    double edge_prob = 0.5;
    double final_prob = 0.5;
};

inline Nfa generate_random_automaton(const RandomDfaParams& p, Prng& rng) {
    if (p.states < 1 || p.symbols < 1 || p.symbols > 64)
        throw std::invalid_argument("need states >= 1 and 1 <= symbols <= 64");
    if (p.edge_prob < 0 || p.edge_prob > 1 || p.final_prob < 0 || p.final_prob > 1)
        throw std::invalid_argument("probabilities must be in [0,1]");
    Nfa n;
    n.alphabet = alphabet_prefix(p.symbols);
    for (int q = 0; q < p.states; ++q) n.add_state(rng.bernoulli(p.final_prob));
    n.starts = {0};
    for (Sym a = 0; a < static_cast<Sym>(p.symbols); ++a)
        for (int q = 0; q < p.states; ++q)
            for (int r = 0; r < p.states; ++r)
                if (rng.bernoulli(p.edge_prob)) n.add_edge(q, a, r);
    return n;
}

struct GridCell {
    RandomDfaParams params;
    int trials = 0;
    int sl_count = 0;
};

// Per-cell substreams make cells independent and the grid reproducible.
inline GridCell run_cell(const RandomDfaParams& p, int trials, std::uint64_t seed) {
    char tag[128];
    std::snprintf(tag, sizeof tag, "randdfa/n=%d/s=%d/pe=%.6f/pf=%.6f", p.states, p.symbols,
                  p.edge_prob, p.final_prob);
    Prng rng = Prng(seed).derive(tag);
    GridCell cell{p, trials, 0};
    for (int t = 0; t < trials; ++t) {
        Nfa n = generate_random_automaton(p, rng);
        Dfa d = determinize_minimize(n);
        if (is_strictly_local(d)) ++cell.sl_count;
    }
    return cell;
}

inline std::string grid_csv_header() { return "n,s,p_e,p_f,trials,sl_count\n"; }

inline std::string grid_csv_row(const GridCell& c) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d,%d,%g,%g,%d,%d\n", c.params.states, c.params.symbols,
                  c.params.edge_prob, c.params.final_prob, c.trials, c.sl_count);
    return buf;
}

}  // namespace subreg
