#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "subreg/fst.hpp"

namespace subreg {

// ATT text format.  One transition per line, tab-separated:
//   acceptors:    src <TAB> dst <TAB> sym
//   transducers:  src <TAB> dst <TAB> isym <TAB> osym
// Final states follow, one bare state id per line.  The source state of the
// first transition line is the start state (machines written here are
// canonically numbered, so that is state 0).  The accompanying symbol table
// maps symbol strings to integer ids, with 0 reserved for epsilon.

inline constexpr const char* kEpsilonName = "<eps>";

inline std::string symtab_text(const Alphabet& a) {
    std::string out = std::string(kEpsilonName) + "\t0\n";
    for (Sym i = 0; i < a.size(); ++i)
        out += a.symbol(i) + "\t" + std::to_string(i + 1) + "\n";
    return out;
}

inline std::string att_text(const Dfa& d) {
    std::string out;
    for (State q = 0; q < d.num_states(); ++q)
        for (auto [sym, r] : d.trans[q])
            out += std::to_string(q) + "\t" + std::to_string(r) + "\t" + d.alphabet.symbol(sym) + "\n";
    for (State q = 0; q < d.num_states(); ++q)
        if (d.finals[q]) out += std::to_string(q) + "\n";
    return out;
}

inline std::string att_text(const Fst& t) {
    auto name = [](const Alphabet& a, Sym s) {
        return s == kEpsilon ? std::string(kEpsilonName) : a.symbol(s);
    };
    std::string out;
    for (State q = 0; q < t.num_states(); ++q)
        for (const auto& arc : t.arcs[q])
            out += std::to_string(q) + "\t" + std::to_string(arc.dst) + "\t" +
                   name(t.input, arc.in) + "\t" + name(t.output, arc.out) + "\n";
    for (State q = 0; q < t.num_states(); ++q)
        if (t.finals[q]) out += std::to_string(q) + "\n";
    return out;
}

namespace detail {

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        std::size_t tab = line.find('\t', pos);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
    return fields;
}

inline std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

}  // namespace detail

// Parses acceptor ATT text.  The alphabet is taken from the symbol table
// when given, otherwise collected from the transition lines in order of
// first appearance.
inline Dfa parse_att_acceptor(const std::string& text, const Alphabet* symtab = nullptr) {
    Dfa d;
    std::vector<std::string> pending_syms;
    auto sym_id = [&](const std::string& s) -> Sym {
        if (symtab) return symtab->id(s);
        for (Sym i = 0; i < pending_syms.size(); ++i)
            if (pending_syms[i] == s) return i;
        pending_syms.push_back(s);
        return static_cast<Sym>(pending_syms.size() - 1);
    };
    struct Line {
        State src, dst;
        std::string sym;
    };
    std::vector<Line> lines;
    std::vector<State> finals;
    State max_state = 0;
    bool has_start = false;
    State start = 0;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        raw = detail::strip_cr(raw);
        if (raw.empty()) continue;
        auto f = detail::split_tabs(raw);
        if (f.size() == 1) {
            finals.push_back(static_cast<State>(std::stoul(f[0])));
            max_state = std::max(max_state, finals.back());
        } else if (f.size() == 3) {
            Line l{static_cast<State>(std::stoul(f[0])), static_cast<State>(std::stoul(f[1])), f[2]};
            if (!has_start) {
                start = l.src;
                has_start = true;
            }
            max_state = std::max({max_state, l.src, l.dst});
            lines.push_back(std::move(l));
        } else {
            throw std::invalid_argument("malformed acceptor ATT line: " + raw);
        }
    }
    if (symtab)
        d.alphabet = *symtab;
    else {
        for (auto& l : lines) sym_id(l.sym);
        d.alphabet = Alphabet(pending_syms);
    }
    for (State q = 0; q <= max_state; ++q) d.add_state(false);
    if (lines.empty() && finals.empty()) return empty_dfa(d.alphabet);
    for (auto& l : lines) d.add_edge(l.src, d.alphabet.id(l.sym), l.dst);
    for (State q : finals) d.finals[q] = true;
    d.start = start;
    return d;
}

inline Alphabet parse_symtab(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::vector<std::pair<std::string, unsigned long>> entries;
    while (std::getline(in, raw)) {
        raw = detail::strip_cr(raw);
        if (raw.empty()) continue;
        auto f = detail::split_tabs(raw);
        if (f.size() != 2) throw std::invalid_argument("malformed symbol table line: " + raw);
        entries.emplace_back(f[0], std::stoul(f[1]));
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    std::vector<std::string> syms;
    for (auto& [name, id] : entries) {
        if (id == 0) {
            if (name != kEpsilonName) throw std::invalid_argument("id 0 is reserved for epsilon");
            continue;
        }
        syms.push_back(name);
    }
    return Alphabet(std::move(syms));
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

// Writes <path> and <path>.sym.
inline void write_att(const std::string& path, const Dfa& d) {
    write_text_file(path, att_text(d));
    write_text_file(path + ".sym", symtab_text(d.alphabet));
}

inline void write_att(const std::string& path, const Fst& t) {
    write_text_file(path, att_text(t));
    write_text_file(path + ".sym", symtab_text(t.input));
}

// Reads an acceptor, using <path>.sym when present.
inline Dfa read_att_acceptor(const std::string& path) {
    std::ifstream probe(path + ".sym");
    if (probe) {
        Alphabet tab = parse_symtab(read_text_file(path + ".sym"));
        return parse_att_acceptor(read_text_file(path), &tab);
    }
    return parse_att_acceptor(read_text_file(path));
}

}  // namespace subreg
