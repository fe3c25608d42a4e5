#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace subreg {

using Sym = std::uint32_t;
inline constexpr Sym kEpsilon = ~Sym{0};  // never a real symbol id

using Word = std::vector<Sym>;

namespace detail {

// Splits UTF-8 into codepoint-sized chunks.  Symbols are single Unicode
// characters, so this is all the decoding the toolkit needs.
inline std::vector<std::string> utf8_chars(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        std::size_t n = 1;
        if (c >= 0xF0)
            n = 4;
        else if (c >= 0xE0)
            n = 3;
        else if (c >= 0xC0)
            n = 2;
        if (i + n > s.size()) throw std::invalid_argument("truncated UTF-8 sequence");
        out.emplace_back(s.substr(i, n));
        i += n;
    }
    return out;
}

}  // namespace detail

class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
        for (Sym i = 0; i < symbols_.size(); ++i) {
            if (!index_.emplace(symbols_[i], i).second)
                throw std::invalid_argument("duplicate symbol in alphabet: " + symbols_[i]);
        }
    }

    static Alphabet from_utf8(std::string_view chars) {
        return Alphabet(detail::utf8_chars(chars));
    }

    Sym size() const { return static_cast<Sym>(symbols_.size()); }
    const std::string& symbol(Sym s) const { return symbols_.at(s); }
    const std::vector<std::string>& symbols() const { return symbols_; }

    bool contains(std::string_view sym) const { return index_.count(std::string(sym)) != 0; }

    Sym id(std::string_view sym) const {
        auto it = index_.find(std::string(sym));
        if (it == index_.end()) throw std::invalid_argument("symbol not in alphabet: " + std::string(sym));
        return it->second;
    }

    Word encode(std::string_view utf8) const {
        Word w;
        for (auto& ch : detail::utf8_chars(utf8)) w.push_back(id(ch));
        return w;
    }

    std::string decode(const Word& w) const {
        std::string out;
        for (Sym s : w) out += symbol(s);
        return out;
    }

    bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }
    bool operator!=(const Alphabet& o) const { return !(*this == o); }

private:
    std::vector<std::string> symbols_;
    std::map<std::string, Sym> index_;
};

// The canonical 64-letter sequence benchmark alphabets are prefixes of.
inline const std::string& canonical_symbol_sequence() {
    static const std::string seq =
        "abcdefghijklmnopqrstuvwxyz"
        "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
        "áàǎéèěóòǒúùǔ";
    return seq;
}

inline Alphabet alphabet_prefix(int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("alphabet size must be in 1..64");
    auto chars = detail::utf8_chars(canonical_symbol_sequence());
    chars.resize(static_cast<std::size_t>(n));
    return Alphabet(std::move(chars));
}

}  // namespace subreg
