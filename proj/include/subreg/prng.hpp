#pragma once

#include <cstdint>
#include <string_view>

namespace subreg {

// Deterministic, platform-independent PRNG stack used everywhere randomness
// is needed.  std::uniform_int_distribution is not pinned down by the
// standard, so bounded draws are done by rejection here.
//
// Algorithm id recorded in manifests: "splitmix64/xoshiro256ss/v1".
// Substreams are derived by hashing a tag into the master seed, so
// per-(split,length,side) streams are independent of scheduling.

inline constexpr std::string_view kPrngAlgoId = "splitmix64/xoshiro256ss/v1";

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

class Prng {
public:
    explicit Prng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    // Derived stream: independent of this stream's position.
    Prng derive(std::string_view tag) const {
        std::uint64_t mix = seed_fingerprint();
        return Prng(splitmix64(mix) ^ fnv1a64(tag));
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform integer in [0, n), n >= 1.  Rejection sampling keeps the
    // result identical on every platform.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    double unit() {  // [0,1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return unit() < p; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t seed_fingerprint() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto w : s_) {
            h ^= w;
            h = rotl(h, 29) * 0xff51afd7ed558ccdULL;
        }
        return h;
    }
    std::uint64_t s_[4];
};

}  // namespace subreg
