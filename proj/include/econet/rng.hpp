#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace econet {

// Deterministic random source. mt19937_64 output is pinned by the standard,
// and all derived draws (bounded integers, doubles) are produced by hand here
// instead of going through std distributions, whose algorithms are
// implementation-defined. Identical seeds therefore give identical streams
// on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t u64() { return gen_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). Unbiased via rejection. n must be >= 1.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max - max % n;
        std::uint64_t x = gen_();
        while (x >= limit)
            x = gen_();
        return x % n;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    bool operator==(const Rng& other) const { return gen_ == other.gen_; }

private:
    std::mt19937_64 gen_;
};

// splitmix64 finalizer; good avalanche behavior for seed derivation.
inline std::uint64_t mix_seed(std::uint64_t x, std::uint64_t salt) {
    x += 0x9e3779b97f4a7c15ULL + salt * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent named substream from a master seed, so that e.g.
/// the growth stream is untouched by how many draws the covering stream made.
inline std::uint64_t substream_seed(std::uint64_t master, std::string_view name) {
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return mix_seed(master, h);
}

} // namespace econet
