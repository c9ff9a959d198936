#pragma once

// Seeded randomness with portable draws. std::mt19937_64's raw output is
// pinned by the standard, but the <random> distributions are not, so bounded
// draws and uniform doubles are mapped here by hand; results are then
// bit-reproducible across toolchains for a given seed.

#include <cstdint>
#include <random>
#include <stdexcept>

namespace tamarilab {

// splitmix64 step (Vigna's seeding mixer); advances `state` and returns a
// well-scrambled word.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Independent stream for task `index` under one master seed, so samples
    // can be drawn (or re-drawn) out of order without correlation.
    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ull * (index + 1));
        std::uint64_t mixed = splitmix64(s);
        mixed ^= splitmix64(s);
        return Rng(mixed);
    }

    std::uint64_t next_u64() { return eng_(); }

    // Unbiased draw from [0, n) by rejection below 2^64 mod n.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below: empty range");
        const std::uint64_t reject = (0 - n) % n;
        std::uint64_t x = next_u64();
        while (x < reject) x = next_u64();
        return x % n;
    }

    // Inclusive bounds.
    int uniform_int(int lo, int hi) {
        if (lo > hi) throw std::invalid_argument("Rng::uniform_int: empty range");
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1));
    }

    // 53-bit uniform in [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool coin() { return (next_u64() >> 63) != 0; }

private:
    std::mt19937_64 eng_;
};

}  // namespace tamarilab
