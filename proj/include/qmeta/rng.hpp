#pragma once

#include <cstdint>

namespace qmeta {

/// splitmix64: tiny deterministic generator used for seed derivation and
/// angle draws.  Self-contained so that outputs are byte-identical across
/// platforms and standard libraries.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

/// Stream derivation: child seed for (seed, index).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (0x6a09e667f3bcc909ull + index * 0x9e3779b97f4a7c15ull));
    g.next();
    return g.next();
}

}  // namespace qmeta
